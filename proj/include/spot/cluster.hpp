#pragma once

#include <cstddef>
#include <vector>

#include "spot/matrix.hpp"

namespace spot {

// One agglomeration step. Leaves carry ids 0..n-1; the i-th merge creates
// cluster id n+i from children a < b (ids of earlier clusters or leaves).
struct ClusterMerge {
  std::size_t a = 0;
  std::size_t b = 0;
  double height = 0.0;  // average-linkage distance at which a and b merged
  std::size_t size = 0;  // leaves under the merged cluster
};

struct ClusterResult {
  std::vector<ClusterMerge> merges;      // n-1 entries
  std::vector<std::size_t> leaf_order;   // left-to-right recursive order
};

// Agglomerative clustering with average linkage on distance d = 1 - sim.
// Ties select the candidate pair with the lowest (a, b) cluster ids, so the
// result is deterministic. Input must be square and symmetric within 1e-9.
ClusterResult cluster_order(const Matrix& similarity);

}  // namespace spot
