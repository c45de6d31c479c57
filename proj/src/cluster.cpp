#include "spot/cluster.hpp"

#include <cmath>
#include <limits>

#include "spot/errors.hpp"

namespace spot {

ClusterResult cluster_order(const Matrix& similarity) {
  const std::size_t n = similarity.rows();
  if (n == 0 || similarity.cols() != n)
    throw InvalidInputError("cluster_order needs a nonempty square matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(similarity(i, j) - similarity(j, i)) > 1e-9)
        throw AsymmetricInputError("similarity matrix asymmetric at (" + std::to_string(i) + "," +
                                   std::to_string(j) + "): " + std::to_string(similarity(i, j)) +
                                   " vs " + std::to_string(similarity(j, i)));

  ClusterResult result;
  if (n == 1) {
    result.leaf_order = {0};
    return result;
  }

  // Distances among all 2n-1 cluster ids; entry (i, j) is meaningful only
  // while both ids are active. Symmetrize the input against 1e-9 noise.
  const std::size_t total = 2 * n - 1;
  std::vector<double> dist(total * total, 0.0);
  auto d = [&](std::size_t i, std::size_t j) -> double& { return dist[i * total + j]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d(i, j) = 1.0 - 0.5 * (similarity(i, j) + similarity(j, i));

  std::vector<std::size_t> active;
  std::vector<std::size_t> size(total, 1);
  for (std::size_t i = 0; i < n; ++i) active.push_back(i);

  result.merges.reserve(n - 1);
  for (std::size_t step = 0; step < n - 1; ++step) {
    std::size_t best_a = 0;
    std::size_t best_b = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t ia = 0; ia < active.size(); ++ia) {
      for (std::size_t ib = ia + 1; ib < active.size(); ++ib) {
        const std::size_t a = active[ia];
        const std::size_t b = active[ib];
        if (d(a, b) < best) {  // active ids ascend, so the first minimum wins ties
          best = d(a, b);
          best_a = a;
          best_b = b;
        }
      }
    }

    const std::size_t merged = n + step;
    size[merged] = size[best_a] + size[best_b];
    for (const std::size_t c : active) {
      if (c == best_a || c == best_b) continue;
      const double avg = (static_cast<double>(size[best_a]) * d(best_a, c) +
                          static_cast<double>(size[best_b]) * d(best_b, c)) /
                         static_cast<double>(size[merged]);
      d(merged, c) = avg;
      d(c, merged) = avg;
    }
    std::erase(active, best_a);
    std::erase(active, best_b);
    active.push_back(merged);
    result.merges.push_back({best_a, best_b, best, size[merged]});
  }

  // Left-to-right recursive leaf order; the lower-id child goes left.
  std::vector<std::size_t> stack = {total - 1};
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    if (id < n) {
      result.leaf_order.push_back(id);
    } else {
      const ClusterMerge& m = result.merges[id - n];
      stack.push_back(m.b);  // pushed first so m.a is visited first
      stack.push_back(m.a);
    }
  }
  return result;
}

}  // namespace spot
