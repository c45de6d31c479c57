// Brute-force reference implementations the test suite checks the library
// against. Everything here is written independently of the code under test:
// plain loops, no shared helpers.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "spot/matrix.hpp"
#include "spot/prompt.hpp"

namespace oracles {

inline std::vector<double> column_means(const spot::Matrix& m) {
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) sum += m(r, c);
    out[c] = sum / static_cast<double>(m.rows());
  }
  return out;
}

inline double cosine(const std::vector<double>& u, const std::vector<double>& v) {
  double dot = 0.0;
  double nu = 0.0;
  double nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

inline std::vector<double> matrix_row(const spot::Matrix& m, std::size_t r) {
  std::vector<double> row(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) row[c] = m(r, c);
  return row;
}

inline double sim_avg_tokens(const spot::Matrix& a, const spot::Matrix& b) {
  return cosine(column_means(a), column_means(b));
}

inline double sim_per_token(const spot::Matrix& a, const spot::Matrix& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) total += cosine(matrix_row(a, i), matrix_row(b, j));
  return total / static_cast<double>(a.rows() * b.rows());
}

inline spot::Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                  double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  spot::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

inline spot::TaskEmbedding embedding_of(const spot::Matrix& m, const std::string& name = "t",
                                        std::uint32_t seed = 0) {
  return spot::TaskEmbedding{m, name, seed, 100, 100};
}

// weighted sum of prompt matrices with explicit weights
inline spot::Matrix weighted_sum(const std::vector<spot::Matrix>& mats,
                                 const std::vector<double>& weights) {
  spot::Matrix out(mats.front().rows(), mats.front().cols(), 0.0);
  for (std::size_t k = 0; k < mats.size(); ++k)
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) += weights[k] * mats[k](r, c);
  return out;
}

// Naive average-linkage agglomeration: clusters as explicit leaf sets,
// distances recomputed from the original matrix at every step.
struct NaiveMerge {
  std::vector<std::size_t> members;
  double height = 0.0;
};

inline std::vector<double> naive_average_linkage_heights(const spot::Matrix& sim) {
  const std::size_t n = sim.rows();
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({i});

  auto cluster_distance = [&](const std::vector<std::size_t>& a,
                              const std::vector<std::size_t>& b) {
    double total = 0.0;
    for (const std::size_t i : a)
      for (const std::size_t j : b) total += 1.0 - 0.5 * (sim(i, j) + sim(j, i));
    return total / static_cast<double>(a.size() * b.size());
  };

  std::vector<double> heights;
  while (clusters.size() > 1) {
    std::size_t bi = 0;
    std::size_t bj = 1;
    double best = cluster_distance(clusters[0], clusters[1]);
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double d = cluster_distance(clusters[i], clusters[j]);
        if (d < best - 1e-15) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    heights.push_back(best);
    std::vector<std::size_t> merged = clusters[bi];
    merged.insert(merged.end(), clusters[bj].begin(), clusters[bj].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bi));
    clusters.push_back(std::move(merged));
  }
  std::sort(heights.begin(), heights.end());
  return heights;
}

inline double pearson_r(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// two-sided permutation test over |r|
inline double permutation_p_value(const std::vector<double>& xs, const std::vector<double>& ys,
                                  int draws, std::uint64_t seed) {
  const double observed = std::fabs(pearson_r(xs, ys));
  std::mt19937_64 rng(seed);
  std::vector<double> shuffled = ys;
  int at_least = 0;
  for (int d = 0; d < draws; ++d) {
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(shuffled[i - 1], shuffled[pick(rng)]);
    }
    if (std::fabs(pearson_r(xs, shuffled)) >= observed) ++at_least;
  }
  return static_cast<double>(at_least) / static_cast<double>(draws);
}

}  // namespace oracles
