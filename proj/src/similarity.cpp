#include "spot/similarity.hpp"

#include <algorithm>
#include <cmath>

namespace spot {

namespace {

void require_comparable(const TaskEmbedding& a, const TaskEmbedding& b) {
  if (a.tokens.rows() != b.tokens.rows() || a.tokens.cols() != b.tokens.cols())
    throw ShapeMismatchError("embeddings are not metric-comparable: " +
                             std::to_string(a.tokens.rows()) + "x" + std::to_string(a.tokens.cols()) +
                             " vs " + std::to_string(b.tokens.rows()) + "x" +
                             std::to_string(b.tokens.cols()));
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (const double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> mean_pool(const Matrix& tokens) {
  validate_prompt_shape(tokens);
  const std::size_t rows = tokens.rows();
  const std::size_t cols = tokens.cols();
  std::vector<double> pooled(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) pooled[c] += tokens(r, c);
  for (std::size_t c = 0; c < cols; ++c) pooled[c] /= static_cast<double>(rows);
  return pooled;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw ShapeMismatchError("cosine: vector lengths differ, " + std::to_string(u.size()) +
                             " vs " + std::to_string(v.size()));
  const double nu = norm2(u);
  const double nv = norm2(v);
  if (nu == 0.0 || nv == 0.0) throw ZeroNormError("cosine of a zero vector is undefined");
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

double sim_avg_tokens(const TaskEmbedding& a, const TaskEmbedding& b) {
  require_comparable(a, b);
  const std::vector<double> pa = mean_pool(a);
  const std::vector<double> pb = mean_pool(b);
  return cosine(pa, pb);
}

double sim_per_token(const TaskEmbedding& a, const TaskEmbedding& b) {
  require_comparable(a, b);
  const std::size_t rows = a.tokens.rows();
  for (std::size_t r = 0; r < rows; ++r) {
    if (norm2(a.tokens.row(r)) == 0.0)
      throw ZeroNormError("row " + std::to_string(r) + " of first embedding has zero norm");
    if (norm2(b.tokens.row(r)) == 0.0)
      throw ZeroNormError("row " + std::to_string(r) + " of second embedding has zero norm");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) total += cosine(a.tokens.row(i), b.tokens.row(j));
  return total / (static_cast<double>(rows) * static_cast<double>(rows));
}

double similarity(const TaskEmbedding& a, const TaskEmbedding& b, SimilarityMetric metric) {
  return metric == SimilarityMetric::AvgTokens ? sim_avg_tokens(a, b) : sim_per_token(a, b);
}

double cross_run_similarity(const std::vector<TaskEmbedding>& runs_a,
                            const std::vector<TaskEmbedding>& runs_b, SimilarityMetric metric) {
  if (runs_a.empty() || runs_b.empty())
    throw EmptyRunListError("cross_run_similarity needs at least one run on each side");
  double total = 0.0;
  for (const TaskEmbedding& a : runs_a)
    for (const TaskEmbedding& b : runs_b) total += similarity(a, b, metric);
  return total / (static_cast<double>(runs_a.size()) * static_cast<double>(runs_b.size()));
}

SimilarityMetric parse_metric(const std::string& name) {
  if (name == "avg") return SimilarityMetric::AvgTokens;
  if (name == "per-token") return SimilarityMetric::PerToken;
  throw InvalidInputError("unknown similarity metric '" + name + "' (expected avg or per-token)");
}

std::string metric_name(SimilarityMetric metric) {
  return metric == SimilarityMetric::AvgTokens ? "avg" : "per-token";
}

}  // namespace spot
