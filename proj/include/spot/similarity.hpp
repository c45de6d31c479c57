#pragma once

#include <string>
#include <vector>

#include "spot/prompt.hpp"

namespace spot {

// Column means of the prompt matrix: result[j] = (1/L) sum_i tokens[i][j].
// Summation runs row-major in ascending index order so results are
// bit-reproducible.
std::vector<double> mean_pool(const Matrix& tokens);
inline std::vector<double> mean_pool(const Prompt& p) { return mean_pool(p.tokens); }
inline std::vector<double> mean_pool(const TaskEmbedding& e) { return mean_pool(e.tokens); }

// Cosine similarity, clamped to [-1, 1] against rounding. Throws ZeroNormError
// if either vector has zero norm.
double cosine(std::span<const double> u, std::span<const double> v);

// Cosine similarity of the mean-pooled token vectors.
double sim_avg_tokens(const TaskEmbedding& a, const TaskEmbedding& b);

// Mean cosine over every token pair: (1/L^2) sum_i sum_j cos(a_i, b_j).
double sim_per_token(const TaskEmbedding& a, const TaskEmbedding& b);

double similarity(const TaskEmbedding& a, const TaskEmbedding& b, SimilarityMetric metric);

// Mean of the metric over all |runs_a| x |runs_b| ordered pairs; with three
// runs per task this is the nine-combination average used for task-level
// similarity.
double cross_run_similarity(const std::vector<TaskEmbedding>& runs_a,
                            const std::vector<TaskEmbedding>& runs_b,
                            SimilarityMetric metric);

SimilarityMetric parse_metric(const std::string& name);
std::string metric_name(SimilarityMetric metric);

}  // namespace spot
