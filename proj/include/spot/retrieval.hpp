#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spot/library.hpp"
#include "spot/prompt.hpp"
#include "spot/similarity.hpp"

namespace spot {

struct RankedSource {
  std::size_t rank = 0;  // 1-based, no gaps
  LibraryEntry entry;
  double similarity = 0.0;
};

// Scores every library entry against the target embedding and sorts by
// descending similarity; ties fall back to (task_name, run_seed) ascending.
std::vector<RankedSource> rank_sources(const TaskEmbedding& target,
                                       const LibraryManifest& library, SimilarityMetric metric);

// The first k entries of the ranking, rank order preserved. The caller tunes
// the target once per candidate and keeps the best validation result.
std::vector<LibraryEntry> best_of_top_k_plan(const std::vector<RankedSource>& ranked,
                                             std::size_t k);

// Normalized similarity weights. Negative similarities are floored at zero
// before normalizing; if everything floors to zero the weights fall back to
// uniform and the fallback flag is set.
struct AlphaWeights {
  std::vector<double> values;
  bool uniform_fallback = false;
};

AlphaWeights alpha_weights(const std::vector<double>& similarities);

struct WeightedAverageResult {
  Prompt prompt;
  AlphaWeights weights;
};

WeightedAverageResult weighted_average_prompt(
    const std::vector<std::pair<Prompt, double>>& prompts_with_similarity);

struct MixtureComponent {
  std::string dataset_id;
  std::uint64_t example_count = 0;  // e_m
  double rate = 0.0;
};

struct MixtureSpec {
  std::vector<MixtureComponent> components;
  std::uint64_t cap = 0;  // K
};

// Examples-proportional rates: rate_m = min(e_m, K) / sum_n min(e_n, K).
MixtureSpec mixture_rates(const std::vector<std::pair<std::string, std::uint64_t>>& sizes,
                          std::uint64_t cap);

struct MixtureDraw {
  std::size_t component = 0;  // index into spec.components
  std::uint64_t example = 0;  // index into that component's dataset
};

// Single-consumer stream of seeded draws. Components are chosen i.i.d. by
// rate; within a component indices come from a reshuffled pass over the
// dataset (uniform, with replacement across passes).
class MixtureStream {
 public:
  MixtureStream(const MixtureSpec& spec,
                const std::map<std::string, std::uint64_t>& dataset_sizes, std::uint64_t seed);

  MixtureDraw next();

 private:
  struct ComponentState {
    std::vector<std::uint64_t> order;
    std::size_t cursor = 0;
  };

  MixtureSpec spec_;
  std::vector<ComponentState> states_;
  std::vector<double> cumulative_;
  std::mt19937_64 rng_;
};

std::vector<MixtureDraw> compose_mixture(const MixtureSpec& spec,
                                         const std::map<std::string, std::uint64_t>& dataset_sizes,
                                         std::uint64_t total_examples, std::uint64_t seed);

}  // namespace spot
