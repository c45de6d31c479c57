#include "spot/retrieval.hpp"

#include <algorithm>

#include "spot/rng.hpp"

namespace spot {

std::vector<RankedSource> rank_sources(const TaskEmbedding& target,
                                       const LibraryManifest& library, SimilarityMetric metric) {
  if (library.entries.empty()) throw EmptyLibraryError("cannot rank against an empty library");
  if (target.tokens.rows() != library.prompt_length || target.tokens.cols() != library.embed_width)
    throw ShapeMismatchError("target embedding is " + std::to_string(target.tokens.rows()) + "x" +
                             std::to_string(target.tokens.cols()) + ", library is " +
                             std::to_string(library.prompt_length) + "x" +
                             std::to_string(library.embed_width));

  std::vector<RankedSource> ranked;
  ranked.reserve(library.entries.size());
  for (const LibraryEntry& entry : library.entries) {
    const TaskEmbedding source = load_entry_embedding(library, entry);
    ranked.push_back({0, entry, similarity(source, target, metric)});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedSource& a, const RankedSource& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return std::tie(a.entry.task_name, a.entry.run_seed) <
           std::tie(b.entry.task_name, b.entry.run_seed);
  });
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = i + 1;
  return ranked;
}

std::vector<LibraryEntry> best_of_top_k_plan(const std::vector<RankedSource>& ranked,
                                             std::size_t k) {
  if (k < 1 || k > ranked.size())
    throw KOutOfRangeError("k=" + std::to_string(k) + " outside [1, " +
                           std::to_string(ranked.size()) + "]");
  std::vector<LibraryEntry> plan;
  plan.reserve(k);
  for (std::size_t i = 0; i < k; ++i) plan.push_back(ranked[i].entry);
  return plan;
}

AlphaWeights alpha_weights(const std::vector<double>& similarities) {
  if (similarities.empty()) throw EmptyListError("alpha_weights over an empty list");
  AlphaWeights w;
  w.values.resize(similarities.size());
  double total = 0.0;
  for (std::size_t i = 0; i < similarities.size(); ++i) {
    w.values[i] = std::max(similarities[i], 0.0);
    total += w.values[i];
  }
  if (total == 0.0) {
    w.uniform_fallback = true;
    std::fill(w.values.begin(), w.values.end(), 1.0 / static_cast<double>(similarities.size()));
    return w;
  }
  for (double& v : w.values) v /= total;
  return w;
}

WeightedAverageResult weighted_average_prompt(
    const std::vector<std::pair<Prompt, double>>& prompts_with_similarity) {
  if (prompts_with_similarity.empty())
    throw EmptyListError("weighted_average_prompt over an empty list");
  const Matrix& first = prompts_with_similarity.front().first.tokens;
  validate_prompt_shape(first);
  std::vector<double> sims;
  sims.reserve(prompts_with_similarity.size());
  for (const auto& [prompt, sim] : prompts_with_similarity) {
    if (!prompt.tokens.same_shape(first))
      throw ShapeMismatchError("prompt shapes differ in weighted average");
    sims.push_back(sim);
  }

  WeightedAverageResult result;
  result.weights = alpha_weights(sims);
  result.prompt.tokens = Matrix(first.rows(), first.cols(), 0.0);
  result.prompt.task_name = "weighted-average";
  for (std::size_t p = 0; p < prompts_with_similarity.size(); ++p) {
    const double alpha = result.weights.values[p];
    const Matrix& tokens = prompts_with_similarity[p].first.tokens;
    for (std::size_t i = 0; i < tokens.data().size(); ++i)
      result.prompt.tokens.data()[i] += alpha * tokens.data()[i];
  }
  return result;
}

MixtureSpec mixture_rates(const std::vector<std::pair<std::string, std::uint64_t>>& sizes,
                          std::uint64_t cap) {
  if (sizes.empty()) throw EmptySizesError("mixture_rates over an empty size list");
  if (cap < 1) throw InvalidInputError("mixture cap must be at least 1");

  MixtureSpec spec;
  spec.cap = cap;
  double total = 0.0;
  for (const auto& [id, count] : sizes) {
    if (count < 1) throw InvalidInputError("dataset '" + id + "' has no examples");
    total += static_cast<double>(std::min(count, cap));
  }
  for (const auto& [id, count] : sizes)
    spec.components.push_back({id, count, static_cast<double>(std::min(count, cap)) / total});
  return spec;
}

MixtureStream::MixtureStream(const MixtureSpec& spec,
                             const std::map<std::string, std::uint64_t>& dataset_sizes,
                             std::uint64_t seed)
    : spec_(spec), rng_(mix_seed(seed, 0x6d6978ULL)) {
  if (spec.components.empty()) throw EmptySizesError("mixture spec has no components");
  double cum = 0.0;
  for (const MixtureComponent& comp : spec.components) {
    const auto it = dataset_sizes.find(comp.dataset_id);
    if (it == dataset_sizes.end())
      throw MissingDatasetError("no dataset stream for mixture component '" + comp.dataset_id +
                                "'");
    if (it->second < 1)
      throw MissingDatasetError("dataset '" + comp.dataset_id + "' is empty");
    ComponentState state;
    state.order.resize(it->second);
    for (std::uint64_t i = 0; i < it->second; ++i) state.order[i] = i;
    states_.push_back(std::move(state));
    cum += comp.rate;
    cumulative_.push_back(cum);
  }
  cumulative_.back() = 1.0;  // absorb rounding so the last component is always reachable
}

MixtureDraw MixtureStream::next() {
  const double u = uniform01(rng_);
  std::size_t m = 0;
  while (m + 1 < cumulative_.size() && u >= cumulative_[m]) ++m;

  ComponentState& state = states_[m];
  if (state.cursor == 0) shuffle_in_place(state.order, rng_);  // new pass
  const std::uint64_t index = state.order[state.cursor];
  state.cursor = (state.cursor + 1) % state.order.size();
  return {m, index};
}

std::vector<MixtureDraw> compose_mixture(const MixtureSpec& spec,
                                         const std::map<std::string, std::uint64_t>& dataset_sizes,
                                         std::uint64_t total_examples, std::uint64_t seed) {
  if (total_examples < 1) throw InvalidInputError("total_examples must be at least 1");
  MixtureStream stream(spec, dataset_sizes, seed);
  std::vector<MixtureDraw> draws;
  draws.reserve(total_examples);
  for (std::uint64_t i = 0; i < total_examples; ++i) draws.push_back(stream.next());
  return draws;
}

}  // namespace spot
