#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spot/library.hpp"
#include "spot/retrieval.hpp"
#include "spot/similarity.hpp"
#include "spot/toy_model.hpp"
#include "spot/toy_task.hpp"
#include "spot/tuner.hpp"

namespace spot {

struct ModelConfig {
  std::uint64_t seed = 7;
  std::uint32_t vocab_size = 128;
  std::uint32_t embed_dim = 16;
  std::uint32_t class_count = 3;
  double token_scale = 0.25;
  double head_scale = 4.0;
};

struct ScheduleConfig {
  std::uint64_t source_steps = 2000;
  std::uint64_t target_steps = 800;
  std::uint64_t checkpoint_every = 50;
  std::uint64_t embed_step = 100;
  double learning_rate = 0.1;
  std::uint32_t batch_size = 16;
};

struct ConfigTask {
  TaskSpec spec;
  std::string role;  // source | target
};

struct ExperimentConfig {
  ModelConfig model;
  std::uint32_t prompt_length = 100;
  std::uint32_t init_top_n = 0;  // 0 = min(5000, vocab_size)
  ScheduleConfig schedule;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  SimilarityMetric metric = SimilarityMetric::AvgTokens;
  std::vector<std::uint32_t> k_values = {1, 3};
  std::uint64_t mixture_cap = 524288;  // 2^19
  std::vector<ConfigTask> tasks;

  const TaskSpec& task_named(const std::string& name) const;
  std::vector<TaskSpec> tasks_with_role(const std::string& role) const;
};

ExperimentConfig load_experiment_config(const std::filesystem::path& path);

FrozenToyModel build_model(const ExperimentConfig& config);

// Deterministic per-(task, seed) sub-seeds for prompt initialization.
std::uint64_t run_init_seed(std::uint64_t seed, const std::string& task_name);

// Tunes every source task with every seed, writing the full checkpoint series
// plus a manifest whose embedding paths are filled in by run_embed.
void run_train_source(const ExperimentConfig& config, const std::filesystem::path& out_dir);

// Completes a trained library: points each entry at its embed-step checkpoint
// and validates the result.
void run_embed(const std::filesystem::path& library_dir);

std::vector<RankedSource> run_rank(const std::filesystem::path& library_dir,
                                   const std::filesystem::path& target_embedding_file,
                                   SimilarityMetric metric);

enum class TransferMethod { BestOfTopK, WeightedAverage, Mixture };

TransferMethod parse_transfer_method(const std::string& name);

struct CandidateScore {
  std::string task_name;
  std::uint32_t run_seed = 0;
  double similarity = 0.0;
  double score = 0.0;
};

struct TransferOutcome {
  std::string target;
  TransferMethod method = TransferMethod::BestOfTopK;
  std::size_t k = 0;
  std::vector<CandidateScore> candidates;       // best-of-top-k runs, rank order
  std::vector<MixtureComponent> mixture;        // mixture method only
  bool uniform_weight_fallback = false;         // weighted-average method only
  double final_score = 0.0;
  Prompt tuned_prompt;
  TaskEmbedding target_embedding;
};

// Realizes one retrieval method end to end: embeds the target, ranks the
// library, then tunes per the method. `mixture_init_final` picks the final
// mixture checkpoint as the target initializer (default) instead of the
// best-validation one.
TransferOutcome run_transfer(const ExperimentConfig& config,
                             const std::filesystem::path& library_dir, const std::string& target,
                             TransferMethod method, std::size_t k, bool mixture_init_final = true);

}  // namespace spot
