#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spot/prompt.hpp"
#include "spot/toy_model.hpp"
#include "spot/toy_task.hpp"

namespace spot {

enum class PromptInitKind { VocabSampled, Transferred };

struct TuningConfig {
  std::uint64_t steps = 2000;
  std::uint64_t checkpoint_every = 50;
  double learning_rate = 0.1;
  std::uint32_t batch_size = 16;
  std::uint64_t seed = 0;
};

struct CheckpointRecord {
  std::uint64_t step = 0;
  Prompt prompt;
  double validation_score = 0.0;  // percent
};

struct TuningRun {
  std::string task_name;
  PromptInitKind init_kind = PromptInitKind::VocabSampled;
  TuningConfig config;
  std::vector<CheckpointRecord> checkpoints;  // every multiple of checkpoint_every, plus step S
};

// Each prompt row copies a token-table row whose index is drawn uniformly
// from the top_n lowest ids (the toy stand-in for the most common tokens).
Prompt init_prompt_from_vocab(const FrozenToyModel& model, std::uint32_t prompt_length,
                              std::uint32_t top_n, std::uint64_t seed);

// Percent accuracy of argmax predictions over the split; prediction ties go
// to the lowest class index.
double evaluate(const FrozenToyModel& model, const Prompt& prompt,
                const std::vector<Example>& split);

// Seeded-minibatch gradient descent on the prompt only. Batches are drawn
// uniformly with replacement from the training split.
TuningRun tune(const FrozenToyModel& model, const ToyTask& task, const Prompt& init,
               PromptInitKind init_kind, const TuningConfig& config);

// Same loop, but training examples come from `sample` (one example per call)
// while validation still scores against eval_task. Used for multi-task
// mixture tuning.
TuningRun tune_with_sampler(const FrozenToyModel& model, const std::string& run_name,
                            const std::function<const Example&()>& sample,
                            const std::vector<Example>& validation, const Prompt& init,
                            PromptInitKind init_kind, const TuningConfig& config);

// Highest validation score; ties go to the earliest step. min_step restricts
// the eligible checkpoints (the library requires best_step >= embed_step).
const CheckpointRecord& select_best_checkpoint(const TuningRun& run, std::uint64_t min_step = 0);

const CheckpointRecord& final_checkpoint(const TuningRun& run);

// The checkpoint at exactly embed_step, tagged as a task embedding.
TaskEmbedding extract_task_embedding(const TuningRun& run, std::uint64_t embed_step);

}  // namespace spot
