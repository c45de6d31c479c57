#include "spot/tuner.hpp"

#include <algorithm>

#include "spot/errors.hpp"
#include "spot/rng.hpp"

namespace spot {

Prompt init_prompt_from_vocab(const FrozenToyModel& model, std::uint32_t prompt_length,
                              std::uint32_t top_n, std::uint64_t seed) {
  if (prompt_length < 1) throw InvalidInputError("prompt length must be at least 1");
  if (top_n < 1 || top_n > model.vocab_size)
    throw TopNOutOfRangeError("top_n " + std::to_string(top_n) + " outside [1, " +
                              std::to_string(model.vocab_size) + "]");
  Rng rng(mix_seed(seed, 0x696e6974ULL));
  Prompt p;
  p.run_seed = static_cast<std::uint32_t>(seed);
  p.step = 0;
  p.tokens = Matrix(prompt_length, model.embed_dim);
  for (std::uint32_t i = 0; i < prompt_length; ++i) {
    const std::uint64_t row = bounded_uniform(rng, top_n);
    for (std::uint32_t e = 0; e < model.embed_dim; ++e)
      p.tokens(i, e) = model.token_table(static_cast<std::size_t>(row), e);
  }
  return p;
}

double evaluate(const FrozenToyModel& model, const Prompt& prompt,
                const std::vector<Example>& split) {
  if (split.empty()) throw EmptySplitError("evaluate over an empty split");
  std::size_t correct = 0;
  for (const Example& ex : split) {
    const std::vector<double> logits = logits_of(model, prompt, ex.tokens);
    std::uint32_t pred = 0;
    for (std::uint32_t c = 1; c < model.class_count; ++c)
      if (logits[c] > logits[pred]) pred = c;
    if (pred == ex.label) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(split.size());
}

TuningRun tune_with_sampler(const FrozenToyModel& model, const std::string& run_name,
                            const std::function<const Example&()>& sample,
                            const std::vector<Example>& validation, const Prompt& init,
                            PromptInitKind init_kind, const TuningConfig& config) {
  if (config.steps < 1 || config.checkpoint_every < 1 || config.batch_size < 1)
    throw InvalidInputError("tuning needs positive steps, checkpoint_every and batch size");
  if (validation.empty()) throw EmptySplitError("tuning needs a nonempty validation split");
  validate_prompt_shape(init.tokens);

  Prompt current = init;
  current.task_name = run_name;
  current.run_seed = static_cast<std::uint32_t>(config.seed);

  TuningRun run;
  run.task_name = run_name;
  run.init_kind = init_kind;
  run.config = config;

  std::vector<Example> batch(config.batch_size);
  for (std::uint64_t step = 1; step <= config.steps; ++step) {
    for (std::uint32_t b = 0; b < config.batch_size; ++b) batch[b] = sample();
    const Matrix grad = prompt_gradient(model, current, batch);
    for (std::size_t i = 0; i < current.tokens.data().size(); ++i)
      current.tokens.data()[i] -= config.learning_rate * grad.data()[i];

    if (step % config.checkpoint_every == 0 || step == config.steps) {
      current.step = step;
      run.checkpoints.push_back({step, current, evaluate(model, current, validation)});
    }
  }
  return run;
}

TuningRun tune(const FrozenToyModel& model, const ToyTask& task, const Prompt& init,
               PromptInitKind init_kind, const TuningConfig& config) {
  if (task.train.empty()) throw EmptySplitError("task '" + task.spec.name + "' has no train split");
  Rng rng(mix_seed(config.seed, fnv1a64(task.spec.name)));
  auto sampler = [&]() -> const Example& {
    return task.train[bounded_uniform(rng, task.train.size())];
  };
  return tune_with_sampler(model, task.spec.name, sampler, task.val, init, init_kind, config);
}

const CheckpointRecord& select_best_checkpoint(const TuningRun& run, std::uint64_t min_step) {
  const CheckpointRecord* best = nullptr;
  for (const CheckpointRecord& ck : run.checkpoints) {
    if (ck.step < min_step) continue;
    if (!best || ck.validation_score > best->validation_score) best = &ck;
  }
  if (!best)
    throw NoCheckpointsError("run '" + run.task_name + "' has no checkpoint at step >= " +
                             std::to_string(min_step));
  return *best;
}

const CheckpointRecord& final_checkpoint(const TuningRun& run) {
  if (run.checkpoints.empty())
    throw NoCheckpointsError("run '" + run.task_name + "' has no checkpoints");
  return run.checkpoints.back();
}

TaskEmbedding extract_task_embedding(const TuningRun& run, std::uint64_t embed_step) {
  for (const CheckpointRecord& ck : run.checkpoints)
    if (ck.step == embed_step) return TaskEmbedding::from_prompt(ck.prompt, embed_step);
  throw StepNotCheckpointedError("run '" + run.task_name + "' has no checkpoint at step " +
                                 std::to_string(embed_step));
}

}  // namespace spot
