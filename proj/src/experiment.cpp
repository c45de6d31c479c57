#include "spot/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "json.hpp"
#include "spot/checkpoint.hpp"
#include "spot/errors.hpp"
#include "spot/rng.hpp"

namespace spot {

namespace {

using nlohmann::json;

std::string step_file_name(std::uint64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "step_%06llu.ckpt", static_cast<unsigned long long>(step));
  return buf;
}

std::string run_dir_name(const std::string& task, std::uint64_t seed) {
  return task + "_s" + std::to_string(seed);
}

json must_object(const json& doc, const char* key, const std::string& where) {
  if (!doc.contains(key)) throw ConfigError(where + ": missing '" + std::string(key) + "'");
  if (!doc.at(key).is_object())
    throw ConfigError(where + ": '" + std::string(key) + "' must be an object");
  return doc.at(key);
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": bad '" + std::string(key) + "': " + e.what());
  }
}

template <typename T>
T require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing '" + std::string(key) + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": bad '" + std::string(key) + "': " + e.what());
  }
}

}  // namespace

const TaskSpec& ExperimentConfig::task_named(const std::string& name) const {
  for (const ConfigTask& t : tasks)
    if (t.spec.name == name) return t.spec;
  throw ConfigError("task '" + name + "' is not defined in the config");
}

std::vector<TaskSpec> ExperimentConfig::tasks_with_role(const std::string& role) const {
  std::vector<TaskSpec> out;
  for (const ConfigTask& t : tasks)
    if (t.role == role) out.push_back(t.spec);
  return out;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    f >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": not valid JSON: " + e.what());
  }
  const std::string where = path.string();

  ExperimentConfig cfg;
  const json model = must_object(doc, "model", where);
  cfg.model.seed = get_or<std::uint64_t>(model, "seed", cfg.model.seed, where);
  cfg.model.vocab_size = get_or<std::uint32_t>(model, "vocab_size", cfg.model.vocab_size, where);
  cfg.model.embed_dim = get_or<std::uint32_t>(model, "embed_dim", cfg.model.embed_dim, where);
  cfg.model.class_count = get_or<std::uint32_t>(model, "class_count", cfg.model.class_count, where);
  cfg.model.token_scale = get_or<double>(model, "token_scale", cfg.model.token_scale, where);
  cfg.model.head_scale = get_or<double>(model, "head_scale", cfg.model.head_scale, where);

  cfg.prompt_length = get_or<std::uint32_t>(doc, "prompt_length", cfg.prompt_length, where);
  cfg.init_top_n = get_or<std::uint32_t>(doc, "init_top_n", 0, where);
  if (cfg.init_top_n == 0) cfg.init_top_n = std::min<std::uint32_t>(5000, cfg.model.vocab_size);

  if (doc.contains("schedule")) {
    const json sched = must_object(doc, "schedule", where);
    cfg.schedule.source_steps =
        get_or<std::uint64_t>(sched, "source_steps", cfg.schedule.source_steps, where);
    cfg.schedule.target_steps =
        get_or<std::uint64_t>(sched, "target_steps", cfg.schedule.target_steps, where);
    cfg.schedule.checkpoint_every =
        get_or<std::uint64_t>(sched, "checkpoint_every", cfg.schedule.checkpoint_every, where);
    cfg.schedule.embed_step =
        get_or<std::uint64_t>(sched, "embed_step", cfg.schedule.embed_step, where);
    cfg.schedule.learning_rate =
        get_or<double>(sched, "learning_rate", cfg.schedule.learning_rate, where);
    cfg.schedule.batch_size =
        get_or<std::uint32_t>(sched, "batch_size", cfg.schedule.batch_size, where);
  }

  cfg.seeds = get_or<std::vector<std::uint64_t>>(doc, "seeds", cfg.seeds, where);
  cfg.metric = parse_metric(get_or<std::string>(doc, "metric", "avg", where));
  cfg.k_values = get_or<std::vector<std::uint32_t>>(doc, "k_values", cfg.k_values, where);
  cfg.mixture_cap = get_or<std::uint64_t>(doc, "mixture_cap", cfg.mixture_cap, where);

  if (!doc.contains("tasks") || !doc.at("tasks").is_array() || doc.at("tasks").empty())
    throw ConfigError(where + ": needs a nonempty 'tasks' array");
  std::set<std::string> names;
  for (const json& item : doc.at("tasks")) {
    ConfigTask task;
    task.spec.name = require<std::string>(item, "name", where);
    task.spec.family = require<std::string>(item, "family", where);
    task.spec.rule_seed = require<std::uint64_t>(item, "rule_seed", where);
    task.spec.train_examples = require<std::uint32_t>(item, "train_examples", where);
    task.spec.val_examples = require<std::uint32_t>(item, "val_examples", where);
    task.spec.vocab_size =
        get_or<std::uint32_t>(item, "vocab_size", cfg.model.vocab_size, where);
    task.spec.class_count =
        get_or<std::uint32_t>(item, "class_count", cfg.model.class_count, where);
    task.role = get_or<std::string>(item, "role", "source", where);
    if (task.role != "source" && task.role != "target")
      throw ConfigError(where + ": task '" + task.spec.name + "' has unknown role '" + task.role +
                        "'");
    if (!names.insert(task.spec.name).second)
      throw ConfigError(where + ": duplicate task name '" + task.spec.name + "'");
    cfg.tasks.push_back(std::move(task));
  }

  if (cfg.seeds.empty()) throw ConfigError(where + ": 'seeds' must be nonempty");
  if (cfg.schedule.embed_step == 0 ||
      cfg.schedule.embed_step % cfg.schedule.checkpoint_every != 0)
    throw ConfigError(where + ": embed_step must be a positive multiple of checkpoint_every");
  if (cfg.schedule.embed_step > cfg.schedule.source_steps)
    throw ConfigError(where + ": embed_step exceeds source_steps");
  if (cfg.init_top_n > cfg.model.vocab_size)
    throw ConfigError(where + ": init_top_n exceeds vocab_size");
  return cfg;
}

FrozenToyModel build_model(const ExperimentConfig& config) {
  return make_frozen_toy_model(config.model.vocab_size, config.model.embed_dim,
                               config.model.class_count, config.model.seed,
                               config.model.token_scale, config.model.head_scale);
}

std::uint64_t run_init_seed(std::uint64_t seed, const std::string& task_name) {
  return mix_seed(seed, fnv1a64(task_name));
}

void run_train_source(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  const std::vector<TaskSpec> sources = config.tasks_with_role("source");
  if (sources.empty()) throw ConfigError("config defines no source tasks");
  const FrozenToyModel model = build_model(config);

  std::filesystem::create_directories(out_dir / "checkpoints");

  LibraryManifest manifest;
  manifest.embed_step = config.schedule.embed_step;
  manifest.prompt_length = config.prompt_length;
  manifest.embed_width = config.model.embed_dim;
  manifest.directory = out_dir;

  for (const TaskSpec& spec : sources) {
    const ToyTask task = make_toy_task(spec);
    for (const std::uint64_t seed : config.seeds) {
      Prompt init = init_prompt_from_vocab(model, config.prompt_length, config.init_top_n,
                                           run_init_seed(seed, spec.name));
      init.task_name = spec.name;
      init.run_seed = static_cast<std::uint32_t>(seed);

      TuningConfig tuning;
      tuning.steps = config.schedule.source_steps;
      tuning.checkpoint_every = config.schedule.checkpoint_every;
      tuning.learning_rate = config.schedule.learning_rate;
      tuning.batch_size = config.schedule.batch_size;
      tuning.seed = seed;
      const TuningRun run = tune(model, task, init, PromptInitKind::VocabSampled, tuning);

      const std::filesystem::path rel_dir =
          std::filesystem::path("checkpoints") / run_dir_name(spec.name, seed);
      std::filesystem::create_directories(out_dir / rel_dir);
      for (const CheckpointRecord& ck : run.checkpoints)
        write_checkpoint(ck.prompt, out_dir / rel_dir / step_file_name(ck.step),
                         /*overwrite=*/true);

      // best-checkpoint selection starts at the embedding step so library
      // invariants hold
      const CheckpointRecord& best = select_best_checkpoint(run, config.schedule.embed_step);
      LibraryEntry entry;
      entry.task_name = spec.name;
      entry.run_seed = static_cast<std::uint32_t>(seed);
      entry.best_prompt_path = (rel_dir / step_file_name(best.step)).generic_string();
      entry.best_step = best.step;
      entry.validation_score = best.validation_score;
      manifest.entries.push_back(std::move(entry));
    }
  }
  save_manifest(manifest, out_dir / "manifest.json");
}

void run_embed(const std::filesystem::path& library_dir) {
  const std::filesystem::path manifest_path = library_dir / "manifest.json";
  LibraryManifest manifest = load_manifest_lenient(manifest_path);
  for (LibraryEntry& entry : manifest.entries) {
    if (!entry.embedding_path.empty()) continue;
    const std::filesystem::path rel =
        std::filesystem::path("checkpoints") / run_dir_name(entry.task_name, entry.run_seed) /
        step_file_name(manifest.embed_step);
    if (!std::filesystem::exists(manifest.resolve(rel)))
      throw MissingFileError("no checkpoint at the embedding step for (" + entry.task_name +
                             ", " + std::to_string(entry.run_seed) + "): expected " +
                             manifest.resolve(rel).string());
    entry.embedding_path = rel.generic_string();
  }
  save_manifest(manifest, manifest_path);
  load_library(manifest_path);  // full validation of the completed library
}

std::vector<RankedSource> run_rank(const std::filesystem::path& library_dir,
                                   const std::filesystem::path& target_embedding_file,
                                   SimilarityMetric metric) {
  const LibraryManifest library = load_library(library_dir / "manifest.json");
  const Prompt p = read_checkpoint(target_embedding_file);
  const TaskEmbedding target = TaskEmbedding::from_prompt(p, library.embed_step);
  return rank_sources(target, library, metric);
}

TransferMethod parse_transfer_method(const std::string& name) {
  if (name == "best-of-top-k") return TransferMethod::BestOfTopK;
  if (name == "weighted-average") return TransferMethod::WeightedAverage;
  if (name == "mixture") return TransferMethod::Mixture;
  throw InvalidInputError("unknown transfer method '" + name +
                          "' (expected best-of-top-k, weighted-average or mixture)");
}

namespace {

TuningConfig target_tuning_config(const ExperimentConfig& config, std::uint64_t seed) {
  TuningConfig tuning;
  tuning.steps = config.schedule.target_steps;
  tuning.checkpoint_every = config.schedule.checkpoint_every;
  tuning.learning_rate = config.schedule.learning_rate;
  tuning.batch_size = config.schedule.batch_size;
  tuning.seed = seed;
  return tuning;
}

TaskEmbedding compute_target_embedding(const ExperimentConfig& config,
                                       const FrozenToyModel& model, const ToyTask& target_task,
                                       std::uint64_t seed) {
  Prompt init = init_prompt_from_vocab(model, config.prompt_length, config.init_top_n,
                                       run_init_seed(seed, target_task.spec.name));
  init.task_name = target_task.spec.name;
  init.run_seed = static_cast<std::uint32_t>(seed);

  TuningConfig tuning = target_tuning_config(config, seed);
  tuning.steps = config.schedule.embed_step;  // just long enough to capture the key
  const TuningRun run = tune(model, target_task, init, PromptInitKind::VocabSampled, tuning);
  return extract_task_embedding(run, config.schedule.embed_step);
}

}  // namespace

TransferOutcome run_transfer(const ExperimentConfig& config,
                             const std::filesystem::path& library_dir, const std::string& target,
                             TransferMethod method, std::size_t k, bool mixture_init_final) {
  const TaskSpec& target_spec = config.task_named(target);
  const FrozenToyModel model = build_model(config);
  const ToyTask target_task = make_toy_task(target_spec);
  const LibraryManifest library = load_library(library_dir / "manifest.json");
  const std::uint64_t seed = config.seeds.front();

  TransferOutcome outcome;
  outcome.target = target;
  outcome.method = method;
  outcome.k = k;
  outcome.target_embedding = compute_target_embedding(config, model, target_task, seed);

  const std::vector<RankedSource> ranked =
      rank_sources(outcome.target_embedding, library, config.metric);
  if (k < 1 || k > ranked.size())
    throw KOutOfRangeError("k=" + std::to_string(k) + " outside [1, " +
                           std::to_string(ranked.size()) + "]");

  switch (method) {
    case TransferMethod::BestOfTopK: {
      const std::vector<LibraryEntry> plan = best_of_top_k_plan(ranked, k);
      const CheckpointRecord* best = nullptr;
      for (std::size_t i = 0; i < plan.size(); ++i) {
        Prompt init = load_entry_best_prompt(library, plan[i]);
        init.task_name = target;
        init.run_seed = static_cast<std::uint32_t>(seed);
        init.step = 0;
        const TuningRun run = tune(model, target_task, init, PromptInitKind::Transferred,
                                   target_tuning_config(config, seed));
        const CheckpointRecord& run_best = select_best_checkpoint(run);
        outcome.candidates.push_back({plan[i].task_name, plan[i].run_seed,
                                      ranked[i].similarity, run_best.validation_score});
        if (!best || run_best.validation_score > outcome.final_score) {
          outcome.final_score = run_best.validation_score;
          outcome.tuned_prompt = run_best.prompt;
          best = &run_best;
        }
      }
      break;
    }
    case TransferMethod::WeightedAverage: {
      std::vector<std::pair<Prompt, double>> tops;
      for (std::size_t i = 0; i < k; ++i)
        tops.emplace_back(load_entry_best_prompt(library, ranked[i].entry), ranked[i].similarity);
      const WeightedAverageResult averaged = weighted_average_prompt(tops);
      outcome.uniform_weight_fallback = averaged.weights.uniform_fallback;

      Prompt init = averaged.prompt;
      init.task_name = target;
      init.run_seed = static_cast<std::uint32_t>(seed);
      const TuningRun run = tune(model, target_task, init, PromptInitKind::Transferred,
                                 target_tuning_config(config, seed));
      const CheckpointRecord& best = select_best_checkpoint(run);
      outcome.final_score = best.validation_score;
      outcome.tuned_prompt = best.prompt;
      break;
    }
    case TransferMethod::Mixture: {
      // the top-k prompts vote at the task level; duplicates collapse
      std::vector<std::string> task_ids;
      for (std::size_t i = 0; i < k; ++i) {
        const std::string& id = ranked[i].entry.task_name;
        if (std::find(task_ids.begin(), task_ids.end(), id) == task_ids.end())
          task_ids.push_back(id);
      }

      std::vector<const ToyTask*> components;
      std::vector<ToyTask> storage;
      storage.reserve(task_ids.size() + 1);
      std::vector<std::pair<std::string, std::uint64_t>> sizes;
      for (const std::string& id : task_ids) {
        storage.push_back(make_toy_task(config.task_named(id)));
        sizes.emplace_back(id, storage.back().train.size());
      }
      storage.push_back(target_task);
      sizes.emplace_back(target, target_task.train.size());
      for (const ToyTask& t : storage) components.push_back(&t);

      const MixtureSpec spec = mixture_rates(sizes, config.mixture_cap);
      outcome.mixture = spec.components;

      std::map<std::string, std::uint64_t> dataset_sizes;
      for (const auto& [id, count] : sizes) dataset_sizes[id] = count;
      MixtureStream stream(spec, dataset_sizes, mix_seed(seed, fnv1a64("mixture:" + target)));
      auto sampler = [&]() -> const Example& {
        const MixtureDraw draw = stream.next();
        return components[draw.component]->train[draw.example];
      };

      Prompt mixture_init = init_prompt_from_vocab(model, config.prompt_length, config.init_top_n,
                                                   run_init_seed(seed, "mixture:" + target));
      mixture_init.task_name = target;
      mixture_init.run_seed = static_cast<std::uint32_t>(seed);
      TuningConfig mixture_tuning = target_tuning_config(config, seed);
      mixture_tuning.steps = config.schedule.source_steps;
      const TuningRun mixture_run =
          tune_with_sampler(model, "mixture:" + target, sampler, target_task.val, mixture_init,
                            PromptInitKind::VocabSampled, mixture_tuning);
      const CheckpointRecord& start =
          mixture_init_final ? final_checkpoint(mixture_run) : select_best_checkpoint(mixture_run);

      Prompt init = start.prompt;
      init.task_name = target;
      init.run_seed = static_cast<std::uint32_t>(seed);
      init.step = 0;
      const TuningRun run = tune(model, target_task, init, PromptInitKind::Transferred,
                                 target_tuning_config(config, seed));
      const CheckpointRecord& best = select_best_checkpoint(run);
      outcome.final_score = best.validation_score;
      outcome.tuned_prompt = best.prompt;
      break;
    }
  }
  return outcome;
}

}  // namespace spot
