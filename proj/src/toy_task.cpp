#include "spot/toy_task.hpp"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"
#include "spot/errors.hpp"
#include "spot/rng.hpp"

namespace spot {

namespace {

constexpr std::uint32_t kKeywordsPerClass = 8;
constexpr std::uint32_t kMinSeqLen = 8;
constexpr std::uint32_t kMaxSeqLen = 16;
constexpr double kKeywordDensity = 0.35;
constexpr int kMaxResampleAttempts = 10000;

std::uint64_t sequence_hash(const std::vector<std::uint32_t>& tokens) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const std::uint32_t t : tokens) {
    for (int i = 0; i < 4; ++i) {
      h ^= (t >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::vector<std::vector<std::uint32_t>> family_keyword_sets(const std::string& family,
                                                            std::uint32_t vocab_size,
                                                            std::uint32_t class_count) {
  if (vocab_size < class_count * kKeywordsPerClass)
    throw InvalidInputError("vocab size " + std::to_string(vocab_size) +
                            " too small for " + std::to_string(class_count) +
                            " keyword sets of " + std::to_string(kKeywordsPerClass));
  std::vector<std::uint32_t> ids(vocab_size);
  for (std::uint32_t i = 0; i < vocab_size; ++i) ids[i] = i;
  Rng rng(mix_seed(fnv1a64(family), 0x66616d696c79ULL));
  shuffle_in_place(ids, rng);

  std::vector<std::vector<std::uint32_t>> sets(class_count);
  for (std::uint32_t c = 0; c < class_count; ++c)
    sets[c].assign(ids.begin() + c * kKeywordsPerClass, ids.begin() + (c + 1) * kKeywordsPerClass);
  return sets;
}

// tokens biased toward the intended class's keyword set
std::vector<std::uint32_t> sample_sequence(Rng& rng, const std::vector<std::uint32_t>& keywords,
                                           std::uint32_t vocab_size) {
  const std::uint32_t len =
      kMinSeqLen + static_cast<std::uint32_t>(bounded_uniform(rng, kMaxSeqLen - kMinSeqLen + 1));
  std::vector<std::uint32_t> tokens(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    if (uniform01(rng) < kKeywordDensity)
      tokens[i] = keywords[bounded_uniform(rng, keywords.size())];
    else
      tokens[i] = static_cast<std::uint32_t>(bounded_uniform(rng, vocab_size));
  }
  return tokens;
}

Example generate_example(Rng& rng, std::uint32_t intended_class,
                         const std::vector<std::vector<std::uint32_t>>& sets,
                         std::uint32_t vocab_size,
                         const std::unordered_set<std::uint64_t>* forbidden,
                         std::unordered_set<std::uint64_t>& seen) {
  for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    std::vector<std::uint32_t> tokens = sample_sequence(rng, sets[intended_class], vocab_size);
    if (dominant_class(tokens, sets, vocab_size) != intended_class) continue;
    const std::uint64_t h = sequence_hash(tokens);
    if (forbidden && forbidden->count(h)) continue;
    if (!seen.insert(h).second) continue;
    return Example{std::move(tokens), intended_class};
  }
  throw InvalidInputError("could not generate a dominated sequence; vocabulary too small?");
}

}  // namespace

std::uint32_t dominant_class(const std::vector<std::uint32_t>& tokens,
                             const std::vector<std::vector<std::uint32_t>>& keyword_sets,
                             std::uint32_t vocab_size) {
  (void)vocab_size;
  const std::uint32_t class_count = static_cast<std::uint32_t>(keyword_sets.size());
  std::vector<std::uint32_t> counts(class_count, 0);
  for (const std::uint32_t t : tokens)
    for (std::uint32_t c = 0; c < class_count; ++c)
      if (std::find(keyword_sets[c].begin(), keyword_sets[c].end(), t) != keyword_sets[c].end())
        ++counts[c];

  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < class_count; ++c)
    if (counts[c] > counts[best]) best = c;
  // strict dominance required; ties mean no class wins
  for (std::uint32_t c = 0; c < class_count; ++c)
    if (c != best && counts[c] == counts[best]) return class_count;
  return best;
}

ToyTask make_toy_task(const TaskSpec& spec) {
  if (spec.class_count < 2) throw InvalidInputError("toy task needs at least 2 classes");
  if (spec.train_examples < 1 || spec.val_examples < 1)
    throw InvalidInputError("toy task needs nonempty train and val splits");

  ToyTask task;
  task.spec = spec;
  task.keyword_sets = family_keyword_sets(spec.family, spec.vocab_size, spec.class_count);

  Rng rng(mix_seed(spec.rule_seed, 0x7461736bULL));
  std::unordered_set<std::uint64_t> train_hashes;
  for (std::uint32_t i = 0; i < spec.train_examples; ++i)
    task.train.push_back(generate_example(rng, i % spec.class_count, task.keyword_sets,
                                          spec.vocab_size, nullptr, train_hashes));
  std::unordered_set<std::uint64_t> val_hashes;
  for (std::uint32_t i = 0; i < spec.val_examples; ++i)
    task.val.push_back(generate_example(rng, i % spec.class_count, task.keyword_sets,
                                        spec.vocab_size, &train_hashes, val_hashes));
  return task;
}

std::string task_spec_to_json(const TaskSpec& spec) {
  nlohmann::json doc;
  doc["name"] = spec.name;
  doc["family"] = spec.family;
  doc["rule_seed"] = spec.rule_seed;
  doc["vocab_size"] = spec.vocab_size;
  doc["class_count"] = spec.class_count;
  doc["train_examples"] = spec.train_examples;
  doc["val_examples"] = spec.val_examples;
  return doc.dump(2);
}

TaskSpec task_spec_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("task spec is not valid JSON: ") + e.what());
  }
  TaskSpec spec;
  try {
    spec.name = doc.at("name").get<std::string>();
    spec.family = doc.at("family").get<std::string>();
    spec.rule_seed = doc.at("rule_seed").get<std::uint64_t>();
    spec.vocab_size = doc.at("vocab_size").get<std::uint32_t>();
    spec.class_count = doc.at("class_count").get<std::uint32_t>();
    spec.train_examples = doc.at("train_examples").get<std::uint32_t>();
    spec.val_examples = doc.at("val_examples").get<std::uint32_t>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("task spec missing or mistyped field: ") + e.what());
  }
  return spec;
}

}  // namespace spot
