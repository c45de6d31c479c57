#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spot/toy_model.hpp"

namespace spot {

// Declarative task description; everything needed to regenerate the dataset.
struct TaskSpec {
  std::string name;
  std::string family;          // tasks in one family share their keyword sets
  std::uint64_t rule_seed = 0;  // sampling seed; the only difference within a family
  std::uint32_t vocab_size = 0;
  std::uint32_t class_count = 0;
  std::uint32_t train_examples = 0;
  std::uint32_t val_examples = 0;
};

std::string task_spec_to_json(const TaskSpec& spec);
TaskSpec task_spec_from_json(const std::string& text);

// Keyword-indicator classification: the family assigns each class a disjoint
// token set; an example's label is the class whose set strictly dominates the
// token counts of the sequence.
struct ToyTask {
  TaskSpec spec;
  std::vector<std::vector<std::uint32_t>> keyword_sets;  // C disjoint sets
  std::vector<Example> train;
  std::vector<Example> val;  // disjoint from train as token sequences
};

// Deterministic generation from the spec alone. Sequence lengths fall in
// [8, 16]; keyword density and set size are fixed generation constants.
ToyTask make_toy_task(const TaskSpec& spec);

// The label the generative rule assigns, or C (no strict dominator).
std::uint32_t dominant_class(const std::vector<std::uint32_t>& tokens,
                             const std::vector<std::vector<std::uint32_t>>& keyword_sets,
                             std::uint32_t vocab_size);

}  // namespace spot
