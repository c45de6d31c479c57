#pragma once

#include <cstdint>
#include <vector>

#include "spot/matrix.hpp"
#include "spot/prompt.hpp"

namespace spot {

// A tiny frozen classifier standing in for a pretrained backbone. Inputs are
// token-id sequences; the prompt is prepended in embedding space and only the
// prompt ever receives gradients.
struct FrozenToyModel {
  std::uint32_t vocab_size = 0;   // V
  std::uint32_t embed_dim = 0;    // E
  std::uint32_t class_count = 0;  // C
  Matrix token_table;             // V x E, frozen
  Matrix head_weights;            // C x E, frozen
  std::vector<double> head_bias;  // length C, frozen
  std::uint64_t seed = 0;
};

// Seeded construction; token rows are N(0, token_scale^2), head rows
// N(0, head_scale^2 / E), bias zero.
FrozenToyModel make_frozen_toy_model(std::uint32_t vocab_size, std::uint32_t embed_dim,
                                     std::uint32_t class_count, std::uint64_t seed,
                                     double token_scale = 0.25, double head_scale = 4.0);

// FNV-1a over the raw bytes of every frozen parameter; lets tests prove
// tuning never touched the backbone.
std::uint64_t frozen_parameter_hash(const FrozenToyModel& model);

// h = mean of the (L + n) rows [prompt; embedded input]; probabilities are
// softmax(head_weights * h + bias).
std::vector<double> forward(const FrozenToyModel& model, const Prompt& prompt,
                            const std::vector<std::uint32_t>& input);

std::vector<double> logits_of(const FrozenToyModel& model, const Prompt& prompt,
                              const std::vector<std::uint32_t>& input);

struct Example {
  std::vector<std::uint32_t> tokens;
  std::uint32_t label = 0;
};

// Analytic gradient of mean cross-entropy over the batch with respect to the
// prompt entries. Every prompt row receives (1/(L+n)) * W^T (p - y), averaged
// over the batch.
Matrix prompt_gradient(const FrozenToyModel& model, const Prompt& prompt,
                       const std::vector<Example>& batch);

double cross_entropy_loss(const FrozenToyModel& model, const Prompt& prompt,
                          const std::vector<Example>& batch);

}  // namespace spot
