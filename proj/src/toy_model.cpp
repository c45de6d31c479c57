#include "spot/toy_model.hpp"

#include <bit>
#include <cmath>

#include "spot/errors.hpp"
#include "spot/rng.hpp"

namespace spot {

namespace {

void check_input(const FrozenToyModel& model, const std::vector<std::uint32_t>& input) {
  if (input.empty()) throw InvalidInputError("forward needs a nonempty input sequence");
  for (const std::uint32_t id : input)
    if (id >= model.vocab_size)
      throw TokenIdOutOfRange("token id " + std::to_string(id) + " >= vocab size " +
                              std::to_string(model.vocab_size));
}

std::vector<double> softmax(std::vector<double> logits) {
  double max_logit = logits.front();
  for (const double v : logits) max_logit = std::max(max_logit, v);
  double sum = 0.0;
  for (double& v : logits) {
    v = std::exp(v - max_logit);
    sum += v;
  }
  for (double& v : logits) v /= sum;
  return logits;
}

void accumulate_hash(std::uint64_t& h, const double* data, std::size_t count) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < count * sizeof(double); ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
}

}  // namespace

FrozenToyModel make_frozen_toy_model(std::uint32_t vocab_size, std::uint32_t embed_dim,
                                     std::uint32_t class_count, std::uint64_t seed,
                                     double token_scale, double head_scale) {
  if (vocab_size < 1 || embed_dim < 1 || class_count < 2)
    throw InvalidInputError("toy model needs V >= 1, E >= 1, C >= 2");
  FrozenToyModel m;
  m.vocab_size = vocab_size;
  m.embed_dim = embed_dim;
  m.class_count = class_count;
  m.seed = seed;

  Rng rng(mix_seed(seed, 0x746f6b656e73ULL));
  m.token_table = Matrix(vocab_size, embed_dim);
  for (std::uint32_t v = 0; v < vocab_size; ++v)
    for (std::uint32_t e = 0; e < embed_dim; ++e)
      m.token_table(v, e) = token_scale * standard_normal(rng);

  Rng head_rng(mix_seed(seed, 0x68656164ULL));
  const double head_sd = head_scale / std::sqrt(static_cast<double>(embed_dim));
  m.head_weights = Matrix(class_count, embed_dim);
  for (std::uint32_t c = 0; c < class_count; ++c)
    for (std::uint32_t e = 0; e < embed_dim; ++e)
      m.head_weights(c, e) = head_sd * standard_normal(head_rng);
  m.head_bias.assign(class_count, 0.0);
  return m;
}

std::uint64_t frozen_parameter_hash(const FrozenToyModel& model) {
  std::uint64_t h = 1469598103934665603ULL;
  accumulate_hash(h, model.token_table.data().data(), model.token_table.data().size());
  accumulate_hash(h, model.head_weights.data().data(), model.head_weights.data().size());
  accumulate_hash(h, model.head_bias.data(), model.head_bias.size());
  return h;
}

std::vector<double> logits_of(const FrozenToyModel& model, const Prompt& prompt,
                              const std::vector<std::uint32_t>& input) {
  check_input(model, input);
  if (prompt.width() != model.embed_dim)
    throw ShapeMismatchError("prompt width " + std::to_string(prompt.width()) +
                             " != model embed dim " + std::to_string(model.embed_dim));

  const std::size_t rows = prompt.length() + input.size();
  std::vector<double> h(model.embed_dim, 0.0);
  for (std::size_t i = 0; i < prompt.length(); ++i)
    for (std::uint32_t e = 0; e < model.embed_dim; ++e) h[e] += prompt.tokens(i, e);
  for (const std::uint32_t id : input)
    for (std::uint32_t e = 0; e < model.embed_dim; ++e) h[e] += model.token_table(id, e);
  for (double& v : h) v /= static_cast<double>(rows);

  std::vector<double> logits(model.class_count, 0.0);
  for (std::uint32_t c = 0; c < model.class_count; ++c) {
    double acc = model.head_bias[c];
    for (std::uint32_t e = 0; e < model.embed_dim; ++e) acc += model.head_weights(c, e) * h[e];
    logits[c] = acc;
  }
  return logits;
}

std::vector<double> forward(const FrozenToyModel& model, const Prompt& prompt,
                            const std::vector<std::uint32_t>& input) {
  return softmax(logits_of(model, prompt, input));
}

Matrix prompt_gradient(const FrozenToyModel& model, const Prompt& prompt,
                       const std::vector<Example>& batch) {
  if (batch.empty()) throw EmptyBatchError("prompt_gradient over an empty batch");
  const std::size_t L = prompt.length();
  const std::uint32_t E = model.embed_dim;

  Matrix grad(L, E, 0.0);
  for (const Example& ex : batch) {
    if (ex.label >= model.class_count)
      throw InvalidInputError("label " + std::to_string(ex.label) + " >= class count");
    const std::vector<double> p = forward(model, prompt, ex.tokens);
    const double scale = 1.0 / static_cast<double>(L + ex.tokens.size());

    // W^T (p - y), shared by every prompt row.
    std::vector<double> row_grad(E, 0.0);
    for (std::uint32_t c = 0; c < model.class_count; ++c) {
      const double err = p[c] - (c == ex.label ? 1.0 : 0.0);
      if (err == 0.0) continue;
      for (std::uint32_t e = 0; e < E; ++e) row_grad[e] += model.head_weights(c, e) * err;
    }
    for (std::size_t i = 0; i < L; ++i)
      for (std::uint32_t e = 0; e < E; ++e) grad(i, e) += scale * row_grad[e];
  }
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  for (double& v : grad.data()) v *= inv_batch;
  return grad;
}

double cross_entropy_loss(const FrozenToyModel& model, const Prompt& prompt,
                          const std::vector<Example>& batch) {
  if (batch.empty()) throw EmptyBatchError("cross_entropy_loss over an empty batch");
  double total = 0.0;
  for (const Example& ex : batch) {
    const std::vector<double> p = forward(model, prompt, ex.tokens);
    total += -std::log(std::max(p[ex.label], 1e-300));
  }
  return total / static_cast<double>(batch.size());
}

}  // namespace spot
