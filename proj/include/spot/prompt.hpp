#pragma once

#include <cstdint>
#include <string>

#include "spot/errors.hpp"
#include "spot/matrix.hpp"

namespace spot {

// An L x E matrix of tunable prompt-token embeddings, plus the identity of the
// tuning run that produced it. The only trainable parameters anywhere.
struct Prompt {
  Matrix tokens;  // L rows, E columns
  std::string task_name;
  std::uint32_t run_seed = 0;
  std::uint64_t step = 0;

  std::size_t length() const { return tokens.rows(); }
  std::size_t width() const { return tokens.cols(); }
};

// A prompt checkpoint captured at a fixed early step, used as the task's key
// in the library. All embeddings in one library share embed_step.
struct TaskEmbedding {
  Matrix tokens;
  std::string task_name;
  std::uint32_t run_seed = 0;
  std::uint64_t step = 0;
  std::uint64_t embed_step = 0;

  std::size_t length() const { return tokens.rows(); }
  std::size_t width() const { return tokens.cols(); }

  static TaskEmbedding from_prompt(const Prompt& p, std::uint64_t embed_step) {
    if (p.step != embed_step)
      throw InvalidInputError("prompt step " + std::to_string(p.step) +
                              " does not match embed step " + std::to_string(embed_step));
    return TaskEmbedding{p.tokens, p.task_name, p.run_seed, p.step, embed_step};
  }

  Prompt to_prompt() const { return Prompt{tokens, task_name, run_seed, step}; }
};

enum class SimilarityMetric { AvgTokens, PerToken };

inline void validate_prompt_shape(const Matrix& tokens) {
  if (tokens.rows() < 1 || tokens.cols() < 1)
    throw InvalidInputError("prompt must have L >= 1 and E >= 1");
  if (!tokens.all_finite()) throw InvalidInputError("prompt contains non-finite entries");
}

}  // namespace spot
