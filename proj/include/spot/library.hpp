#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "spot/checkpoint.hpp"
#include "spot/prompt.hpp"

namespace spot {

// One (task, run) row of the prompt library: the task embedding is the key,
// the best-validation prompt is the value.
struct LibraryEntry {
  std::string task_name;
  std::uint32_t run_seed = 0;
  std::filesystem::path embedding_path;    // relative to the manifest directory
  std::filesystem::path best_prompt_path;  // relative to the manifest directory
  std::uint64_t best_step = 0;
  double validation_score = 0.0;  // percent, [0, 100]
};

struct LibraryManifest {
  std::uint64_t embed_step = 0;
  std::uint32_t prompt_length = 0;  // L
  std::uint32_t embed_width = 0;    // E
  std::vector<LibraryEntry> entries;
  std::filesystem::path directory;  // where the manifest lives; resolves entry paths

  std::filesystem::path resolve(const std::filesystem::path& rel) const {
    return rel.is_absolute() ? rel : directory / rel;
  }
};

// Parses and fully validates a manifest: schema, unique (task, seed) pairs,
// referenced checkpoints present with matching identity, shared (L, E), and
// embedding steps equal to the library embed_step. Entries come back sorted
// by (task_name, run_seed). Violations are reported with the entry index.
LibraryManifest load_library(const std::filesystem::path& manifest_path);

// Lenient variant used while a library is being assembled: entries may have
// an empty embedding path and no checkpoint validation is performed.
LibraryManifest load_manifest_lenient(const std::filesystem::path& manifest_path);

void save_manifest(const LibraryManifest& manifest, const std::filesystem::path& manifest_path);

TaskEmbedding load_entry_embedding(const LibraryManifest& manifest, const LibraryEntry& entry);
Prompt load_entry_best_prompt(const LibraryManifest& manifest, const LibraryEntry& entry);

}  // namespace spot
