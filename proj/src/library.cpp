#include "spot/library.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"

namespace spot {

namespace {

using nlohmann::json;

json parse_json_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for reading");
  json doc;
  try {
    f >> doc;
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": not valid JSON: " + e.what());
  }
  return doc;
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(where + ": field '" + key + "' has the wrong type: " + e.what());
  }
}

LibraryManifest parse_manifest(const std::filesystem::path& manifest_path, bool lenient) {
  const json doc = parse_json_file(manifest_path);
  const std::string where = manifest_path.string();
  if (!doc.is_object()) throw SchemaError(where + ": top level must be an object");

  LibraryManifest m;
  m.directory = manifest_path.has_parent_path() ? manifest_path.parent_path()
                                                : std::filesystem::path(".");
  m.embed_step = field<std::uint64_t>(doc, "embed_step", where);
  m.prompt_length = field<std::uint32_t>(doc, "L", where);
  m.embed_width = field<std::uint32_t>(doc, "E", where);
  if (m.prompt_length < 1 || m.embed_width < 1)
    throw SchemaError(where + ": L and E must be at least 1");

  if (!doc.contains("entries") || !doc.at("entries").is_array())
    throw SchemaError(where + ": missing 'entries' array");

  std::size_t index = 0;
  for (const json& item : doc.at("entries")) {
    const std::string entry_where = where + ": entry " + std::to_string(index);
    if (!item.is_object()) throw SchemaError(entry_where + ": must be an object");
    LibraryEntry e;
    e.task_name = field<std::string>(item, "task", entry_where);
    e.run_seed = field<std::uint32_t>(item, "seed", entry_where);
    e.embedding_path = field<std::string>(item, "embedding", entry_where);
    e.best_prompt_path = field<std::string>(item, "best_prompt", entry_where);
    e.best_step = field<std::uint64_t>(item, "best_step", entry_where);
    e.validation_score = field<double>(item, "val_score", entry_where);
    if (e.validation_score < 0.0 || e.validation_score > 100.0)
      throw SchemaError(entry_where + ": val_score must lie in [0, 100]");
    if (!lenient && e.embedding_path.empty())
      throw SchemaError(entry_where + ": empty embedding path");
    m.entries.push_back(std::move(e));
    ++index;
  }

  std::sort(m.entries.begin(), m.entries.end(), [](const LibraryEntry& a, const LibraryEntry& b) {
    return std::tie(a.task_name, a.run_seed) < std::tie(b.task_name, b.run_seed);
  });

  std::set<std::pair<std::string, std::uint32_t>> seen;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    const LibraryEntry& e = m.entries[i];
    if (!seen.insert({e.task_name, e.run_seed}).second)
      throw DuplicateEntryError(where + ": entry " + std::to_string(i) + ": duplicate (task='" +
                                e.task_name + "', seed=" + std::to_string(e.run_seed) + ")");
  }
  return m;
}

void check_checkpoint(const LibraryManifest& m, std::size_t index, const std::filesystem::path& rel,
                      const std::string& role, const LibraryEntry& e, std::uint64_t expect_step,
                      bool step_is_exact) {
  const std::string where =
      m.directory.string() + ": entry " + std::to_string(index) + " (" + role + ")";
  const std::filesystem::path full = m.resolve(rel);
  if (!std::filesystem::exists(full))
    throw MissingFileError(where + ": " + full.string() + " does not exist");
  const Prompt p = read_checkpoint(full);
  if (p.tokens.rows() != m.prompt_length || p.tokens.cols() != m.embed_width)
    throw ShapeMismatchError(where + ": checkpoint is " + std::to_string(p.tokens.rows()) + "x" +
                             std::to_string(p.tokens.cols()) + ", library is " +
                             std::to_string(m.prompt_length) + "x" +
                             std::to_string(m.embed_width));
  if (p.task_name != e.task_name || p.run_seed != e.run_seed)
    throw SchemaError(where + ": checkpoint identity (" + p.task_name + ", " +
                      std::to_string(p.run_seed) + ") does not match manifest entry (" +
                      e.task_name + ", " + std::to_string(e.run_seed) + ")");
  if (step_is_exact && p.step != expect_step)
    throw SchemaError(where + ": checkpoint step " + std::to_string(p.step) + " != expected " +
                      std::to_string(expect_step));
  if (!step_is_exact && p.step < expect_step)
    throw SchemaError(where + ": best step " + std::to_string(p.step) +
                      " precedes embed step " + std::to_string(expect_step));
}

}  // namespace

LibraryManifest load_manifest_lenient(const std::filesystem::path& manifest_path) {
  return parse_manifest(manifest_path, /*lenient=*/true);
}

LibraryManifest load_library(const std::filesystem::path& manifest_path) {
  LibraryManifest m = parse_manifest(manifest_path, /*lenient=*/false);
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    const LibraryEntry& e = m.entries[i];
    check_checkpoint(m, i, e.embedding_path, "embedding", e, m.embed_step, /*step_is_exact=*/true);
    check_checkpoint(m, i, e.best_prompt_path, "best_prompt", e, m.embed_step,
                     /*step_is_exact=*/false);
    if (e.best_step < m.embed_step)
      throw SchemaError(manifest_path.string() + ": entry " + std::to_string(i) +
                        ": best_step " + std::to_string(e.best_step) + " precedes embed_step " +
                        std::to_string(m.embed_step));
  }
  return m;
}

void save_manifest(const LibraryManifest& manifest, const std::filesystem::path& manifest_path) {
  nlohmann::json doc;
  doc["embed_step"] = manifest.embed_step;
  doc["L"] = manifest.prompt_length;
  doc["E"] = manifest.embed_width;
  doc["entries"] = nlohmann::json::array();

  std::vector<LibraryEntry> sorted = manifest.entries;
  std::sort(sorted.begin(), sorted.end(), [](const LibraryEntry& a, const LibraryEntry& b) {
    return std::tie(a.task_name, a.run_seed) < std::tie(b.task_name, b.run_seed);
  });
  for (const LibraryEntry& e : sorted) {
    nlohmann::json item;
    item["task"] = e.task_name;
    item["seed"] = e.run_seed;
    item["embedding"] = e.embedding_path.generic_string();
    item["best_prompt"] = e.best_prompt_path.generic_string();
    item["best_step"] = e.best_step;
    item["val_score"] = e.validation_score;
    doc["entries"].push_back(std::move(item));
  }

  std::ofstream f(manifest_path, std::ios::trunc);
  if (!f) throw IoError("cannot open " + manifest_path.string() + " for writing");
  f << doc.dump(2) << "\n";
  if (!f) throw IoError("short write to " + manifest_path.string());
}

TaskEmbedding load_entry_embedding(const LibraryManifest& manifest, const LibraryEntry& entry) {
  const Prompt p = read_checkpoint(manifest.resolve(entry.embedding_path));
  return TaskEmbedding::from_prompt(p, manifest.embed_step);
}

Prompt load_entry_best_prompt(const LibraryManifest& manifest, const LibraryEntry& entry) {
  return read_checkpoint(manifest.resolve(entry.best_prompt_path));
}

}  // namespace spot
