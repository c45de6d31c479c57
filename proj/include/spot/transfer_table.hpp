#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spot/cluster.hpp"
#include "spot/matrix.hpp"

namespace spot {

// Per-(source, target) mean scores and standard deviations across seeds. The
// row named BASELINE holds tuning-from-scratch results.
inline constexpr const char* kBaselineRow = "BASELINE";

struct TransferTable {
  std::vector<std::string> sources;  // row ids, BASELINE among them
  std::vector<std::string> targets;  // column ids
  Matrix scores;                     // sources x targets, mean over runs
  Matrix stds;                       // same shape
  unsigned runs_per_cell = 3;

  std::size_t source_index(const std::string& id) const;
  std::size_t target_index(const std::string& id) const;
  bool has_baseline() const;
  std::size_t baseline_index() const;
};

void validate_table(const TransferTable& table);

struct OraclePick {
  std::string target;
  std::string source;
  double score = 0.0;
};

struct OracleResult {
  std::vector<OraclePick> picks;  // one per target, in table column order
  double average_score = 0.0;     // mean of per-target maxima
};

// Per-target argmax of mean score over non-baseline source rows; ties go to
// the lexicographically smaller source id.
OracleResult oracle_search(const TransferTable& table);

// Relative error reduction of every non-baseline source row against the
// BASELINE row; rows keep the table's source order minus BASELINE.
struct RerMatrix {
  std::vector<std::string> sources;
  std::vector<std::string> targets;
  Matrix values;
};

RerMatrix rer_matrix(const TransferTable& table);

// CSV with a header row/column of ids and %.6g cells. When `order` is given it
// permutes both rows and columns (clustered heatmap of a square matrix).
void export_heatmap(const std::vector<std::string>& row_ids,
                    const std::vector<std::string>& col_ids, const Matrix& values,
                    const std::filesystem::path& path,
                    const std::vector<std::size_t>* order = nullptr);

struct HeatmapCsv {
  std::vector<std::string> row_ids;
  std::vector<std::string> col_ids;
  Matrix values;
};

HeatmapCsv read_heatmap(const std::filesystem::path& path);

// Transfer tables travel as CSV: one "source" column followed by
// <target>_mean,<target>_std column pairs; a leading "# runs_per_cell,N"
// comment line carries the seed count.
void save_table_csv(const TransferTable& table, const std::filesystem::path& path);
TransferTable load_table_csv(const std::filesystem::path& path);

}  // namespace spot
