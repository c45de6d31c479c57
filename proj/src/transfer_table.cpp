#include "spot/transfer_table.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spot/errors.hpp"
#include "spot/stats.hpp"

namespace spot {

namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw SchemaError(where + ": '" + s + "' is not a number");
  }
}

}  // namespace

std::size_t TransferTable::source_index(const std::string& id) const {
  const auto it = std::find(sources.begin(), sources.end(), id);
  if (it == sources.end()) throw InvalidInputError("unknown source id '" + id + "'");
  return static_cast<std::size_t>(it - sources.begin());
}

std::size_t TransferTable::target_index(const std::string& id) const {
  const auto it = std::find(targets.begin(), targets.end(), id);
  if (it == targets.end()) throw InvalidInputError("unknown target id '" + id + "'");
  return static_cast<std::size_t>(it - targets.begin());
}

bool TransferTable::has_baseline() const {
  return std::find(sources.begin(), sources.end(), kBaselineRow) != sources.end();
}

std::size_t TransferTable::baseline_index() const { return source_index(kBaselineRow); }

void validate_table(const TransferTable& table) {
  if (table.sources.empty() || table.targets.empty())
    throw InvalidInputError("transfer table has no rows or no columns");
  if (table.scores.rows() != table.sources.size() || table.scores.cols() != table.targets.size())
    throw ShapeMismatchError("transfer table score matrix does not match id lists");
  if (!table.stds.empty() && !table.stds.same_shape(table.scores))
    throw ShapeMismatchError("transfer table std matrix does not match score matrix");
  if (!table.has_baseline()) throw InvalidInputError("transfer table is missing a BASELINE row");
  if (!table.scores.all_finite()) throw InvalidInputError("transfer table has non-finite scores");
  for (const double s : table.stds.data())
    if (s < 0.0) throw InvalidInputError("negative standard deviation in transfer table");
  if (table.runs_per_cell < 1) throw InvalidInputError("runs_per_cell must be positive");
}

OracleResult oracle_search(const TransferTable& table) {
  validate_table(table);
  OracleResult result;
  double total = 0.0;
  for (std::size_t t = 0; t < table.targets.size(); ++t) {
    bool found = false;
    OraclePick pick;
    pick.target = table.targets[t];
    for (std::size_t s = 0; s < table.sources.size(); ++s) {
      if (table.sources[s] == kBaselineRow) continue;
      const double score = table.scores(s, t);
      if (!found || score > pick.score ||
          (score == pick.score && table.sources[s] < pick.source)) {
        pick.source = table.sources[s];
        pick.score = score;
        found = true;
      }
    }
    if (!found) throw InvalidInputError("oracle_search: table has only the BASELINE row");
    total += pick.score;
    result.picks.push_back(std::move(pick));
  }
  result.average_score = total / static_cast<double>(table.targets.size());
  return result;
}

RerMatrix rer_matrix(const TransferTable& table) {
  validate_table(table);
  const std::size_t baseline = table.baseline_index();
  RerMatrix out;
  out.targets = table.targets;
  for (std::size_t s = 0; s < table.sources.size(); ++s)
    if (s != baseline) out.sources.push_back(table.sources[s]);
  out.values = Matrix(out.sources.size(), out.targets.size());
  std::size_t row = 0;
  for (std::size_t s = 0; s < table.sources.size(); ++s) {
    if (s == baseline) continue;
    for (std::size_t t = 0; t < table.targets.size(); ++t)
      out.values(row, t) = relative_error_reduction(table.scores(baseline, t), table.scores(s, t));
    ++row;
  }
  return out;
}

void export_heatmap(const std::vector<std::string>& row_ids,
                    const std::vector<std::string>& col_ids, const Matrix& values,
                    const std::filesystem::path& path, const std::vector<std::size_t>* order) {
  if (values.rows() != row_ids.size() || values.cols() != col_ids.size())
    throw ShapeMismatchError("export_heatmap: matrix does not match id lists");
  if (order && (row_ids.size() != col_ids.size() || order->size() != row_ids.size()))
    throw ShapeMismatchError("export_heatmap: permutation requires a square matrix of equal size");

  auto row_at = [&](std::size_t i) { return order ? (*order)[i] : i; };
  auto col_at = [&](std::size_t j) { return order ? (*order)[j] : j; };

  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "id";
  for (std::size_t j = 0; j < col_ids.size(); ++j) f << ',' << col_ids[col_at(j)];
  f << '\n';
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    f << row_ids[row_at(i)];
    for (std::size_t j = 0; j < col_ids.size(); ++j) f << ',' << fmt6(values(row_at(i), col_at(j)));
    f << '\n';
  }
  if (!f) throw IoError("short write to " + path.string());
}

HeatmapCsv read_heatmap(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for reading");
  std::string line;
  if (!std::getline(f, line)) throw SchemaError(path.string() + ": empty heatmap file");
  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2) throw SchemaError(path.string() + ": heatmap header has no columns");

  HeatmapCsv out;
  out.col_ids.assign(header.begin() + 1, header.end());
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw SchemaError(path.string() + ": row '" + cells.front() + "' has " +
                        std::to_string(cells.size() - 1) + " cells, expected " +
                        std::to_string(header.size() - 1));
    out.row_ids.push_back(cells.front());
    std::vector<double> row;
    for (std::size_t j = 1; j < cells.size(); ++j)
      row.push_back(parse_number(cells[j], path.string()));
    rows.push_back(std::move(row));
  }
  out.values = Matrix::from_rows(rows);
  return out;
}

void save_table_csv(const TransferTable& table, const std::filesystem::path& path) {
  validate_table(table);
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "# runs_per_cell," << table.runs_per_cell << '\n';
  f << "source";
  for (const std::string& t : table.targets) f << ',' << t << "_mean," << t << "_std";
  f << '\n';
  for (std::size_t s = 0; s < table.sources.size(); ++s) {
    f << table.sources[s];
    for (std::size_t t = 0; t < table.targets.size(); ++t)
      f << ',' << fmt6(table.scores(s, t)) << ',' << fmt6(table.stds(s, t));
    f << '\n';
  }
  if (!f) throw IoError("short write to " + path.string());
}

TransferTable load_table_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for reading");
  TransferTable table;
  std::string line;
  bool have_header = false;

  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line.rfind("# runs_per_cell,", 0) == 0) {
      table.runs_per_cell = static_cast<unsigned>(
          parse_number(line.substr(std::string("# runs_per_cell,").size()), path.string()));
      continue;
    }
    if (line.front() == '#') continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (!have_header) {
      if (cells.size() < 3 || (cells.size() - 1) % 2 != 0 || cells.front() != "source")
        throw SchemaError(path.string() + ": header must be source,<t>_mean,<t>_std,...");
      for (std::size_t j = 1; j + 1 < cells.size(); j += 2) {
        const std::string& m = cells[j];
        const std::string& s = cells[j + 1];
        if (m.size() < 6 || m.substr(m.size() - 5) != "_mean" || s.size() < 5 ||
            s.substr(s.size() - 4) != "_std" || m.substr(0, m.size() - 5) != s.substr(0, s.size() - 4))
          throw SchemaError(path.string() + ": mismatched header pair '" + m + "', '" + s + "'");
        table.targets.push_back(m.substr(0, m.size() - 5));
      }
      have_header = true;
      continue;
    }
    if (cells.size() != 1 + 2 * table.targets.size())
      throw SchemaError(path.string() + ": row '" + cells.front() + "' has the wrong cell count");
    table.sources.push_back(cells.front());
  }

  // second pass for the numbers, now that shape is known
  std::ifstream g(path);
  table.scores = Matrix(table.sources.size(), table.targets.size());
  table.stds = Matrix(table.sources.size(), table.targets.size());
  std::size_t row = 0;
  bool seen_header = false;
  while (std::getline(g, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    const std::vector<std::string> cells = split_csv_line(line);
    for (std::size_t t = 0; t < table.targets.size(); ++t) {
      table.scores(row, t) = parse_number(cells[1 + 2 * t], path.string());
      table.stds(row, t) = parse_number(cells[2 + 2 * t], path.string());
    }
    ++row;
  }
  validate_table(table);
  return table;
}

}  // namespace spot
