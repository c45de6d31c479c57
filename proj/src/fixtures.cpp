#include "spot/fixtures.hpp"

#include "spot/errors.hpp"

namespace spot {

namespace {

TransferTable build_transfer_table() {
  TransferTable t;
  t.runs_per_cell = 3;
  t.targets = {"BoolQ", "CoLA", "STS-B", "WiC", "CR", "MRPC", "RTE", "WSC", "COPA", "CB"};
  t.sources = {kBaselineRow, "C4",     "DocNLI",     "Yelp-2",    "MNLI",    "QQP",
               "QNLI",       "ReCoRD", "CxC",        "SQuAD",     "DROP",    "SST-2",
               "WinoGrande", "HellaSWAG", "MultiRC", "CosmosQA",  "RACE"};

  // means, one row per source in the order above
  t.scores = Matrix::from_rows({
      {73.0, 52.9, 88.1, 63.6, 93.5, 86.1, 68.7, 71.5, 56.7, 92.7},
      {75.8, 54.8, 87.8, 66.3, 93.9, 88.0, 69.1, 68.0, 54.3, 83.1},
      {72.7, 52.7, 87.3, 64.7, 93.6, 86.2, 67.4, 71.1, 56.0, 87.2},
      {74.8, 53.9, 88.1, 64.7, 93.8, 86.6, 69.2, 70.8, 55.0, 87.8},
      {77.6, 54.2, 89.5, 69.5, 93.9, 88.4, 74.7, 71.8, 69.3, 97.0},
      {75.9, 55.6, 89.4, 67.9, 93.7, 88.1, 72.0, 71.5, 62.0, 88.7},
      {75.6, 55.5, 89.2, 69.6, 93.8, 87.8, 71.1, 71.5, 59.7, 92.5},
      {73.1, 54.7, 87.7, 65.5, 93.7, 88.7, 67.5, 77.2, 59.3, 74.1},
      {75.9, 55.0, 90.0, 70.2, 93.9, 88.0, 70.3, 68.6, 60.3, 89.3},
      {76.0, 54.9, 87.6, 66.8, 93.9, 88.7, 71.2, 72.4, 63.0, 91.3},
      {73.6, 53.0, 86.9, 67.5, 93.7, 88.2, 65.7, 73.4, 60.0, 78.5},
      {73.3, 52.3, 87.9, 63.8, 93.8, 85.6, 66.9, 68.6, 57.0, 92.9},
      {74.1, 52.8, 87.8, 62.4, 93.7, 86.1, 67.9, 71.5, 56.7, 83.9},
      {70.0, 32.7, 87.5, 60.1, 93.6, 86.6, 63.9, 70.2, 58.0, 85.5},
      {74.0, 50.0, 88.2, 66.4, 93.4, 86.4, 67.6, 69.2, 56.0, 80.0},
      {73.4, 52.1, 87.7, 65.9, 93.6, 87.9, 68.7, 69.6, 62.3, 83.9},
      {73.6, 52.5, 87.5, 63.1, 93.4, 86.5, 66.5, 68.9, 57.3, 84.8},
  });

  // standard deviations across the three seeds
  t.stds = Matrix::from_rows({
      {1.2, 1.2, 0.6, 1.6, 0.2, 0.7, 1.2, 1.7, 1.7, 1.9},
      {0.5, 1.1, 0.6, 0.8, 0.1, 0.6, 1.9, 0.5, 0.9, 5.7},
      {1.4, 0.9, 0.9, 0.3, 0.4, 0.8, 2.6, 3.6, 5.9, 1.7},
      {0.7, 0.2, 0.3, 0.5, 0.3, 0.8, 1.1, 1.2, 0.0, 1.6},
      {0.4, 0.7, 0.3, 0.5, 0.4, 0.6, 1.3, 3.3, 2.1, 1.1},
      {0.5, 1.3, 0.2, 0.2, 0.5, 0.7, 0.5, 0.9, 2.2, 4.2},
      {0.5, 2.0, 0.2, 1.3, 0.2, 0.1, 0.8, 2.5, 3.9, 1.1},
      {0.9, 1.3, 0.7, 0.9, 0.1, 0.3, 1.3, 2.3, 1.2, 5.2},
      {0.4, 0.2, 0.0, 0.1, 0.2, 0.4, 0.5, 2.5, 3.9, 2.4},
      {0.7, 1.2, 0.1, 0.3, 0.5, 0.7, 0.4, 0.5, 1.6, 1.3},
      {1.3, 1.0, 0.9, 1.2, 0.2, 0.3, 3.1, 2.0, 3.6, 8.6},
      {0.5, 0.3, 0.3, 1.7, 0.5, 0.9, 1.1, 0.4, 2.2, 1.3},
      {0.8, 1.6, 0.3, 2.5, 0.1, 0.5, 1.3, 2.5, 1.2, 0.8},
      {2.6, 23.6, 0.2, 3.9, 0.0, 1.4, 5.4, 2.1, 2.2, 2.6},
      {0.5, 4.6, 0.2, 0.5, 0.1, 1.3, 1.0, 4.1, 4.1, 8.6},
      {1.3, 2.3, 0.5, 1.0, 0.3, 0.8, 1.6, 3.2, 5.0, 8.8},
      {0.5, 2.8, 0.5, 5.3, 0.2, 0.8, 2.0, 1.2, 1.2, 3.4},
  });
  validate_table(t);
  return t;
}

std::vector<PredictionEntry> build_prediction_table() {
  std::vector<PredictionEntry> rows;
  rows.push_back({"baseline", "", 0, 0.0, 0.0, 0.0, 0.0, 74.7, 0.7});
  rows.push_back({"oracle", "", 48, 6.0, 0.5, 26.5, 1.1, 80.7, 0.0});

  rows.push_back({"best-of-top-k", "avg", 1, 1.5, 0.5, 11.7, 1.1, 76.2, 0.1});
  rows.push_back({"best-of-top-k", "avg", 3, 2.7, 0.6, 16.6, 1.1, 77.4, 0.3});
  rows.push_back({"best-of-top-k", "avg", 6, 3.8, 0.1, 20.0, 1.1, 78.5, 0.5});
  rows.push_back({"best-of-top-k", "avg", 9, 4.5, 0.4, 22.2, 1.1, 79.2, 0.1});
  rows.push_back({"best-of-top-k", "avg", 12, 5.0, 0.9, 23.6, 2.2, 79.7, 0.4});
  rows.push_back({"best-of-top-k", "avg", 15, 5.4, 0.8, 24.9, 1.8, 80.1, 0.3});

  rows.push_back({"best-of-top-k", "per-token", 1, 2.0, 0.4, 12.1, 1.1, 76.7, 0.7});
  rows.push_back({"best-of-top-k", "per-token", 3, 2.9, 0.6, 17.0, 0.6, 77.5, 0.4});
  rows.push_back({"best-of-top-k", "per-token", 6, 4.5, 0.5, 22.1, 1.2, 79.2, 0.1});
  rows.push_back({"best-of-top-k", "per-token", 9, 4.6, 0.5, 22.6, 0.9, 79.5, 0.2});
  rows.push_back({"best-of-top-k", "per-token", 12, 5.0, 0.6, 23.5, 1.4, 79.6, 0.1});
  rows.push_back({"best-of-top-k", "per-token", 15, 5.3, 0.9, 24.5, 2.2, 80.0, 0.4});

  rows.push_back({"weighted-average", "per-token", 3, 1.9, 0.5, 11.5, 2.7, 76.6, 0.1});
  rows.push_back({"mixture", "per-token", 12, 3.1, 0.5, 15.3, 2.8, 77.8, 0.1});
  return rows;
}

std::vector<std::pair<std::string, std::uint64_t>> build_task_sizes() {
  return {
      {"C4", 365000000}, {"DocNLI", 942000},    {"Yelp-2", 560000},   {"MNLI", 393000},
      {"QQP", 364000},   {"QNLI", 105000},      {"ReCoRD", 101000},   {"CxC", 88000},
      {"SQuAD", 88000},  {"DROP", 77000},       {"SST-2", 67000},     {"WinoGrande", 40000},
      {"HellaSWAG", 40000}, {"MultiRC", 27000}, {"CosmosQA", 25000},  {"RACE", 25000},
      {"BoolQ", 9000},   {"CoLA", 9000},        {"STS-B", 6000},      {"WiC", 5000},
      {"CR", 4000},      {"MRPC", 4000},        {"RTE", 2000},        {"WSC", 554},
      {"COPA", 400},     {"CB", 250},
  };
}

}  // namespace

const TransferTable& paper_transfer_table() {
  static const TransferTable table = build_transfer_table();
  return table;
}

const std::vector<PredictionEntry>& paper_prediction_table() {
  static const std::vector<PredictionEntry> rows = build_prediction_table();
  return rows;
}

double paper_baseline_average() {
  for (const PredictionEntry& row : paper_prediction_table())
    if (row.method == "baseline") return row.avg_score;
  throw InvalidInputError("prediction table has no baseline row");
}

double paper_oracle_average() {
  for (const PredictionEntry& row : paper_prediction_table())
    if (row.method == "oracle") return row.avg_score;
  throw InvalidInputError("prediction table has no oracle row");
}

const std::vector<std::pair<std::string, std::uint64_t>>& paper_task_sizes() {
  static const std::vector<std::pair<std::string, std::uint64_t>> sizes = build_task_sizes();
  return sizes;
}

}  // namespace spot
