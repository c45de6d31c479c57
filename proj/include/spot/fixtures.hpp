#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spot/transfer_table.hpp"

namespace spot {

// Published transfer study results: per-(source, target) mean and standard
// deviation across three seeds, plus the from-scratch BASELINE row. 16 source
// rows by 10 target columns.
const TransferTable& paper_transfer_table();

// Published comparison of source-prompt prediction methods. Values are the
// average over the 10 target tasks and the cross-seed standard deviation;
// abs/rel are improvements over the baseline row.
struct PredictionEntry {
  std::string method;  // baseline | oracle | best-of-top-k | weighted-average | mixture
  std::string metric;  // avg | per-token | "" where not applicable
  int k = 0;           // 0 where not applicable
  double abs_change = 0.0;
  double abs_std = 0.0;
  double rel_change = 0.0;
  double rel_std = 0.0;
  double avg_score = 0.0;
  double avg_std = 0.0;
};

const std::vector<PredictionEntry>& paper_prediction_table();

double paper_baseline_average();
double paper_oracle_average();

// Published training-set sizes of the transfer-study tasks (sources first).
const std::vector<std::pair<std::string, std::uint64_t>>& paper_task_sizes();

}  // namespace spot
