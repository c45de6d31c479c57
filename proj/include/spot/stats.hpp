#pragma once

#include <string>
#include <vector>

namespace spot {

// 100 * (transferred - baseline) / (100 - baseline). Negative values mean the
// transfer hurt. Throws BaselinePerfectError when baseline == 100.
double relative_error_reduction(double baseline, double transferred);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population (divide by n)
};

MeanStd aggregate_runs(const std::vector<double>& scores);

struct PearsonResult {
  double r = 0.0;
  double p = 1.0;  // two-sided, Student-t with n-2 degrees of freedom
};

PearsonResult pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Continuous-fraction evaluation of the regularized incomplete beta function
// I_x(a, b); backs the t-distribution tail used for the Pearson p-value.
double regularized_incomplete_beta(double x, double a, double b);

// P(|T| >= |t|) for T ~ Student-t with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct CorrelationPoint {
  std::string source_id;
  double similarity = 0.0;
  double error_reduction = 0.0;
};

struct CorrelationReport {
  std::string target_id;
  std::vector<CorrelationPoint> points;
  double r = 0.0;
  double p_value = 1.0;
};

CorrelationReport correlate_similarity_with_transfer(const std::string& target_id,
                                                     std::vector<CorrelationPoint> points);

}  // namespace spot
