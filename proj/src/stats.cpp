#include "spot/stats.hpp"

#include <algorithm>
#include <cmath>

#include "spot/errors.hpp"

namespace spot {

namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 400;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double relative_error_reduction(double baseline, double transferred) {
  if (baseline < 0.0 || baseline > 100.0 || transferred < 0.0 || transferred > 100.0)
    throw InvalidInputError("scores must lie in [0, 100]");
  if (baseline == 100.0)
    throw BaselinePerfectError("baseline score of 100 leaves no error to reduce");
  return 100.0 * (transferred - baseline) / (100.0 - baseline);
}

MeanStd aggregate_runs(const std::vector<double>& scores) {
  if (scores.empty()) throw EmptyListError("aggregate_runs over an empty list");
  double sum = 0.0;
  for (const double s : scores) sum += s;
  const double mean = sum / static_cast<double>(scores.size());
  double sq = 0.0;
  for (const double s : scores) sq += (s - mean) * (s - mean);
  return {mean, std::sqrt(sq / static_cast<double>(scores.size()))};
}

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0))
    throw InvalidInputError("regularized_incomplete_beta: need a, b > 0 and x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  // Continued fraction converges fastest below the mean a/(a+b).
  if (x < (a + 1.0) / (a + b + 2.0))
    return std::exp(log_front) * beta_continued_fraction(x, a, b) / a;
  return 1.0 - std::exp(log_front) * beta_continued_fraction(1.0 - x, b, a) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw InvalidInputError("student_t_two_sided_p: df must be positive");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return regularized_incomplete_beta(x, df / 2.0, 0.5);
}

PearsonResult pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw LengthMismatchError("pearson: " + std::to_string(xs.size()) + " xs vs " +
                              std::to_string(ys.size()) + " ys");
  const std::size_t n = xs.size();
  if (n < 3) throw LengthMismatchError("pearson: need at least 3 points for a p-value");

  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw DegenerateVarianceError("pearson: a variable has zero variance");

  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  double p;
  if (1.0 - r * r <= 0.0) {
    p = 0.0;
  } else {
    const double t = r * std::sqrt(df / (1.0 - r * r));
    p = student_t_two_sided_p(t, df);
  }
  return {r, p};
}

CorrelationReport correlate_similarity_with_transfer(const std::string& target_id,
                                                     std::vector<CorrelationPoint> points) {
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const CorrelationPoint& pt : points) {
    xs.push_back(pt.similarity);
    ys.push_back(pt.error_reduction);
  }
  const PearsonResult pr = pearson(xs, ys);
  return CorrelationReport{target_id, std::move(points), pr.r, pr.p};
}

}  // namespace spot
