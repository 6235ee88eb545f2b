#include "mcbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcbench {
namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-14;
  constexpr double kTiny = 1e-300;

  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
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

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  // Use the symmetry that keeps the continued fraction convergent.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (df <= 0.0) throw std::invalid_argument("degrees of freedom must be > 0");
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
  if (p <= 0.0 || p >= 1.0)
    throw std::invalid_argument("quantile probability must be in (0, 1)");
  if (p == 0.5) return 0.0;
  // CDF is monotone; bisect then polish. Range grows until it brackets.
  double lo = -1.0, hi = 1.0;
  while (student_t_cdf(lo, df) > p) lo *= 2.0;
  while (student_t_cdf(hi, df) < p) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, df) < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * (1.0 + std::fabs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

PairedTestResult paired_t_test(const std::vector<double>& a,
                               const std::vector<double>& b, double alpha) {
  if (a.size() != b.size())
    throw std::invalid_argument("paired samples must have equal size");
  const int n = static_cast<int>(a.size());
  if (n < 2) throw std::invalid_argument("paired t-test requires n >= 2");

  PairedTestResult r;
  r.n = n;
  r.alpha = alpha;
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= n;
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = a[i] - b[i] - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / (n - 1));
  r.mean_diff = mean;

  if (sd == 0.0) {
    r.degenerate = true;
    r.lcl = r.ucl = mean;
    if (mean == 0.0) {
      r.t_stat = 0.0;
      r.p_value = 1.0;
    } else {
      r.t_stat = mean > 0.0 ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
    }
    r.reject = r.p_value < alpha;
    return r;
  }

  const double se = sd / std::sqrt(static_cast<double>(n));
  r.t_stat = mean / se;
  const double df = n - 1;
  r.p_value = 2.0 * (1.0 - student_t_cdf(std::fabs(r.t_stat), df));
  const double tcrit = student_t_quantile(1.0 - alpha / 2.0, df);
  r.lcl = mean - tcrit * se;
  r.ucl = mean + tcrit * se;
  r.reject = r.p_value < alpha;
  return r;
}

BoxplotSummary boxplot_summary(std::vector<double> data) {
  if (data.empty()) throw std::invalid_argument("boxplot of empty data");
  std::sort(data.begin(), data.end());
  const size_t n = data.size();

  auto quantile = [&](double p) {
    const double h = p * static_cast<double>(n - 1);
    const size_t i = static_cast<size_t>(h);
    if (i + 1 >= n) return data[n - 1];
    const double frac = h - static_cast<double>(i);
    return data[i] + frac * (data[i + 1] - data[i]);
  };

  BoxplotSummary s;
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  s.lower_whisker = s.q1;
  s.upper_whisker = s.q3;
  for (double v : data) {
    if (v >= lo_fence) {
      s.lower_whisker = v;
      break;
    }
  }
  for (auto it = data.rbegin(); it != data.rend(); ++it) {
    if (*it <= hi_fence) {
      s.upper_whisker = *it;
      break;
    }
  }
  for (double v : data)
    if (v < lo_fence || v > hi_fence) s.outliers.push_back(v);
  return s;
}

}  // namespace mcbench
