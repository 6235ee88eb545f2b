#pragma once

#include <vector>

#include "mcbench/types.hpp"

namespace mcbench {

// Regularized incomplete beta function I_x(a, b), relative error <= 1e-10.
double regularized_incomplete_beta(double a, double b, double x);

// Student-t distribution function P(T <= t) with df degrees of freedom.
double student_t_cdf(double t, double df);

// Inverse of student_t_cdf in t for fixed df; p in (0, 1).
double student_t_quantile(double p, double df);

struct PairedTestResult {
  double mean_diff = 0.0;  // sample mean of a - b
  double t_stat = 0.0;
  double p_value = 1.0;  // two-sided
  double lcl = 0.0;      // (1 - alpha) confidence limits on the mean
  double ucl = 0.0;
  int n = 0;
  double alpha = 0.05;
  bool reject = false;      // p_value < alpha
  bool degenerate = false;  // zero variance of the differences
};

// Classic paired t-test on equally sized samples (n >= 2, else throws
// std::invalid_argument). Zero-variance differences set the degenerate
// flag: p = 1 when the mean is zero, p = 0 otherwise, CI collapses.
PairedTestResult paired_t_test(const std::vector<double>& a,
                               const std::vector<double>& b, double alpha);

struct BoxplotSummary {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double lower_whisker = 0.0;  // most extreme data within 1.5 IQR fences
  double upper_whisker = 0.0;
  std::vector<double> outliers;  // points strictly outside the whiskers
};

// Quartiles by linear interpolation of order statistics (type-7
// convention). Throws std::invalid_argument on empty data.
BoxplotSummary boxplot_summary(std::vector<double> data);

}  // namespace mcbench
