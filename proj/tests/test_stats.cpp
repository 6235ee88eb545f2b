#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mcbench/rng.hpp"
#include "mcbench/stats.hpp"

using namespace mcbench;

TEST_CASE("regularized incomplete beta basics") {
  CHECK(regularized_incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3));
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  for (double x : {0.1, 0.37, 0.5, 0.81}) {
    const double lhs = regularized_incomplete_beta(2.5, 1.75, x);
    const double rhs = 1.0 - regularized_incomplete_beta(1.75, 2.5, 1.0 - x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("student-t quantiles match the published table to 1e-4") {
  // Rows: df 1, 2, 10, 30; columns: 0.90, 0.95, 0.975, 0.99.
  const struct {
    double df;
    double q[4];
  } table[] = {
      {1.0, {3.077683537, 6.313751515, 12.70620474, 31.82051595}},
      {2.0, {1.885618083, 2.919985580, 4.302652730, 6.964556734}},
      {10.0, {1.372183641, 1.812461123, 2.228138852, 2.763769458}},
      {30.0, {1.310415025, 1.697260887, 2.042272456, 2.457261542}},
  };
  const double ps[4] = {0.90, 0.95, 0.975, 0.99};
  for (const auto& row : table) {
    for (int i = 0; i < 4; ++i) {
      CHECK(std::fabs(student_t_quantile(ps[i], row.df) - row.q[i]) <= 1e-4);
      CHECK(std::fabs(student_t_cdf(row.q[i], row.df) - ps[i]) <= 1e-6);
    }
  }
  CHECK(student_t_cdf(0.0, 5.0) == doctest::Approx(0.5));
  CHECK(student_t_cdf(-2.0, 7.0) ==
        doctest::Approx(1.0 - student_t_cdf(2.0, 7.0)).epsilon(1e-12));
}

TEST_CASE("paired t-test reproduces the closed-form example") {
  // differences 1, 2, 3: mean 2, t = 2*sqrt(3), df = 2.
  const PairedTestResult r =
      paired_t_test({1.0, 2.0, 3.0}, {0.0, 0.0, 0.0}, 0.05);
  CHECK(r.mean_diff == doctest::Approx(2.0));
  CHECK(r.t_stat == doctest::Approx(3.464101615).epsilon(1e-9));
  CHECK(r.p_value == doctest::Approx(0.07417990).epsilon(1e-6));
  CHECK(r.lcl == doctest::Approx(-0.4841377118).epsilon(1e-8));
  CHECK(r.ucl == doctest::Approx(4.4841377118).epsilon(1e-8));
  CHECK_FALSE(r.reject);
  CHECK_FALSE(r.degenerate);
  CHECK(r.n == 3);
}

TEST_CASE("degenerate difference vectors") {
  const PairedTestResult same =
      paired_t_test({4.0, 4.0, 4.0}, {4.0, 4.0, 4.0}, 0.05);
  CHECK(same.degenerate);
  CHECK(same.mean_diff == 0.0);
  CHECK(same.p_value == 1.0);
  CHECK(same.lcl == 0.0);
  CHECK(same.ucl == 0.0);
  CHECK_FALSE(same.reject);

  const PairedTestResult shifted =
      paired_t_test({5.0, 5.0, 5.0}, {0.0, 0.0, 0.0}, 0.05);
  CHECK(shifted.degenerate);
  CHECK(shifted.mean_diff == 5.0);
  CHECK(shifted.p_value == 0.0);
  CHECK(shifted.reject);

  CHECK_THROWS_AS(paired_t_test({1.0}, {2.0}, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(paired_t_test({1.0, 2.0}, {2.0}, 0.05),
                  std::invalid_argument);
}

TEST_CASE("mirror symmetry of the paired test") {
  Rng rng(55);
  for (int iter = 0; iter < 20; ++iter) {
    std::vector<double> a(8), b(8);
    for (int i = 0; i < 8; ++i) {
      a[i] = rng.normal(10.0, 3.0);
      b[i] = rng.normal(9.0, 2.0);
    }
    const PairedTestResult ab = paired_t_test(a, b, 0.05);
    const PairedTestResult ba = paired_t_test(b, a, 0.05);
    CHECK(ab.mean_diff == doctest::Approx(-ba.mean_diff));
    CHECK(ab.t_stat == doctest::Approx(-ba.t_stat));
    CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
    CHECK(ab.lcl == doctest::Approx(-ba.ucl).epsilon(1e-12));
    CHECK(ab.ucl == doctest::Approx(-ba.lcl).epsilon(1e-12));
  }
}

TEST_CASE("confidence interval contains the mean and shrinks with n") {
  Rng rng(66);
  auto width_at = [&](int n) {
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = rng.normal(5.0, 1.0);
      b[i] = rng.normal(4.0, 1.0);
    }
    const PairedTestResult r = paired_t_test(a, b, 0.05);
    CHECK(r.lcl <= r.mean_diff);
    CHECK(r.mean_diff <= r.ucl);
    return r.ucl - r.lcl;
  };
  double wide = 0.0, narrow = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    wide += width_at(10);
    narrow += width_at(250);
  }
  CHECK(narrow < wide);
}

TEST_CASE("boxplot summary follows the 1.5 IQR convention") {
  const BoxplotSummary s = boxplot_summary({1.0, 2.0, 3.0, 4.0, 100.0});
  CHECK(s.q1 == doctest::Approx(2.0));
  CHECK(s.median == doctest::Approx(3.0));
  CHECK(s.q3 == doctest::Approx(4.0));
  CHECK(s.lower_whisker == doctest::Approx(1.0));
  CHECK(s.upper_whisker == doctest::Approx(4.0));
  REQUIRE(s.outliers.size() == 1);
  CHECK(s.outliers[0] == doctest::Approx(100.0));

  const BoxplotSummary single = boxplot_summary({7.0});
  CHECK(single.q1 == 7.0);
  CHECK(single.median == 7.0);
  CHECK(single.q3 == 7.0);
  CHECK(single.outliers.empty());

  const BoxplotSummary four = boxplot_summary({1.0, 2.0, 3.0, 4.0});
  CHECK(four.median == doctest::Approx(2.5));
  CHECK(four.q1 == doctest::Approx(1.75));
  CHECK(four.q3 == doctest::Approx(3.25));

  CHECK_THROWS_AS(boxplot_summary({}), std::invalid_argument);
}

TEST_CASE("quartile ordering invariant") {
  Rng rng(77);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<double> data(rng.uniform_int(1, 40));
    for (double& v : data) v = rng.normal(0.0, 10.0);
    const BoxplotSummary s = boxplot_summary(data);
    CHECK(s.q1 <= s.median);
    CHECK(s.median <= s.q3);
    CHECK(s.lower_whisker <= s.q1);
    CHECK(s.q3 <= s.upper_whisker);
    for (double o : s.outliers) {
      const bool outside = o < s.lower_whisker || o > s.upper_whisker;
      CHECK(outside);
    }
  }
}
