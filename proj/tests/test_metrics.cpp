#include <doctest.h>

#include "mcbench/metrics.hpp"
#include "mcbench/oracle.hpp"
#include "support/analytic.hpp"
#include "support/random_market.hpp"

using namespace mcbench;
using namespace mcbench::testing;

TEST_CASE("instance C measures under each rule") {
  const Instance c = make_instance_c();

  const Solution r3 = enumerate_assignments(c, Rule::R3);
  const Measures m3 = compute_measures(c, r3);
  CHECK(m3.ts == doctest::Approx(2800.0));
  CHECK(m3.mcp == doctest::Approx(20.0));
  CHECK(m3.n_pab == 1);
  CHECK(m3.n_prb == 0);
  CHECK(m3.tl == doctest::Approx(600.0));
  CHECK(m3.tlp == 0.0);
  CHECK(m3.mul == doctest::Approx(10.0));
  CHECK(m3.mulp == 0.0);
  CHECK(m3.side_payment == doctest::Approx(600.0));
  // single-period block: the literal variant coincides
  CHECK(m3.mul_literal == doctest::Approx(10.0));

  const Solution r2 = enumerate_assignments(c, Rule::R2);
  const Measures m2 = compute_measures(c, r2);
  CHECK(m2.ts == doctest::Approx(2500.0));
  CHECK(m2.mcp == doctest::Approx(50.0));
  CHECK(m2.n_pab == 0);
  CHECK(m2.n_prb == 1);
  CHECK(m2.tl == 0.0);
  CHECK(m2.tlp == doctest::Approx(1200.0));
  CHECK(m2.mul == 0.0);
  CHECK(m2.mulp == doctest::Approx(20.0));
  CHECK(m2.side_payment == 0.0);
  CHECK(m2.max_price_diff() == doctest::Approx(20.0));
}

TEST_CASE("blockless market has zero paradox measures") {
  const Instance a = make_instance_a();
  const Solution sol = enumerate_assignments(a, Rule::R1);
  const Measures m = compute_measures(a, sol);
  CHECK(m.ts == doctest::Approx(2500.0));
  CHECK(m.mcp == doctest::Approx(50.0));
  CHECK(m.n_pab == 0);
  CHECK(m.n_prb == 0);
  CHECK(m.tl == 0.0);
  CHECK(m.tlp == 0.0);
  CHECK(m.mul == 0.0);
  CHECK(m.mulp == 0.0);
}

TEST_CASE("per-unit and literal deviations differ on multi-period blocks") {
  // Rejected in-the-money block over two periods with asymmetric volumes:
  // surplus = -10(30-20) - 20(30-40) = 100, per-unit 100/30, literal
  // |(30-20) + (30-40)| = 0.
  Instance inst = Instance::empty(2, {0.0, 100.0});
  BlockBid b;
  b.id = "b";
  b.price = 30.0;
  b.quantities[0] = -10.0;
  b.quantities[1] = -20.0;
  inst.blocks.push_back(b);

  Solution sol;
  sol.rule = Rule::R1;
  sol.status = SolveStatus::Optimal;
  sol.has_incumbent = true;
  sol.prices = {20.0, 40.0};
  sol.assignment = Assignment::all(1, false);
  sol.total_surplus = 0.0;
  sol.blocks = {{std::string("b"), false, 100.0, BlockClass::Prb,
                 Moneyness::In}};
  const Measures m = compute_measures(inst, sol);
  CHECK(m.n_prb == 1);
  CHECK(m.tlp == doctest::Approx(100.0));
  CHECK(m.mulp == doctest::Approx(100.0 / 30.0));
  CHECK(m.mulp_literal == doctest::Approx(0.0));
}

TEST_CASE("measure invariants hold on random solved markets") {
  Rng rng(444);
  RandomMarketOptions opt;
  opt.periods = 2;
  opt.blocks = 4;
  for (int iter = 0; iter < 30; ++iter) {
    const Instance inst = random_market(rng, opt);
    for (Rule rule : {Rule::R1, Rule::R2, Rule::R3}) {
      const Solution sol = enumerate_assignments(inst, rule);
      if (!sol.has_incumbent) continue;
      const Measures m = compute_measures(inst, sol);
      CHECK(m.tl >= 0.0);
      CHECK(m.tlp >= 0.0);
      CHECK(m.side_payment == m.tl);
      if (m.n_pab == 0) {
        CHECK(m.tl == 0.0);
        CHECK(m.mul == 0.0);
      }
      if (m.n_prb == 0) {
        CHECK(m.tlp == 0.0);
        CHECK(m.mulp == 0.0);
      }
      if (rule == Rule::R2) CHECK(m.n_pab == 0);
      if (rule == Rule::R3) CHECK(m.n_prb == 0);
    }
  }
}

TEST_CASE("csv row has the pinned column order") {
  CHECK(measures_csv_header() ==
        "instance_id,rule,ts,mcp,n_pab,n_prb,tl,tlp,mul,mulp,side_payment,"
        "status,gap,wall_time");
  const Instance c = make_instance_c();
  const Solution sol = enumerate_assignments(c, Rule::R2);
  const Measures m = compute_measures(c, sol);
  const std::string row = measures_csv_row("c", sol, m);
  CHECK(row.substr(0, 10) == std::string("c,R2,2500,"));
}
