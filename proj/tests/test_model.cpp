#include <doctest.h>

#include <algorithm>

#include "mcbench/json_io.hpp"
#include "mcbench/rng.hpp"
#include "mcbench/validate.hpp"
#include "support/analytic.hpp"
#include "support/random_market.hpp"

using namespace mcbench;
using namespace mcbench::testing;

TEST_CASE("instance A passes validation") {
  CHECK(validate_instance(make_instance_a()).empty());
  CHECK(validate_instance(make_instance_b()).empty());
  CHECK(validate_instance(make_instance_c()).empty());
}

TEST_CASE("sign conventions are enforced") {
  Instance inst = make_instance_a();
  inst.segments(0, Direction::Supply).push_back({10.0, 20.0, 10.0});
  auto violations = validate_instance(inst);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].message == "supply quantity must be <= 0");

  Instance inst2 = make_instance_a();
  inst2.segments(0, Direction::Demand).push_back({10.0, 20.0, 10.0});
  violations = validate_instance(inst2);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].message == "demand segment requires p1 <= p0");
}

TEST_CASE("degenerate and malformed blocks are reported") {
  Instance inst = make_instance_a();
  BlockBid b;
  b.id = "z";
  b.price = 50.0;
  b.quantities[0] = 0.0;
  inst.blocks.push_back(b);
  auto violations = validate_instance(inst);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].message == "block has no active period");

  SUBCASE("mixed signs") {
    Instance i2 = Instance::empty(2, {0.0, 100.0});
    BlockBid m;
    m.id = "m";
    m.price = 10.0;
    m.quantities[0] = -5.0;
    m.quantities[1] = 5.0;
    i2.blocks.push_back(m);
    bool found = false;
    for (const auto& v : validate_instance(i2))
      found |= v.message == "block quantities must share one sign";
    CHECK(found);
  }
  SUBCASE("non-consecutive periods") {
    Instance i2 = Instance::empty(3, {0.0, 100.0});
    BlockBid m;
    m.id = "m";
    m.price = 10.0;
    m.quantities[0] = -5.0;
    m.quantities[2] = -5.0;
    i2.blocks.push_back(m);
    bool found = false;
    for (const auto& v : validate_instance(i2))
      found |= v.message == "block active periods must be consecutive";
    CHECK(found);
  }
  SUBCASE("price outside bounds") {
    Instance i2 = make_instance_a();
    BlockBid m;
    m.id = "m";
    m.price = 120.0;
    m.quantities[0] = -5.0;
    i2.blocks.push_back(m);
    bool found = false;
    for (const auto& v : validate_instance(i2))
      found |= v.message == "block price must lie within [p_min, p_max]";
    CHECK(found);
  }
  SUBCASE("duplicate ids") {
    Instance i2 = make_instance_c();
    i2.blocks.push_back(i2.blocks[0]);
    bool found = false;
    for (const auto& v : validate_instance(i2))
      found |= v.message == "duplicate block id";
    CHECK(found);
  }
}

TEST_CASE("zero-quantity segments are accepted") {
  Instance inst = make_instance_a();
  inst.segments(0, Direction::Supply).push_back({5.0, 10.0, 0.0});
  CHECK(validate_instance(inst).empty());
}

TEST_CASE("validation is order-independent over segment lists") {
  Rng rng(7);
  RandomMarketOptions opt;
  opt.periods = 3;
  opt.blocks = 2;
  for (int iter = 0; iter < 30; ++iter) {
    Instance inst = random_market(rng, opt);
    // Break a couple of invariants on purpose.
    inst.segments(0, Direction::Supply).push_back({10.0, 20.0, 3.0});
    inst.segments(1, Direction::Demand).push_back({0.0, 50.0, 4.0});

    auto sort_messages = [](std::vector<Violation> v) {
      std::vector<std::string> out;
      for (auto& x : v) out.push_back(x.where + "|" + x.message);
      std::sort(out.begin(), out.end());
      return out;
    };
    const auto before = sort_messages(validate_instance(inst));

    Instance shuffled = inst;
    for (int t = 0; t < shuffled.num_periods(); ++t) {
      for (Direction d : {Direction::Supply, Direction::Demand}) {
        auto& segs = shuffled.segments(t, d);
        for (size_t i = segs.size(); i > 1; --i)
          std::swap(segs[i - 1],
                    segs[rng.uniform_int(0, static_cast<int>(i) - 1)]);
      }
    }
    CHECK(sort_messages(validate_instance(shuffled)) == before);
  }
}

TEST_CASE("JSON render/parse round-trip") {
  Rng rng(13);
  RandomMarketOptions opt;
  opt.periods = 4;
  opt.blocks = 3;
  for (int iter = 0; iter < 50; ++iter) {
    const Instance inst = random_market(rng, opt);
    const Instance back = parse_instance(render_instance(inst));
    CHECK(back == inst);
  }
  const Instance a = make_instance_c();
  CHECK(parse_instance(render_instance(a)) == a);
}

TEST_CASE("parser rejects malformed documents") {
  CHECK_THROWS_AS(parse_instance("not json"), ParseError);
  CHECK_THROWS_AS(parse_instance("[]"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"periods":[0]})"), ParseError);
  // unknown top-level field
  CHECK_THROWS_AS(
      parse_instance(
          R"({"periods":[0],"p_min":0,"p_max":1,"hourly":[],"blocks":[],"extra":1})"),
      ParseError);
  // unknown hourly field
  CHECK_THROWS_AS(
      parse_instance(
          R"({"periods":[0],"p_min":0,"p_max":1,"hourly":[{"period":0,"direction":"supply","p0":0,"p1":1,"q":-1,"x":2}],"blocks":[]})"),
      ParseError);
  // bad direction
  CHECK_THROWS_AS(
      parse_instance(
          R"({"periods":[0],"p_min":0,"p_max":1,"hourly":[{"period":0,"direction":"buy","p0":0,"p1":1,"q":-1}],"blocks":[]})"),
      ParseError);
  // non-numeric quantity key
  CHECK_THROWS_AS(
      parse_instance(
          R"({"periods":[0],"p_min":0,"p_max":1,"hourly":[],"blocks":[{"id":"b","price":1,"quantities":{"x":1}}]})"),
      ParseError);
}
