#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mcbench/cli.hpp"
#include "mcbench/datagen.hpp"
#include "mcbench/json_io.hpp"
#include "support/analytic.hpp"

using namespace mcbench;
using namespace mcbench::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("mcbench_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string write_instance(const TempDir& dir, const Instance& inst,
                           const std::string& name) {
  const std::string p = dir.file(name);
  save_instance_file(inst, p);
  return p;
}

}  // namespace

TEST_CASE("cmd_solve reports the oracle values and exit codes") {
  TempDir dir;
  const std::string path = write_instance(dir, make_instance_c(), "c.json");

  SolveCmdOptions o;
  o.instance_path = path;
  o.rule = Rule::R1;
  o.params.absolute_gap = 0.0;
  std::ostringstream out, err;
  CHECK(cmd_solve(o, out, err) == 0);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc.at("status") == "Optimal");
  CHECK(doc.at("total_surplus").get<double>() == doctest::Approx(2800.0));
  CHECK(doc.at("rule") == "R1");
  CHECK(doc.at("measures").at("n_pab").get<int>() == 1);
  CHECK(doc.at("blocks")[0].at("accepted").get<bool>());

  SUBCASE("write to file") {
    o.out_path = dir.file("sol.json");
    std::ostringstream out2, err2;
    CHECK(cmd_solve(o, out2, err2) == 0);
    std::ifstream in(o.out_path);
    CHECK(in.good());
  }
}

TEST_CASE("cmd_solve diagnoses bad input") {
  TempDir dir;
  std::ostringstream out, err;
  SolveCmdOptions o;
  o.instance_path = dir.file("missing.json");
  CHECK(cmd_solve(o, out, err) == 1);
  CHECK(err.str().find("error") != std::string::npos);

  std::ofstream(dir.file("broken.json")) << "{not json";
  o.instance_path = dir.file("broken.json");
  std::ostringstream out2, err2;
  CHECK(cmd_solve(o, out2, err2) == 1);

  // structurally fine JSON that violates the sign conventions
  std::ofstream(dir.file("invalid.json"))
      << R"({"periods":[0],"p_min":0,"p_max":10,"hourly":)"
      << R"([{"period":0,"direction":"supply","p0":1,"p1":2,"q":5}],)"
      << R"("blocks":[]})";
  o.instance_path = dir.file("invalid.json");
  std::ostringstream out3, err3;
  CHECK(cmd_solve(o, out3, err3) == 1);
  CHECK(err3.str().find("supply quantity must be <= 0") != std::string::npos);
}

TEST_CASE("cmd_solve exit code 3 on infeasible rule") {
  TempDir dir;
  Instance inst = make_instance_a();
  BlockBid b;
  b.id = "huge";
  b.price = 30.0;
  b.quantities[0] = -200.0;
  inst.blocks.push_back(b);
  const std::string path = write_instance(dir, inst, "infeasible.json");
  SolveCmdOptions o;
  o.instance_path = path;
  o.rule = Rule::R3;
  std::ostringstream out, err;
  CHECK(cmd_solve(o, out, err) == 3);
}

TEST_CASE("cmd_generate writes deterministic files") {
  TempDir dir;
  GenerateCmdOptions o;
  o.profile = "TR-2015";
  o.seeds = {1, 2, 3};
  o.downscale_factor = 40.0;
  o.out_dir = dir.file("gen");
  std::ostringstream out, err;
  REQUIRE(cmd_generate(o, out, err) == 0);

  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(o.out_dir))
    files.push_back(e.path().filename().string());
  CHECK(files.size() == 3);

  auto read = [&](const std::string& n) {
    std::ifstream in(fs::path(o.out_dir) / n);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const std::string first = read("mcbench_TR-2015-ds40_s1.json");
  CHECK_FALSE(first.empty());

  std::ostringstream out2, err2;
  REQUIRE(cmd_generate(o, out2, err2) == 0);  // overwrite identically
  CHECK(read("mcbench_TR-2015-ds40_s1.json") == first);

  SUBCASE("unknown profile fails") {
    GenerateCmdOptions bad = o;
    bad.profile = "TR-1850";
    std::ostringstream out3, err3;
    CHECK(cmd_generate(bad, out3, err3) == 1);
  }
}

TEST_CASE("cmd_oracle verdicts") {
  TempDir dir;
  const std::string path = write_instance(dir, make_instance_c(), "c.json");
  for (Rule rule : {Rule::R1, Rule::R2, Rule::R3}) {
    OracleCmdOptions o;
    o.instance_path = path;
    o.rule = rule;
    std::ostringstream out, err;
    CHECK(cmd_oracle(o, out, err) == 0);
    CHECK(out.str().find("verdict: match") != std::string::npos);
  }

  SUBCASE("block count over the cap") {
    Instance many = make_instance_a();
    for (int i = 0; i < 20; ++i) {
      BlockBid b;
      b.id = "b" + std::to_string(i);
      b.price = 30.0;
      b.quantities[0] = -1.0;
      many.blocks.push_back(b);
    }
    const std::string mp = write_instance(dir, many, "many.json");
    OracleCmdOptions o;
    o.instance_path = mp;
    std::ostringstream out, err;
    CHECK(cmd_oracle(o, out, err) == 1);
  }

  SUBCASE("no blocks matches trivially") {
    const std::string ap = write_instance(dir, make_instance_a(), "a.json");
    OracleCmdOptions o;
    o.instance_path = ap;
    std::ostringstream out, err;
    CHECK(cmd_oracle(o, out, err) == 0);
  }
}

TEST_CASE("cmd_compare config validation and outputs") {
  TempDir dir;
  CompareCmdOptions o;
  o.profile = "TR-2015";
  o.seeds = parse_seed_spec("1..10");
  o.downscale_factor = 40.0;
  o.rules = {Rule::R1, Rule::R2, Rule::R3};
  o.params.absolute_gap = 0.0;
  o.params.time_limit_s = 60.0;
  o.out_dir = dir.file("cmp");

  SUBCASE("fewer than two rules is a config error") {
    CompareCmdOptions bad = o;
    bad.rules = {Rule::R1};
    std::ostringstream out, err;
    CHECK(cmd_compare(bad, out, err) == 1);
  }

  std::ostringstream out, err;
  REQUIRE(cmd_compare(o, out, err) == 0);
  CHECK(out.str().find("kept") != std::string::npos);

  const auto report = nlohmann::json::parse(
      std::ifstream(fs::path(o.out_dir) / "report.json"));
  CHECK(report.at("instances_total") == 10);
  const int kept = report.at("instances_kept").get<int>();
  CHECK(kept >= 2);
  bool saw_ts_h12 = false;
  for (const auto& row : report.at("table")) {
    if (row.at("criterion") == "ts" &&
        (row.at("hypothesis") == "H12" || row.at("hypothesis") == "H13")) {
      saw_ts_h12 = true;
      CHECK(row.at("mean_diff").get<double>() >= -1e-9);
    }
  }
  CHECK(saw_ts_h12);

  // exactly one CSV row per kept instance and rule, plus the header
  std::ifstream csv(fs::path(o.out_dir) / "per_instance.csv");
  int lines = 0;
  std::string line;
  while (std::getline(csv, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 1 + kept * 3);
}

TEST_CASE("identical instances compared under one rule pair give zero diffs") {
  TempDir dir;
  const std::string p1 = write_instance(dir, make_instance_c(), "c1.json");
  const std::string p2 = write_instance(dir, make_instance_c(), "c2.json");
  CompareCmdOptions o;
  o.instance_paths = {p1, p2};
  o.rules = {Rule::R1, Rule::R1};
  o.params.absolute_gap = 0.0;
  o.out_dir = dir.file("out");
  std::ostringstream out, err;
  REQUIRE(cmd_compare(o, out, err) == 0);
  const auto report = nlohmann::json::parse(
      std::ifstream(fs::path(o.out_dir) / "report.json"));
  for (const auto& row : report.at("table")) {
    CHECK(row.at("mean_diff").get<double>() == 0.0);
    CHECK(row.at("degenerate").get<bool>());
  }
}

TEST_CASE("worker count does not change the report") {
  TempDir dir;
  CompareCmdOptions o;
  o.profile = "TR-2015";
  o.seeds = parse_seed_spec("1..8");
  o.downscale_factor = 40.0;
  o.rules = {Rule::R1, Rule::R2};
  o.params.absolute_gap = 0.0;
  o.out_dir = dir.file("w1");
  std::ostringstream out1, err1;
  REQUIRE(cmd_compare(o, out1, err1) == 0);
  o.workers = 3;
  o.out_dir = dir.file("w3");
  std::ostringstream out3, err3;
  REQUIRE(cmd_compare(o, out3, err3) == 0);
  auto slurp = [](const std::string& p) {
    std::ostringstream buf;
    buf << std::ifstream(p).rdbuf();
    return buf.str();
  };
  CHECK(slurp(dir.file("w1") + "/report.json") ==
        slurp(dir.file("w3") + "/report.json"));
  CHECK(slurp(dir.file("w1") + "/report.csv") ==
        slurp(dir.file("w3") + "/report.csv"));
}

TEST_CASE("seed spec parsing") {
  CHECK(parse_seed_spec("5") == std::vector<uint64_t>{5});
  CHECK(parse_seed_spec("1..4") == std::vector<uint64_t>{1, 2, 3, 4});
  CHECK(parse_seed_spec("2,9,4") == std::vector<uint64_t>{2, 9, 4});
  CHECK(parse_seed_spec("1..2,7") == std::vector<uint64_t>{1, 2, 7});
}
