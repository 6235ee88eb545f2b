#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcbench/experiment.hpp"
#include "mcbench/metrics.hpp"
#include "mcbench/oracle.hpp"

namespace mcbench {

// Command implementations behind the `mcbench` executable. Each returns
// the process exit code so tests can drive them without spawning.
//
// Exit codes: 0 success (solve: Optimal/GapReached; oracle: match),
// 1 input/config error, 2 solve hit the time limit (oracle: mismatch),
// 3 infeasible instance, 4 compare had no instances left after filtering.

struct SolveCmdOptions {
  std::string instance_path;
  Rule rule = Rule::R1;
  SolveParams params;
  std::string out_path;  // empty = stdout
};
int cmd_solve(const SolveCmdOptions& options, std::ostream& out,
              std::ostream& err);

struct GenerateCmdOptions {
  std::string profile;
  std::vector<uint64_t> seeds;
  double downscale_factor = 1.0;
  std::string out_dir = ".";
};
int cmd_generate(const GenerateCmdOptions& options, std::ostream& out,
                 std::ostream& err);

struct OracleCmdOptions {
  std::string instance_path;
  Rule rule = Rule::R1;
  int cap = kDefaultOracleCap;
  double time_limit_s = 120.0;
};
int cmd_oracle(const OracleCmdOptions& options, std::ostream& out,
               std::ostream& err);

struct CompareCmdOptions {
  std::vector<std::string> instance_paths;  // either files...
  std::string profile;                      // ...or generated on the fly
  std::vector<uint64_t> seeds;
  double downscale_factor = 1.0;
  std::vector<Rule> rules;
  SolveParams params;
  double alpha = 0.05;
  int workers = 1;
  std::string out_dir = "compare_out";
};
int cmd_compare(const CompareCmdOptions& options, std::ostream& out,
                std::ostream& err);

// JSON report for one solved instance (solution + measures).
std::string solution_report_json(const std::string& instance_id,
                                 const Instance& instance,
                                 const Solution& solution);

// "1", "1..5" and "1,4,9" seed lists.
std::vector<uint64_t> parse_seed_spec(const std::string& spec);

// True when solver and oracle agree: same feasibility verdict, total
// surplus within 1e-6 relative, same assignment and block classification.
struct MatchVerdict {
  bool match = true;
  std::string detail;
};
MatchVerdict solutions_match(const Solution& a, const Solution& b);

}  // namespace mcbench
