#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mcbench/metrics.hpp"
#include "mcbench/solver.hpp"
#include "mcbench/stats.hpp"

namespace mcbench {

// Batch comparison of pricing rules over a set of instances, following the
// experiment protocol: solve every instance under every rule, drop
// instances whose solves did not finish inside the gap tolerance or whose
// prices hit a cap, then run one paired t-test per (criterion, rule pair).
struct ExperimentConfig {
  std::vector<std::pair<std::string, Instance>> instances;  // (id, instance)
  std::vector<Rule> rules;  // at least two for the comparison table
  SolveParams params;
  double alpha = 0.05;
  int workers = 1;
};

struct HypothesisRow {
  std::string criterion;
  std::string hypothesis;  // e.g. "H12" for rules[0] vs rules[1]
  PairedTestResult test;
  BoxplotSummary box;  // distribution of the per-instance differences
};

struct InstanceOutcome {
  std::string id;
  std::vector<Solution> solutions;  // aligned with rules
  std::vector<Measures> measures;
  bool kept = false;
  bool excluded_status = false;  // some solve missed the gap tolerance
  bool excluded_cap = false;     // some solution had a cap-binding price
};

struct ExperimentResult {
  std::vector<Rule> rules;
  std::vector<InstanceOutcome> outcomes;  // ordered by instance id
  int total = 0;
  int kept = 0;
  int excluded_status = 0;
  int excluded_cap = 0;
  std::vector<HypothesisRow> table;
  // Fraction of kept instances whose R1 solution has no PAB and no PRB;
  // negative when R1 was not part of the run.
  double paradox_free_fraction_r1 = -1.0;
};

// Criteria reported in the comparison table: every scalar measure plus the
// composite rows pab_plus_prb, tl_plus_tlp and max_price_diff.
double criterion_value(const std::string& criterion, const Measures& m);
const std::vector<std::string>& criteria_names();

ExperimentResult run_experiment(const ExperimentConfig& config);

std::string experiment_report_json(const ExperimentResult& result);
std::string experiment_table_csv(const ExperimentResult& result);
std::string experiment_instances_csv(const ExperimentResult& result);

// Writes report.json, report.csv and per_instance.csv into out_dir.
void write_experiment_files(const ExperimentResult& result,
                            const std::string& out_dir);

}  // namespace mcbench
