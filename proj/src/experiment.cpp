#include "mcbench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace mcbench {

using nlohmann::json;

const std::vector<std::string>& criteria_names() {
  static const std::vector<std::string> names = {
      "ts",           "mcp",          "n_pab",
      "n_prb",        "tl",           "tlp",
      "mul",          "mulp",         "side_payment",
      "pab_plus_prb", "tl_plus_tlp",  "max_price_diff"};
  return names;
}

double criterion_value(const std::string& criterion, const Measures& m) {
  if (criterion == "ts") return m.ts;
  if (criterion == "mcp") return m.mcp;
  if (criterion == "n_pab") return m.n_pab;
  if (criterion == "n_prb") return m.n_prb;
  if (criterion == "tl") return m.tl;
  if (criterion == "tlp") return m.tlp;
  if (criterion == "mul") return m.mul;
  if (criterion == "mulp") return m.mulp;
  if (criterion == "side_payment") return m.side_payment;
  if (criterion == "pab_plus_prb") return m.n_pab + m.n_prb;
  if (criterion == "tl_plus_tlp") return m.tl + m.tlp;
  if (criterion == "max_price_diff") return m.max_price_diff();
  throw std::invalid_argument("unknown criterion: " + criterion);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.rules.size() < 2)
    throw std::invalid_argument("comparison needs at least two rules");

  ExperimentResult result;
  result.rules = config.rules;
  result.total = static_cast<int>(config.instances.size());
  result.outcomes.resize(config.instances.size());

  // Solves are independent; run them across workers and assemble in input
  // order so reports stay deterministic.
  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= config.instances.size()) return;
      const auto& [id, inst] = config.instances[i];
      InstanceOutcome& out = result.outcomes[i];
      out.id = id;
      for (Rule rule : config.rules) {
        Solution sol = solve(inst, rule, config.params);
        out.measures.push_back(compute_measures(inst, sol));
        const bool solved = sol.status == SolveStatus::Optimal ||
                            sol.status == SolveStatus::GapReached;
        out.excluded_status |= !solved;
        out.excluded_cap |= sol.has_incumbent && sol.cap_binding;
        out.solutions.push_back(std::move(sol));
      }
      out.kept = !out.excluded_status && !out.excluded_cap;
    }
  };
  const int n_workers = std::max(1, config.workers);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  int r1_index = -1;
  for (size_t r = 0; r < config.rules.size(); ++r)
    if (config.rules[r] == Rule::R1) r1_index = static_cast<int>(r);

  int paradox_free = 0;
  for (const InstanceOutcome& out : result.outcomes) {
    if (out.excluded_status) ++result.excluded_status;
    else if (out.excluded_cap) ++result.excluded_cap;
    if (!out.kept) continue;
    ++result.kept;
    if (r1_index >= 0) {
      const Measures& m = out.measures[r1_index];
      paradox_free += m.n_pab + m.n_prb == 0;
    }
  }
  if (r1_index >= 0 && result.kept > 0)
    result.paradox_free_fraction_r1 =
        static_cast<double>(paradox_free) / result.kept;

  if (result.kept >= 2) {
    for (const std::string& criterion : criteria_names()) {
      for (size_t i = 0; i < config.rules.size(); ++i) {
        for (size_t j = i + 1; j < config.rules.size(); ++j) {
          std::vector<double> a, b;
          for (const InstanceOutcome& out : result.outcomes) {
            if (!out.kept) continue;
            a.push_back(criterion_value(criterion, out.measures[i]));
            b.push_back(criterion_value(criterion, out.measures[j]));
          }
          HypothesisRow row;
          row.criterion = criterion;
          row.hypothesis = std::string("H") +
                           std::to_string(static_cast<int>(config.rules[i]) + 1) +
                           std::to_string(static_cast<int>(config.rules[j]) + 1);
          row.test = paired_t_test(a, b, config.alpha);
          std::vector<double> diffs(a.size());
          for (size_t k = 0; k < a.size(); ++k) diffs[k] = a[k] - b[k];
          row.box = boxplot_summary(diffs);
          result.table.push_back(std::move(row));
        }
      }
    }
  }
  return result;
}

namespace {

json boxplot_json(const BoxplotSummary& b) {
  return {{"q1", b.q1},
          {"median", b.median},
          {"q3", b.q3},
          {"lower_whisker", b.lower_whisker},
          {"upper_whisker", b.upper_whisker},
          {"outliers", b.outliers}};
}

}  // namespace

std::string experiment_report_json(const ExperimentResult& result) {
  json doc;
  json rules = json::array();
  for (Rule r : result.rules) rules.push_back(to_string(r));
  doc["rules"] = std::move(rules);
  doc["instances_total"] = result.total;
  doc["instances_kept"] = result.kept;
  doc["excluded_not_optimal"] = result.excluded_status;
  doc["excluded_cap_binding"] = result.excluded_cap;
  if (result.paradox_free_fraction_r1 >= 0.0)
    doc["paradox_free_fraction_r1"] = result.paradox_free_fraction_r1;
  json table = json::array();
  for (const HypothesisRow& row : result.table) {
    table.push_back({{"criterion", row.criterion},
                     {"hypothesis", row.hypothesis},
                     {"mean_diff", row.test.mean_diff},
                     {"t_stat", row.test.t_stat},
                     {"p_value", row.test.p_value},
                     {"lcl", row.test.lcl},
                     {"ucl", row.test.ucl},
                     {"n", row.test.n},
                     {"reject", row.test.reject},
                     {"degenerate", row.test.degenerate},
                     {"boxplot", boxplot_json(row.box)}});
  }
  doc["table"] = std::move(table);
  return doc.dump(2) + "\n";
}

std::string experiment_table_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os.precision(12);
  os << "criterion,hypothesis,mean_diff,p_value,lcl,ucl\n";
  for (const HypothesisRow& row : result.table) {
    os << row.criterion << ',' << row.hypothesis << ',' << row.test.mean_diff
       << ',' << row.test.p_value << ',' << row.test.lcl << ','
       << row.test.ucl << '\n';
  }
  return os.str();
}

std::string experiment_instances_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << measures_csv_header() << '\n';
  for (const InstanceOutcome& out : result.outcomes) {
    if (!out.kept) continue;
    for (size_t r = 0; r < out.solutions.size(); ++r)
      os << measures_csv_row(out.id, out.solutions[r], out.measures[r])
         << '\n';
  }
  return os.str();
}

void write_experiment_files(const ExperimentResult& result,
                            const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ofstream(out_dir + "/report.json") << experiment_report_json(result);
  std::ofstream(out_dir + "/report.csv") << experiment_table_csv(result);
  std::ofstream(out_dir + "/per_instance.csv")
      << experiment_instances_csv(result);
}

}  // namespace mcbench
