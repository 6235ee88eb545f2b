#include "mcbench/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mcbench/datagen.hpp"
#include "mcbench/json_io.hpp"
#include "mcbench/validate.hpp"

namespace mcbench {

using nlohmann::json;

namespace {

const char* to_string(Moneyness m) {
  switch (m) {
    case Moneyness::In: return "in";
    case Moneyness::Out: return "out";
    case Moneyness::At: return "at";
  }
  return "?";
}

const char* to_string(BlockClass c) {
  switch (c) {
    case BlockClass::Normal: return "normal";
    case BlockClass::Pab: return "PAB";
    case BlockClass::Prb: return "PRB";
  }
  return "?";
}

// Loads and validates; returns nullopt after printing diagnostics.
std::optional<Instance> load_checked(const std::string& path,
                                     std::ostream& err) {
  Instance inst;
  try {
    inst = load_instance_file(path);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
  const std::vector<Violation> violations = validate_instance(inst);
  if (!violations.empty()) {
    err << "error: invalid instance " << path << "\n";
    for (const Violation& v : violations)
      err << "  " << v.where << ": " << v.message << "\n";
    return std::nullopt;
  }
  return inst;
}

std::string instance_file_name(const std::string& profile_name,
                               uint64_t seed) {
  return "mcbench_" + profile_name + "_s" + std::to_string(seed) + ".json";
}

}  // namespace

std::string solution_report_json(const std::string& instance_id,
                                 const Instance& inst, const Solution& sol) {
  json doc;
  doc["instance_id"] = instance_id;
  doc["rule"] = to_string(sol.rule);
  doc["status"] = to_string(sol.status);
  doc["nodes_explored"] = sol.nodes_explored;
  doc["wall_time_s"] = sol.wall_time_s;
  if (!sol.has_incumbent) {
    doc["total_surplus"] = nullptr;
    return doc.dump(2) + "\n";
  }
  doc["total_surplus"] = sol.total_surplus;
  doc["bound"] = sol.bound;
  doc["gap"] = sol.gap;
  doc["cap_binding"] = sol.cap_binding;
  doc["prices"] = sol.prices;
  json blocks = json::array();
  for (const BlockOutcome& b : sol.blocks) {
    blocks.push_back({{"id", b.id},
                      {"accepted", b.accepted},
                      {"surplus", b.surplus},
                      {"class", to_string(b.cls)},
                      {"moneyness", to_string(b.moneyness)}});
  }
  doc["blocks"] = std::move(blocks);
  const Measures m = compute_measures(inst, sol);
  doc["measures"] = {{"ts", m.ts},
                     {"mcp", m.mcp},
                     {"n_pab", m.n_pab},
                     {"n_prb", m.n_prb},
                     {"tl", m.tl},
                     {"tlp", m.tlp},
                     {"mul", m.mul},
                     {"mulp", m.mulp},
                     {"side_payment", m.side_payment},
                     {"mul_literal", m.mul_literal},
                     {"mulp_literal", m.mulp_literal},
                     {"max_price_diff", m.max_price_diff()}};
  return doc.dump(2) + "\n";
}

int cmd_solve(const SolveCmdOptions& options, std::ostream& out,
              std::ostream& err) {
  auto inst = load_checked(options.instance_path, err);
  if (!inst) return 1;
  const Solution sol = solve(*inst, options.rule, options.params);
  const std::string id =
      std::filesystem::path(options.instance_path).stem().string();
  const std::string report = solution_report_json(id, *inst, sol);
  if (options.out_path.empty()) {
    out << report;
  } else {
    std::ofstream f(options.out_path);
    if (!f) {
      err << "error: cannot write " << options.out_path << "\n";
      return 1;
    }
    f << report;
  }
  switch (sol.status) {
    case SolveStatus::Optimal:
    case SolveStatus::GapReached: return 0;
    case SolveStatus::TimeLimit: return 2;
    case SolveStatus::Infeasible: return 3;
  }
  return 1;
}

int cmd_generate(const GenerateCmdOptions& options, std::ostream& out,
                 std::ostream& err) {
  auto profile = find_profile(options.profile);
  if (!profile) {
    err << "error: unknown profile '" << options.profile << "'\n";
    return 1;
  }
  GeneratorProfile p = *profile;
  if (options.downscale_factor != 1.0)
    p = downscale(p, options.downscale_factor);
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  try {
    for (uint64_t seed : options.seeds) {
      const Instance inst = generate(p, seed);
      const std::string path =
          options.out_dir + "/" + instance_file_name(p.name, seed);
      save_instance_file(inst, path);
      out << path << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

MatchVerdict solutions_match(const Solution& a, const Solution& b) {
  MatchVerdict v;
  if (a.has_incumbent != b.has_incumbent) {
    v.match = false;
    v.detail = "feasibility verdicts differ";
    return v;
  }
  if (!a.has_incumbent) return v;
  const double tol = 1e-6 * std::max(1.0, std::fabs(a.total_surplus));
  if (std::fabs(a.total_surplus - b.total_surplus) > tol) {
    std::ostringstream os;
    os.precision(15);
    os << "total surplus differs: " << a.total_surplus << " vs "
       << b.total_surplus;
    v.match = false;
    v.detail = os.str();
    return v;
  }
  if (!(a.assignment == b.assignment)) {
    v.match = false;
    v.detail = "assignments differ";
    return v;
  }
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    if (a.blocks[i].cls != b.blocks[i].cls) {
      v.match = false;
      v.detail = "classification differs for block " + a.blocks[i].id;
      return v;
    }
  }
  return v;
}

int cmd_oracle(const OracleCmdOptions& options, std::ostream& out,
               std::ostream& err) {
  auto inst = load_checked(options.instance_path, err);
  if (!inst) return 1;

  Solution reference;
  try {
    reference = enumerate_assignments(*inst, options.rule, options.cap);
  } catch (const OracleCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  SolveParams params;
  params.absolute_gap = 0.0;  // oracle equivalence is an exact-solve claim
  params.time_limit_s = options.time_limit_s;
  const Solution searched = solve(*inst, options.rule, params);

  const std::string id =
      std::filesystem::path(options.instance_path).stem().string();
  out << "oracle:  " << to_string(reference.status);
  if (reference.has_incumbent) out << " ts=" << reference.total_surplus;
  out << " (" << reference.nodes_explored << " assignments)\n";
  out << "solver:  " << to_string(searched.status);
  if (searched.has_incumbent) out << " ts=" << searched.total_surplus;
  out << " (" << searched.nodes_explored << " nodes)\n";

  const MatchVerdict verdict = solutions_match(reference, searched);
  if (verdict.match) {
    out << "verdict: match (" << id << ", " << to_string(options.rule)
        << ")\n";
    return 0;
  }
  out << "verdict: MISMATCH - " << verdict.detail << "\n";
  return 2;
}

int cmd_compare(const CompareCmdOptions& options, std::ostream& out,
                std::ostream& err) {
  if (options.rules.size() < 2) {
    err << "error: compare needs at least two rules\n";
    return 1;
  }
  ExperimentConfig config;
  config.rules = options.rules;
  config.params = options.params;
  config.alpha = options.alpha;
  config.workers = options.workers;

  if (!options.profile.empty()) {
    if (options.seeds.empty()) {
      err << "error: --profile needs --seeds\n";
      return 1;
    }
    auto profile = find_profile(options.profile);
    if (!profile) {
      err << "error: unknown profile '" << options.profile << "'\n";
      return 1;
    }
    GeneratorProfile p = *profile;
    if (options.downscale_factor != 1.0)
      p = downscale(p, options.downscale_factor);
    try {
      for (uint64_t seed : options.seeds)
        config.instances.emplace_back(p.name + "_s" + std::to_string(seed),
                                      generate(p, seed));
    } catch (const ProfileError& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  } else {
    for (const std::string& path : options.instance_paths) {
      auto inst = load_checked(path, err);
      if (!inst) return 1;
      config.instances.emplace_back(
          std::filesystem::path(path).stem().string(), std::move(*inst));
    }
  }
  if (config.instances.size() < 2) {
    err << "error: compare needs at least two instances\n";
    return 1;
  }

  const ExperimentResult result = run_experiment(config);
  out << "solved " << result.total << " instances under "
      << config.rules.size() << " rules; kept " << result.kept << " out of "
      << result.total << " (" << result.excluded_status
      << " not solved to the gap tolerance, " << result.excluded_cap
      << " cap-binding)\n";
  if (result.paradox_free_fraction_r1 >= 0.0)
    out << "paradox-free R1 fraction: " << result.paradox_free_fraction_r1
        << "\n";
  if (result.kept == 0) {
    err << "error: every instance was excluded\n";
    return 4;
  }
  write_experiment_files(result, options.out_dir);
  out << "wrote " << options.out_dir << "/report.json, report.csv, "
      << "per_instance.csv\n";
  return 0;
}

std::vector<uint64_t> parse_seed_spec(const std::string& spec) {
  std::vector<uint64_t> seeds;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    const size_t dots = part.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(std::stoull(part));
    } else {
      const uint64_t lo = std::stoull(part.substr(0, dots));
      const uint64_t hi = std::stoull(part.substr(dots + 2));
      for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    }
  }
  return seeds;
}

}  // namespace mcbench
