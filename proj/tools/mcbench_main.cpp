// mcbench: day-ahead auction clearing under three pricing rule sets.
//
//   mcbench solve INSTANCE --rule R2 [--gap 0] [--time-limit 60] [--out f]
//   mcbench generate --profile TR-2015 --seeds 1..100 [--downscale 10] --out d
//   mcbench oracle INSTANCE --rule R3 [--cap 16]
//   mcbench compare (--profile NAME --seeds A..B | INSTANCES...)
//            --rules R1,R2,R3 [--alpha 0.05] [--workers N] --out d

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcbench/cli.hpp"

namespace {

mcbench::Rule parse_rule_or_exit(const std::string& s) {
  auto rule = mcbench::rule_from_string(s);
  if (!rule) {
    std::cerr << "error: unknown rule '" << s << "' (use R1, R2 or R3)\n";
    std::exit(1);
  }
  return *rule;
}

std::vector<mcbench::Rule> parse_rules_or_exit(const std::string& spec) {
  std::vector<mcbench::Rule> rules;
  std::string part;
  std::stringstream ss(spec);
  while (std::getline(ss, part, ','))
    if (!part.empty()) rules.push_back(parse_rule_or_exit(part));
  return rules;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"day-ahead electricity auction clearing benchmark"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global flags after the subcommand too

  double gap = 100.0;
  double time_limit = 120.0;
  double alpha = 0.05;
  int workers = 1;
  uint64_t seed = 0;
  std::string global_out;
  app.add_option("--gap", gap, "absolute optimality gap tolerance")
      ->capture_default_str();
  app.add_option("--time-limit", time_limit, "solve time limit in seconds")
      ->capture_default_str();
  app.add_option("--alpha", alpha, "type-1 error for the paired tests")
      ->capture_default_str();
  app.add_option("--seed", seed, "default seed when --seeds is not given")
      ->capture_default_str();
  app.add_option("--workers", workers, "parallel workers for batch solves")
      ->capture_default_str();
  app.add_option("--out", global_out,
                 "default output path/directory for the subcommand");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance file");
  std::string solve_instance, solve_rule = "R1", solve_out;
  solve_cmd->add_option("instance", solve_instance, "instance JSON file")
      ->required();
  solve_cmd->add_option("--rule", solve_rule, "pricing rule (R1|R2|R3)");
  solve_cmd->add_option("--out", solve_out, "write the JSON report here");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "write synthetic instances");
  std::string gen_profile, gen_seeds, gen_out;
  double gen_downscale = 1.0;
  gen_cmd->add_option("--profile", gen_profile, "built-in name or JSON file")
      ->required();
  gen_cmd->add_option("--seeds", gen_seeds, "e.g. 7 or 1..100 or 1,5,9");
  gen_cmd->add_option("--downscale", gen_downscale,
                      "divide counts and volumes by this factor");
  gen_cmd->add_option("--out", gen_out, "output directory");

  // oracle
  auto* oracle_cmd =
      app.add_subcommand("oracle", "cross-check solver vs enumeration");
  std::string oracle_instance, oracle_rule = "R1";
  int oracle_cap = mcbench::kDefaultOracleCap;
  oracle_cmd->add_option("instance", oracle_instance, "instance JSON file")
      ->required();
  oracle_cmd->add_option("--rule", oracle_rule, "pricing rule (R1|R2|R3)");
  oracle_cmd->add_option("--cap", oracle_cap, "max block count to enumerate");

  // compare
  auto* cmp_cmd =
      app.add_subcommand("compare", "batch comparison across rules");
  std::vector<std::string> cmp_instances;
  std::string cmp_profile, cmp_seeds, cmp_rules = "R1,R2,R3", cmp_out;
  double cmp_downscale = 1.0;
  cmp_cmd->add_option("instances", cmp_instances, "instance JSON files");
  cmp_cmd->add_option("--profile", cmp_profile, "generate instead of files");
  cmp_cmd->add_option("--seeds", cmp_seeds, "seeds when --profile is used");
  cmp_cmd->add_option("--downscale", cmp_downscale, "profile downscale");
  cmp_cmd->add_option("--rules", cmp_rules, "comma list, e.g. R1,R2");
  cmp_cmd->add_option("--out", cmp_out, "report output directory");

  CLI11_PARSE(app, argc, argv);

  mcbench::SolveParams params;
  params.absolute_gap = gap;
  params.time_limit_s = time_limit;
  params.deterministic_seed = seed;

  try {
    if (solve_cmd->parsed()) {
      mcbench::SolveCmdOptions o;
      o.instance_path = solve_instance;
      o.rule = parse_rule_or_exit(solve_rule);
      o.params = params;
      o.out_path = solve_out.empty() ? global_out : solve_out;
      return mcbench::cmd_solve(o, std::cout, std::cerr);
    }
    if (gen_cmd->parsed()) {
      mcbench::GenerateCmdOptions o;
      o.profile = gen_profile;
      o.seeds = gen_seeds.empty()
                    ? std::vector<uint64_t>{seed}
                    : mcbench::parse_seed_spec(gen_seeds);
      o.downscale_factor = gen_downscale;
      o.out_dir = gen_out.empty() ? (global_out.empty() ? "." : global_out)
                                  : gen_out;
      return mcbench::cmd_generate(o, std::cout, std::cerr);
    }
    if (oracle_cmd->parsed()) {
      mcbench::OracleCmdOptions o;
      o.instance_path = oracle_instance;
      o.rule = parse_rule_or_exit(oracle_rule);
      o.cap = oracle_cap;
      o.time_limit_s = time_limit;
      return mcbench::cmd_oracle(o, std::cout, std::cerr);
    }
    if (cmp_cmd->parsed()) {
      mcbench::CompareCmdOptions o;
      o.instance_paths = cmp_instances;
      o.profile = cmp_profile;
      o.seeds = cmp_seeds.empty()
                    ? std::vector<uint64_t>{seed}
                    : mcbench::parse_seed_spec(cmp_seeds);
      o.downscale_factor = cmp_downscale;
      o.rules = parse_rules_or_exit(cmp_rules);
      o.params = params;
      o.alpha = alpha;
      o.workers = workers;
      o.out_dir = cmp_out.empty()
                      ? (global_out.empty() ? "compare_out" : global_out)
                      : cmp_out;
      return mcbench::cmd_compare(o, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
