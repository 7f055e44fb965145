// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: check, gen-tgc, export-prism, bench, dump-mdp.
// Exit codes: 0 = property holds, 1 = does not hold (or the incomplete
// search found no witness), 2 = error, 3 = timeout.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <pstctl/checker.hpp>
#include <pstctl/errors.hpp>
#include <pstctl/experiment.hpp>
#include <pstctl/parametric.hpp>
#include <pstctl/parser.hpp>
#include <pstctl/printer.hpp>
#include <pstctl/prism_export.hpp>
#include <pstctl/tgc.hpp>

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;
constexpr int kExitTimeout = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pstctl::Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pstctl::Error("cannot write '" + path + "'");
  out << text;
}

std::uint64_t state_cap_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("PSTCTL_STATE_CAP");
  if (!env || !*env) return fallback;
  return std::strtoull(env, nullptr, 10);
}

// accepts "2,3,5" and "2-5" (inclusive)
std::vector<std::uint32_t> parse_range(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto dash = item.find('-');
    if (dash != std::string::npos && dash > 0) {
      std::uint32_t lo = std::uint32_t(std::stoul(item.substr(0, dash)));
      std::uint32_t hi = std::uint32_t(std::stoul(item.substr(dash + 1)));
      for (std::uint32_t v = lo; v <= hi; ++v) out.push_back(v);
    } else if (!item.empty()) {
      out.push_back(std::uint32_t(std::stoul(item)));
    }
  }
  return out;
}

void print_warnings(const pstctl::Network& net) {
  for (const auto& d : pstctl::validate_all(net))
    if (d.severity == pstctl::Severity::Warning)
      std::cerr << "warning: " << d.element << ": " << d.message << "\n";
}

int cmd_check(const std::string& model_arg, const std::string& formula_arg,
              const std::string& mode_name, std::uint32_t grid, bool refine,
              const std::string& strategy_path, bool json, double timeout_sec) {
  using namespace pstctl;

  std::string model_text =
      std::filesystem::exists(model_arg) ? slurp(model_arg) : model_arg;
  std::string formula_text =
      std::filesystem::exists(formula_arg) ? slurp(formula_arg) : formula_arg;

  Network net = parse_model(model_text);
  print_warnings(net);

  CheckConfig cfg;
  cfg.mode = mode_name == "irp" ? SynthMode::Irp : SynthMode::IrP;
  cfg.grid_resolution = grid;
  cfg.refine = refine;
  cfg.state_cap = state_cap_from_env(cfg.state_cap);
  if (timeout_sec > 0)
    cfg.deadline = std::chrono::steady_clock::now() +
                   std::chrono::milliseconds(std::int64_t(timeout_sec * 1000));

  DigitalMdp mdp = digitize(net, cfg.state_cap);
  FormulaPtr formula = desugar(parse_formula(formula_text));

  if (!strategy_path.empty()) {
    if (formula->kind != FKind::Coalition)
      throw ContractError("--strategy needs a coalition formula at top level");
    StrategySpace space = strategy_space(net, formula->agents);
    JointStrategyIrP theta = parse_strategy(space, net, slurp(strategy_path));
    Verdict v = check_fixed_strategy(mdp, formula->agents, formula->lhs, theta, cfg);
    std::cout << (json ? verdict_json(v, space, net) : verdict_text(v, space, net)) << "\n";
    return v.holds ? kExitHolds : kExitFails;
  }

  EvalResult result = eval(mdp, formula, cfg);
  bool holds = result.holds_at_initial(mdp);
  if (json) {
    if (!result.verdicts.empty()) {
      const auto& [node, v] = result.verdicts.back();
      StrategySpace space = strategy_space(net, node->agents);
      std::cout << verdict_json(v, space, net) << "\n";
    } else {
      std::cout << "{\n  \"holds\": " << (holds ? "true" : "false") << "\n}\n";
    }
  } else {
    std::cout << "formula: " << print_formula(formula) << "\n";
    std::cout << "holds at initial state: " << (holds ? "true" : "false") << "\n";
    for (const auto& [node, v] : result.verdicts) {
      StrategySpace space = strategy_space(net, node->agents);
      std::cout << "-- " << print_formula(node) << "\n" << verdict_text(v, space, net);
    }
  }
  return holds ? kExitHolds : kExitFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"model checker for strategic time-bounded probabilistic properties"};
  app.require_subcommand(1);

  // check
  std::string model_arg, formula_arg, strategy_path;
  std::string mode_name = "irP";
  std::uint32_t grid = 10;
  bool refine = true, json = false;
  double timeout_sec = 0;
  auto* check = app.add_subcommand("check", "decide a formula on a model");
  check->add_option("model", model_arg, "model file or inline text")->required();
  check->add_option("formula", formula_arg, "formula file or inline text")->required();
  check->add_option("--mode", mode_name, "strategy class: irp or irP")
      ->check(CLI::IsMember({"irp", "irP"}));
  check->add_option("--grid", grid, "simplex grid resolution (irP mode)");
  check->add_flag("--refine,!--no-refine", refine, "local refinement of top grid candidates");
  check->add_option("--strategy", strategy_path, "check this fixed strategy instead of searching");
  check->add_flag("--json", json, "machine-readable verdict");
  check->add_option("--timeout", timeout_sec, "wall-clock budget in seconds");

  // gen-tgc
  std::uint32_t tgc_n = 2, tgc_T = 30;
  std::string model_out, formula_out;
  auto* gen = app.add_subcommand("gen-tgc", "generate the train-gate-controller benchmark");
  gen->add_option("--n", tgc_n, "number of trains")->required();
  gen->add_option("--T", tgc_T, "formula time bound");
  gen->add_option("--model-out", model_out, "write the model here (default: stdout)");
  gen->add_option("--formula-out", formula_out, "write the formula here");

  // export-prism
  std::string exp_model, exp_coalition = "C", exp_out, exp_strategy;
  auto* exp = app.add_subcommand("export-prism", "parametric PRISM-language export");
  exp->add_option("model", exp_model, "model file")->required();
  exp->add_option("--coalition", exp_coalition, "comma-separated coalition agents");
  exp->add_option("--strategy", exp_strategy, "specialize parameters to this strategy");
  exp->add_option("-o,--out", exp_out, "output path (default: stdout)");

  // bench
  std::string bench_n = "2-3", bench_T = "5,30", bench_out;
  std::string bench_mode = "irP";
  std::uint32_t bench_grid = 10;
  unsigned bench_jobs = 1;
  double bench_timeout = 600;
  auto* bench = app.add_subcommand("bench", "run the benchmark table");
  bench->add_option("--n", bench_n, "train counts, e.g. 2,3 or 2-4");
  bench->add_option("--T", bench_T, "time bounds, e.g. 5,30,100");
  bench->add_option("--mode", bench_mode, "irp or irP")->check(CLI::IsMember({"irp", "irP"}));
  bench->add_option("--grid", bench_grid, "grid resolution");
  bench->add_option("--jobs", bench_jobs, "parallel cells");
  bench->add_option("--timeout", bench_timeout, "per-cell timeout in seconds");
  bench->add_option("-o,--out", bench_out, "CSV path (default: stdout)");

  // dump-mdp
  std::string dump_model, dump_out;
  auto* dump = app.add_subcommand("dump-mdp", "dump the digital MDP as text");
  dump->add_option("model", dump_model, "model file")->required();
  dump->add_option("-o,--out", dump_out, "output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      return cmd_check(model_arg, formula_arg, mode_name, grid, refine, strategy_path, json,
                       timeout_sec);
    }
    if (*gen) {
      pstctl::TgcOutput out = pstctl::gen_tgc({tgc_n, tgc_T}, /*with_formula=*/tgc_n >= 2);
      if (!model_out.empty())
        spill(model_out, out.model_text);
      else
        std::cout << out.model_text;
      if (!formula_out.empty())
        spill(formula_out, out.formula_text + "\n");
      else if (!out.formula_text.empty())
        std::cout << "// formula: " << out.formula_text << "\n";
      return kExitHolds;
    }
    if (*exp) {
      pstctl::Network net = pstctl::parse_model(slurp(exp_model));
      std::vector<std::string> coalition;
      std::istringstream is(exp_coalition);
      std::string name;
      while (std::getline(is, name, ','))
        if (!name.empty()) coalition.push_back(name);
      std::optional<pstctl::JointStrategyIrP> spec;
      if (!exp_strategy.empty()) {
        pstctl::StrategySpace space = pstctl::strategy_space(net, coalition);
        spec = pstctl::parse_strategy(space, net, slurp(exp_strategy));
      }
      std::string text = pstctl::export_prism(net, coalition, spec);
      if (!exp_out.empty())
        spill(exp_out, text);
      else
        std::cout << text;
      return kExitHolds;
    }
    if (*bench) {
      pstctl::ExperimentConfig cfg;
      cfg.train_counts = parse_range(bench_n);
      cfg.deadlines = parse_range(bench_T);
      cfg.check.mode = bench_mode == "irp" ? pstctl::SynthMode::Irp : pstctl::SynthMode::IrP;
      cfg.check.grid_resolution = bench_grid;
      cfg.check.state_cap = state_cap_from_env(cfg.check.state_cap);
      cfg.cell_timeout = std::chrono::seconds(std::int64_t(bench_timeout));
      cfg.jobs = bench_jobs;
      auto rows = pstctl::run_experiment(cfg);
      if (!bench_out.empty()) {
        std::ofstream out(bench_out);
        if (!out) throw pstctl::Error("cannot write '" + bench_out + "'");
        pstctl::write_experiment_csv(rows, out);
      } else {
        pstctl::write_experiment_csv(rows, std::cout);
      }
      return kExitHolds;
    }
    if (*dump) {
      pstctl::Network net = pstctl::parse_model(slurp(dump_model));
      print_warnings(net);
      pstctl::DigitalMdp mdp =
          pstctl::digitize(net, state_cap_from_env(pstctl::kDefaultStateCap));
      if (!dump_out.empty()) {
        std::ofstream out(dump_out);
        if (!out) throw pstctl::Error("cannot write '" + dump_out + "'");
        pstctl::dump_mdp(mdp, out);
      } else {
        pstctl::dump_mdp(mdp, std::cout);
      }
      return kExitHolds;
    }
  } catch (const pstctl::TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return kExitTimeout;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
