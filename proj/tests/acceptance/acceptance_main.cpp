// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion prints a single PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <vector>

#include <pstctl/checker.hpp>
#include <pstctl/errors.hpp>
#include <pstctl/parametric.hpp>
#include <pstctl/parser.hpp>
#include <pstctl/printer.hpp>
#include <pstctl/tgc.hpp>

#include "support.hpp"

using namespace pstctl;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

struct Cell {
  std::uint32_t n = 0;
  std::uint32_t T = 0;
  bool holds = false;
  double wall_ms = 0;
  Verdict verdict;
};

Cell run_cell(std::uint32_t n, std::uint32_t T, SynthMode mode) {
  Cell cell;
  cell.n = n;
  cell.T = T;
  auto t0 = std::chrono::steady_clock::now();
  TgcOutput out = gen_tgc({n, T});
  Network net = parse_model(out.model_text);
  DigitalMdp mdp = digitize(net);
  CheckConfig cfg;
  cfg.mode = mode;
  cfg.grid_resolution = 10;
  cfg.refine = true;
  EvalResult r = eval(mdp, parse_formula(out.formula_text), cfg);
  cell.holds = r.holds_at_initial(mdp);
  cell.verdict = r.verdicts.back().second;
  cell.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return cell;
}

// ── criterion 1: benchmark truth values ─────────────────────────────────────

void criterion_1() {
  bool ok = true;
  std::string detail;

  for (std::uint32_t n : {2u, 3u, 4u}) {
    for (std::uint32_t T : {5u, 30u}) {
      Cell cell = run_cell(n, T, SynthMode::Irp);
      if (cell.holds) {
        ok = false;
        detail += "irp n=" + std::to_string(n) + " T=" + std::to_string(T) +
                  " unexpectedly true; ";
      }
    }
  }

  double t_n2 = 0, t_n3 = 0, t_n3_T30 = 0, t_n3_T100 = 0;
  for (std::uint32_t n : {2u, 3u}) {
    for (std::uint32_t T : {30u, 100u}) {
      Cell cell = run_cell(n, T, SynthMode::IrP);
      const auto& idle = cell.verdict.witness ? cell.verdict.witness->weights[0]
                                              : std::vector<Rational>{};
      bool mixes = cell.verdict.witness && idle.size() >= 2 && idle[0] > 0 && idle[1] > 0;
      if (!cell.holds || !mixes) {
        ok = false;
        detail += "irP n=" + std::to_string(n) + " T=" + std::to_string(T) +
                  (cell.holds ? " witness does not mix grants; " : " unexpectedly false; ");
      }
      if (n == 2 && T == 30) t_n2 = cell.wall_ms;
      if (n == 3 && T == 30) t_n3 = cell.wall_ms, t_n3_T30 = cell.wall_ms;
      if (n == 3 && T == 100) t_n3_T100 = cell.wall_ms;
    }
  }
  // qualitative growth: the n=3 search dwarfs n=2, and T=100 dwarfs T=30
  if (!(t_n3 > t_n2)) {
    ok = false;
    detail += "runtime did not grow with n; ";
  }
  if (!(t_n3_T100 > t_n3_T30)) {
    ok = false;
    detail += "runtime did not grow with T; ";
  }
  report(1, "benchmark truth values and growth trend", ok, detail);
}

// ── criterion 2: oracle equivalence ─────────────────────────────────────────

void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(20260810);
  int models = 0, checks = 0;
  double worst = 0;
  while (models < 20) {
    bool bounded = models % 2 == 0;
    auto fx = testing::random_parametric_fixture(rng, bounded ? 500 : 150,
                                                 models % 3 == 0 ? 3 : 2);
    ParametricModel model;
    try {
      model = symbolic_induce(fx.mdp, fx.space);
    } catch (const ContractError&) {
      continue;
    }
    std::vector<char> goal = fx.mdp.label_set("goal");
    std::optional<std::uint32_t> horizon =
        bounded ? std::optional<std::uint32_t>(6) : std::nullopt;
    RationalFunction f = parametric_reach(model, goal, horizon);
    TimeInterval interval = bounded ? TimeInterval::bounded(0, 6) : TimeInterval::unbounded(0);
    std::vector<char> all(fx.mdp.state_count(), 1);
    for (int t = 0; t < 20; ++t) {
      JointStrategyIrP theta = testing::random_strategy(rng, fx.space);
      Rational exact = f.evaluate(parameter_values(fx.space, theta));
      InducedModel ind = induce(fx.mdp, fx.space, theta);
      double vi = prob_until(ind, all, goal, interval, OptMode::Min).at(fx.mdp.initial);
      worst = std::max(worst, std::abs(to_double(exact) - vi));
      ++checks;
    }
    ++models;
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = worst <= 1e-6 && models >= 20 && checks >= 400 && secs < 120;
  report(2, "parametric oracle matches value iteration",
         ok,
         std::to_string(models) + " models, " + std::to_string(checks) +
             " evaluations, worst gap " + std::to_string(worst) + ", " +
             std::to_string(secs) + "s");
}

// ── criterion 3: duality suite ──────────────────────────────────────────────

void criterion_3() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(777);
  int violations = 0, models = 0;
  for (; models < 50; ++models) {
    DigitalMdp mdp = testing::random_mdp(rng, 200);
    StrategySpace space = strategy_space(*mdp.network, {});
    InducedModel ind = induce(mdp, space, JointStrategyIrP{});
    std::vector<char> s1 = testing::random_subset(rng, mdp.state_count(), 0.6);
    std::vector<char> s2 = testing::random_subset(rng, mdp.state_count(), 0.35);
    std::vector<char> n1(mdp.state_count()), n2(mdp.state_count());
    for (std::size_t i = 0; i < mdp.state_count(); ++i) {
      n1[i] = !s1[i];
      n2[i] = !s2[i];
    }
    std::uniform_int_distribution<std::uint32_t> low(0, 3), len(0, 5);
    std::uint32_t a = low(rng);
    TimeInterval interval = models % 4 == 0 ? TimeInterval::unbounded(a)
                                            : TimeInterval::bounded(a, a + len(rng));
    ProbVector rel = prob_release(ind, s1, s2, interval, OptMode::Max);
    ProbVector unt = prob_until(ind, n1, n2, interval, OptMode::Min);
    for (StateId s = 0; s < mdp.state_count(); ++s)
      if (std::abs(rel.at(s) + unt.at(s) - 1.0) > 1e-9) ++violations;
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = violations == 0 && secs < 60;
  report(3, "release/until duality on random models", ok,
         std::to_string(models) + " models, " + std::to_string(violations) + " violations, " +
             std::to_string(secs) + "s");
}

// ── criterion 4: digital hand examples ──────────────────────────────────────

void criterion_4() {
  Network chain = parse_model(
      "agent R { clocks x; init s;"
      "  loc s [x <= 1] { protocol flip;"
      "    on flip when x = 1 goto { 1/2: -> goal; 1/2: reset {x} -> s; } }"
      "  loc goal { labels goal; }"
      "}");
  DigitalMdp mdp = digitize(chain);
  StrategySpace space = strategy_space(*mdp.network, {});
  InducedModel ind = induce(mdp, space, JointStrategyIrP{});
  std::vector<char> all(mdp.state_count(), 1);
  double p = prob_until(ind, all, mdp.label_set("goal"), TimeInterval::bounded(0, 2),
                        OptMode::Min)
                 .at(mdp.initial);
  bool chain_ok = std::abs(p - 0.75) <= 1e-10;

  Network probe = parse_model(
      "agent A { clocks x; init start;"
      "  loc start [x <= 2] { protocol go; on go when x = 2 goto { 1: -> goal; } }"
      "  loc goal [x <= 2] { labels goal; }"
      "}");
  DigitalMdp probe_mdp = digitize(probe);
  bool probe_ok = probe_mdp.state_count() == 4 &&
                  testing::brute_force_state_count(probe) == 4;
  report(4, "hand-checked digital examples", chain_ok && probe_ok,
         "retry chain p=" + std::to_string(p) + ", guard probe states=" +
             std::to_string(probe_mdp.state_count()));
}

// ── criterion 5: horizon monotonicity and mode ordering ─────────────────────

void criterion_5() {
  std::mt19937 rng(31337);
  int violations = 0;
  for (int round = 0; round < 25; ++round) {
    DigitalMdp mdp = testing::random_mdp(rng, 120);
    StrategySpace space = strategy_space(*mdp.network, {});
    InducedModel ind = induce(mdp, space, JointStrategyIrP{});
    std::vector<char> s1 = testing::random_subset(rng, mdp.state_count(), 0.7);
    std::vector<char> s2 = testing::random_subset(rng, mdp.state_count(), 0.3);
    std::vector<ProbVector> mins, maxs;
    for (std::uint32_t T = 0; T <= 6; ++T) {
      mins.push_back(prob_until(ind, s1, s2, TimeInterval::bounded(0, T), OptMode::Min));
      maxs.push_back(prob_until(ind, s1, s2, TimeInterval::bounded(0, T), OptMode::Max));
    }
    for (StateId s = 0; s < mdp.state_count(); ++s) {
      for (std::uint32_t T = 0; T <= 6; ++T) {
        if (mins[T].at(s) > maxs[T].at(s) + 1e-9) ++violations;
        if (T > 0 && (mins[T].at(s) < mins[T - 1].at(s) - 1e-9 ||
                      maxs[T].at(s) < maxs[T - 1].at(s) - 1e-9))
          ++violations;
      }
    }
  }
  report(5, "horizon monotonicity and min/max ordering", violations == 0,
         std::to_string(violations) + " violations");
}

// ── criterion 6: deterministic strategies are dominated ─────────────────────

void criterion_6() {
  bool ok = true;
  std::string detail;
  for (std::uint32_t n : {2u, 3u}) {
    TgcOutput out = gen_tgc({n, 5});
    Network net = parse_model(out.model_text);
    DigitalMdp mdp = digitize(net);
    FormulaPtr gamma = desugar(parse_formula(out.formula_text))->lhs;
    CheckConfig cfg;
    cfg.refine = false;
    Verdict irp = synthesize(mdp, {"C"}, gamma, SynthMode::Irp, cfg);
    Verdict irP = synthesize(mdp, {"C"}, gamma, SynthMode::IrP, cfg);
    if (irP.slack < irp.slack - 1e-12) {
      ok = false;
      detail += "n=" + std::to_string(n) + " grid slack below deterministic slack; ";
    }
    StrategySpace space = strategy_space(net, {"C"});
    GridEnumerator grid(space, cfg.grid_resolution);
    std::uint64_t corners = 0;
    while (auto theta = grid.next())
      if (is_point_distribution(*theta)) ++corners;
    if (corners != irp_count(space)) {
      ok = false;
      detail += "n=" + std::to_string(n) + " corner count mismatch; ";
    }
  }
  report(6, "grid search dominates deterministic enumeration", ok, detail);
}

// ── criterion 7: parser round-trips ─────────────────────────────────────────

void criterion_7() {
  const std::vector<std::string> corpus = {
      "agent A { init s; loc s { } }",
      "agent A { clocks x; init s; loc s [x <= 3] { } }",
      "agent A { clocks x, y; init s;"
      "  loc s [x <= 2 & y <= 7] { protocol go;"
      "    on go when x >= 1 & y = 2 goto { 0.5: reset {x, y} -> t; 1/2: -> s; } }"
      "  loc t { labels done; }}",
      "agent A { init s; loc s { labels p, q; protocol a, b;"
      "  on a goto { 1: -> s; } on b goto { 1/3: -> s; 2/3: -> t; } } loc t { } }",
      "agent A { init s; loc s { protocol hop; on hop goto { 1: -> t; } } loc t { } }"
      "agent B { init u; loc u { protocol hop; on hop goto { 1: -> u; } } }",
      "agent A { clocks c1; init w;"
      "  loc w { protocol leap; on leap when c1 = 4 goto { 1: reset {c1} -> w; } } }",
      "agent Alpha { init one; loc one { protocol z_9; on z_9 goto { 1: -> two; } }"
      "  loc two { labels fin; } }",
      "agent M { clocks t0; init a; loc a [t0 <= 1] { protocol go;"
      "  on go when t0 >= 1 goto { 1: reset {t0} -> b; } }"
      "  loc b [t0 <= 1] { protocol go2; on go2 when t0 = 1 goto { 1: reset {t0} -> a; } } }",
      "agent P { init s; loc s { protocol roll;"
      "  on roll goto { 1/6: -> s; 1/6: -> t; 2/3: -> u; } } loc t { } loc u { labels six; } }",
      "agent Q { clocks q; init s0; loc s0 { protocol tic;"
      "  on tic when q >= 0 goto { 1: -> s0; } } }",
      "agent Duo { clocks a, b; init x; loc x [a <= 1] { protocol step;"
      "  on step when b <= 9 goto { 1/4: reset {a} -> y; 3/4: reset {b} -> x; } }"
      "  loc y { labels there; } }",
  };
  std::size_t total = 0, good = 0;
  auto roundtrip = [&](const std::string& text) {
    ++total;
    Network first = parse_model(text);
    Network second = parse_model(print_model(first));
    if (first == second && print_model(first) == print_model(second)) ++good;
  };
  for (const auto& text : corpus) roundtrip(text);
  for (std::uint32_t n = 1; n <= 16; ++n)
    roundtrip(gen_tgc({n, 30}, /*with_formula=*/false).model_text);
  report(7, "parser round-trips (hand corpus + generated models)", good == total,
         std::to_string(good) + "/" + std::to_string(total));
}

// ── criterion 8: deterministic endpoints of the benchmark curve ─────────────

void criterion_8() {
  Network net = gen_tgc_network(2);
  DigitalMdp mdp = digitize(net);
  StrategySpace space = strategy_space(net, {"C"});
  ParametricModel model = symbolic_induce(mdp, space);
  std::vector<char> target(mdp.state_count(), 0);
  auto p1 = mdp.label_set("passed_1");
  auto p2 = mdp.label_set("passed_2");
  for (StateId s = 0; s < mdp.state_count(); ++s) target[s] = p1[s] && p2[s];
  RationalFunction f = parametric_reach(model, target, 5);
  auto curve = [&](const Rational& x) -> Rational {
    JointStrategyIrP theta;
    theta.weights = {{x, Rational(1 - x)}, {Rational(1, 2), Rational(1, 2)}};
    return f.evaluate(parameter_values(space, theta));
  };
  bool ok = curve(Rational(0)) == 0 && curve(Rational(1)) == 0 &&
            curve(Rational(1, 2)) == Rational(13, 16);
  report(8, "benchmark curve endpoints are exactly zero", ok,
         "f(0)=" + rational_to_string(curve(Rational(0))) +
             ", f(1)=" + rational_to_string(curve(Rational(1))) +
             ", f(1/2)=" + rational_to_string(curve(Rational(1, 2))));
}

}  // namespace

int main() {
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << "\n";
    return 2;
  }
  if (g_failures) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
