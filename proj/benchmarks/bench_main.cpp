// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot paths: digitization, strategy induction,
// layered value iteration, grid synthesis, and the parametric oracle.

#include <benchmark/benchmark.h>

#include <pstctl/checker.hpp>
#include <pstctl/parametric.hpp>
#include <pstctl/parser.hpp>
#include <pstctl/tgc.hpp>

using namespace pstctl;

namespace {

DigitalMdp benchmark_mdp(std::uint32_t trains) {
  return digitize(gen_tgc_network(trains));
}

JointStrategyIrP fair_strategy(const StrategySpace& space) {
  return JointStrategyIrP::uniform(space);
}

void BM_Digitize(benchmark::State& state) {
  Network net = gen_tgc_network(std::uint32_t(state.range(0)));
  std::uint64_t states = 0;
  for (auto _ : state) {
    DigitalMdp mdp = digitize(net);
    states = mdp.state_count();
    benchmark::DoNotOptimize(mdp);
  }
  state.counters["states"] = double(states);
}
BENCHMARK(BM_Digitize)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Induce(benchmark::State& state) {
  Network net = gen_tgc_network(std::uint32_t(state.range(0)));
  DigitalMdp mdp = digitize(net);
  StrategySpace space = strategy_space(net, {"C"});
  JointStrategyIrP theta = fair_strategy(space);
  for (auto _ : state) {
    InducedModel ind = induce(mdp, space, theta);
    benchmark::DoNotOptimize(ind);
  }
}
BENCHMARK(BM_Induce)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_BoundedUntil(benchmark::State& state) {
  Network net = gen_tgc_network(3);
  DigitalMdp mdp = digitize(net);
  StrategySpace space = strategy_space(net, {"C"});
  InducedModel ind = induce(mdp, space, fair_strategy(space));
  std::vector<char> all(mdp.state_count(), 1);
  auto p1 = mdp.label_set("passed_1");
  auto p2 = mdp.label_set("passed_2");
  std::vector<char> goal(mdp.state_count(), 0);
  for (StateId s = 0; s < mdp.state_count(); ++s) goal[s] = p1[s] && p2[s];
  TimeInterval horizon = TimeInterval::bounded(0, std::uint32_t(state.range(0)));
  for (auto _ : state) {
    ProbVector v = prob_until(ind, all, goal, horizon, OptMode::Min);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_BoundedUntil)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_GridSynthesis(benchmark::State& state) {
  TgcOutput out = gen_tgc({2, 10});
  Network net = parse_model(out.model_text);
  DigitalMdp mdp = digitize(net);
  FormulaPtr gamma = desugar(parse_formula(out.formula_text))->lhs;
  CheckConfig cfg;
  cfg.grid_resolution = std::uint32_t(state.range(0));
  cfg.refine = false;
  for (auto _ : state) {
    Verdict v = synthesize(mdp, {"C"}, gamma, SynthMode::IrP, cfg);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_GridSynthesis)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ParametricOracle(benchmark::State& state) {
  Network net = gen_tgc_network(2);
  DigitalMdp mdp = digitize(net);
  StrategySpace space = strategy_space(net, {"C"});
  auto p1 = mdp.label_set("passed_1");
  auto p2 = mdp.label_set("passed_2");
  std::vector<char> goal(mdp.state_count(), 0);
  for (StateId s = 0; s < mdp.state_count(); ++s) goal[s] = p1[s] && p2[s];
  for (auto _ : state) {
    ParametricModel model = symbolic_induce(mdp, space);
    RationalFunction f = parametric_reach(model, goal, std::uint32_t(state.range(0)));
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_ParametricOracle)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
