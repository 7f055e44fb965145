// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include <pstctl/checker.hpp>
#include <pstctl/errors.hpp>
#include <pstctl/parametric.hpp>
#include <pstctl/parser.hpp>
#include <pstctl/tgc.hpp>

#include "support.hpp"

using namespace pstctl;

namespace {

// hand-built two-action decision chain over the stub network from support
DigitalMdp decision_chain(std::size_t decisions) {
  std::mt19937 rng(1);
  auto fx = testing::random_parametric_fixture(rng, 4, 2);  // reuse the stub shapes
  DigitalMdp mdp;
  mdp.network = fx.mdp.network;
  mdp.initial = 0;
  mdp.propositions = {"goal"};
  const std::size_t n = decisions + 2;  // chain + goal + sink
  const StateId goal = StateId(decisions);
  const StateId sink = StateId(decisions + 1);
  for (std::size_t s = 0; s < n; ++s) {
    DigitalState st;
    st.locations = {s == goal ? 1u : 0u};
    mdp.states.push_back(st);
    mdp.labels.push_back(s == goal ? std::vector<std::uint16_t>{0}
                                   : std::vector<std::uint16_t>{});
  }
  for (std::size_t s = 0; s < decisions; ++s) {
    DigitalMove pick0, pick1;
    pick0.kind = DigitalMove::Kind::Act;
    pick0.action = "a0";
    pick0.owners = {{0, 0}};
    pick0.branches.emplace_back(Rational(1), StateId(s + 1 == decisions ? goal : StateId(s + 1)));
    pick1.kind = DigitalMove::Kind::Act;
    pick1.action = "a1";
    pick1.owners = {{0, 0}};
    pick1.branches.emplace_back(Rational(1), sink);
    mdp.moves.push_back({pick0, pick1});
  }
  for (StateId s : {goal, sink}) {
    DigitalMove stay;
    stay.kind = DigitalMove::Kind::Act;
    stay.action = kStallAction;
    stay.stall = true;
    stay.branches.emplace_back(Rational(1), s);
    mdp.moves.push_back({stay});
  }
  return mdp;
}

StrategySpace two_action_space() {
  StrategySpace space;
  space.blocks = {{0, 0, {"a0", "a1"}}};
  space.coalition = {0};
  return space;
}

}  // namespace

TEST_CASE("one symbolic decision: reach probability is the raw parameter") {
  DigitalMdp mdp = decision_chain(1);
  StrategySpace space = two_action_space();
  ParametricModel model = symbolic_induce(mdp, space);
  REQUIRE(model.parameters == std::vector<std::string>{"p_A_u_a0", "p_A_u_a1"});
  RationalFunction f = parametric_reach(model, mdp.label_set("goal"), std::nullopt);
  CHECK(f.to_string(model.parameters) == "p_A_u_a0");
}

TEST_CASE("two decisions in sequence multiply") {
  DigitalMdp mdp = decision_chain(2);
  ParametricModel model = symbolic_induce(mdp, two_action_space());
  RationalFunction f = parametric_reach(model, mdp.label_set("goal"), std::nullopt);
  CHECK(f.to_string(model.parameters) == "p_A_u_a0^2");
  // bounded horizons agree once the chain fits (two action steps, no ticks)
  RationalFunction g = parametric_reach(model, mdp.label_set("goal"), 0);
  CHECK(g.to_string(model.parameters) == "p_A_u_a0^2");
}

TEST_CASE("symbolic induction rejects residual nondeterminism") {
  std::mt19937 rng(3);
  DigitalMdp mdp = testing::random_mdp(rng, 20);  // nondeterministic by construction
  StrategySpace space = strategy_space(*mdp.network, {});
  bool clean = true;
  for (StateId s = 0; s < mdp.state_count() && clean; ++s)
    clean = mdp.moves[s].size() == 1;
  if (!clean) CHECK_THROWS_AS(symbolic_induce(mdp, space), ContractError);
}

TEST_CASE("oracle cap limits symbolic induction") {
  DigitalMdp mdp = decision_chain(30);
  CheckConfig cfg;
  cfg.oracle_state_cap = 10;
  CHECK_THROWS_AS(symbolic_induce(mdp, two_action_space(), cfg), ResourceError);
}

TEST_CASE("oracle agrees with value iteration on random models") {
  std::mt19937 rng(2026);
  int done = 0;
  for (int round = 0; done < 6 && round < 40; ++round) {
    auto fx = testing::random_parametric_fixture(rng, 60, round % 2 ? 3 : 2);
    ParametricModel model;
    try {
      model = symbolic_induce(fx.mdp, fx.space);
    } catch (const ContractError&) {
      continue;  // generator made no decision states this round
    }
    std::vector<char> goal = fx.mdp.label_set("goal");
    bool bounded = round % 2 == 0;
    std::optional<std::uint32_t> horizon =
        bounded ? std::optional<std::uint32_t>(5) : std::nullopt;
    RationalFunction f = parametric_reach(model, goal, horizon);

    TimeInterval interval = bounded ? TimeInterval::bounded(0, 5) : TimeInterval::unbounded(0);
    std::vector<char> all(fx.mdp.state_count(), 1);
    for (int t = 0; t < 5; ++t) {
      JointStrategyIrP theta = testing::random_strategy(rng, fx.space);
      Rational exact = f.evaluate(parameter_values(fx.space, theta));
      InducedModel ind = induce(fx.mdp, fx.space, theta);
      double vi = prob_until(ind, all, goal, interval, OptMode::Min).at(fx.mdp.initial);
      CHECK(std::abs(to_double(exact) - vi) <= 1e-6);
    }
    ++done;
  }
  CHECK(done == 6);
}

// ── benchmark curve ─────────────────────────────────────────────────────────

TEST_CASE("benchmark parametric curve: endpoints are exactly zero") {
  Network net = gen_tgc_network(2);
  DigitalMdp mdp = digitize(net);
  StrategySpace space = strategy_space(net, {"C"});
  ParametricModel model = symbolic_induce(mdp, space);

  // target: both trains latched in their passed locations
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
  CHECK(curve(Rational(0)) == 0);  // a never-granted train never passes
  CHECK(curve(Rational(1)) == 0);
  CHECK(curve(Rational(1, 2)) == Rational(13, 16));  // hand-computed maximum region
  // p(1-p)(3 + (1-p)^2) from the hand unrolling
  auto expected = [](const Rational& p) -> Rational {
    Rational q = 1 - p;
    return p * q * (3 + q * q);
  };
  for (int i = 0; i <= 10; ++i) {
    Rational x(i, 10);
    x.canonicalize();
    CHECK(curve(x) == expected(x));
  }
}
