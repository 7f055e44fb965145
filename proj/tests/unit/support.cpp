// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <pstctl/errors.hpp>

namespace pstctl::testing {

namespace {

// minimal network so that agent/location names resolve
std::shared_ptr<const Network> stub_network(std::uint32_t actions) {
  Network net;
  Agent a;
  a.name = "A";
  a.initial = "u";
  Location u;
  u.name = "u";
  for (std::uint32_t i = 0; i < actions; ++i) u.protocol.push_back("a" + std::to_string(i));
  Location g;
  g.name = "g";
  g.labels.push_back("goal");
  a.locations = {u, g};
  for (std::uint32_t i = 0; i < actions; ++i) {
    Edge e;
    e.source = "u";
    e.action = "a" + std::to_string(i);
    e.branches.push_back({Rational(1), {}, "u"});
    a.edges.push_back(e);
  }
  net.agents.push_back(std::move(a));
  return std::make_shared<Network>(std::move(net));
}

// exact random distribution: positive numerators over `grain` summing to it
std::vector<Rational> random_distribution(std::mt19937& rng, std::size_t n,
                                          std::uint32_t grain, bool allow_zero) {
  std::vector<std::uint32_t> parts(n, allow_zero ? 0 : 1);
  std::uint32_t used = allow_zero ? 0 : std::uint32_t(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::uint32_t r = used; r < grain; ++r) ++parts[pick(rng)];
  std::vector<Rational> out;
  for (auto p : parts) out.push_back(Rational(int(p)) / int(grain));
  return out;
}

DigitalMove random_act(std::mt19937& rng, std::size_t n_states, const std::string& action,
                       std::vector<OwnerView> owners) {
  std::uniform_int_distribution<std::size_t> target(0, n_states - 1);
  std::uniform_int_distribution<int> nbranch(1, 3);
  DigitalMove m;
  m.kind = DigitalMove::Kind::Act;
  m.action = action;
  m.owners = std::move(owners);
  int k = nbranch(rng);
  auto probs = random_distribution(rng, std::size_t(k), 8, /*allow_zero=*/false);
  std::map<StateId, Rational> merged;
  for (int b = 0; b < k; ++b) merged[StateId(target(rng))] += probs[std::size_t(b)];
  for (const auto& [t, p] : merged) m.branches.emplace_back(p, t);
  return m;
}

void finish_mdp(DigitalMdp& mdp, std::mt19937& rng, std::size_t n, double goal_density) {
  mdp.initial = 0;
  mdp.propositions = {"goal"};
  auto goal = random_subset(rng, n, goal_density);
  for (std::size_t s = 0; s < n; ++s) {
    DigitalState st;
    st.locations = {goal[s] ? 1u : 0u};
    mdp.states.push_back(std::move(st));
    mdp.labels.push_back(goal[s] ? std::vector<std::uint16_t>{0} : std::vector<std::uint16_t>{});
  }
}

}  // namespace

std::vector<char> random_subset(std::mt19937& rng, std::size_t n, double density) {
  std::bernoulli_distribution bit(density);
  std::vector<char> out(n, 0);
  for (auto& x : out) x = bit(rng) ? 1 : 0;
  return out;
}

DigitalMdp random_mdp(std::mt19937& rng, std::size_t max_states) {
  std::uniform_int_distribution<std::size_t> size(2, max_states);
  const std::size_t n = size(rng);
  DigitalMdp mdp;
  mdp.network = stub_network(0);
  finish_mdp(mdp, rng, n, 0.3);

  std::uniform_int_distribution<std::size_t> target(0, n - 1);
  std::bernoulli_distribution with_tick(0.6);
  std::uniform_int_distribution<int> nacts(0, 2);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<DigitalMove> moves;
    if (with_tick(rng)) {
      DigitalMove tick;
      tick.kind = DigitalMove::Kind::Tick;
      tick.branches.emplace_back(Rational(1), StateId(target(rng)));
      moves.push_back(std::move(tick));
    }
    int acts = nacts(rng);
    for (int a = 0; a < acts; ++a)
      moves.push_back(random_act(rng, n, "b" + std::to_string(a), {}));
    if (moves.empty()) {
      DigitalMove stall;
      stall.kind = DigitalMove::Kind::Act;
      stall.action = kStallAction;
      stall.stall = true;
      stall.branches.emplace_back(Rational(1), StateId(s));
      moves.push_back(std::move(stall));
      mdp.stall_states.push_back(StateId(s));
    }
    mdp.moves.push_back(std::move(moves));
  }
  return mdp;
}

ParametricFixture random_parametric_fixture(std::mt19937& rng, std::size_t max_states,
                                            std::uint32_t actions) {
  std::uniform_int_distribution<std::size_t> size(actions + 2, max_states);
  const std::size_t n = size(rng);
  ParametricFixture fx;
  fx.mdp.network = stub_network(actions);
  finish_mdp(fx.mdp, rng, n, 0.25);

  StrategyBlock blk;
  blk.agent = 0;
  blk.location = 0;
  for (std::uint32_t i = 0; i < actions; ++i) blk.actions.push_back("a" + std::to_string(i));
  fx.space.blocks = {blk};
  fx.space.coalition = {0};

  std::uniform_int_distribution<std::size_t> target(0, n - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<DigitalMove> moves;
    double kind = coin(rng);
    if (kind < 0.25) {
      // decision state: one edge-deterministic move per block action
      for (std::uint32_t i = 0; i < actions; ++i)
        moves.push_back(
            random_act(rng, n, "a" + std::to_string(i), {{0, 0}}));
    } else if (kind < 0.55) {
      DigitalMove tick;
      tick.kind = DigitalMove::Kind::Tick;
      tick.branches.emplace_back(Rational(1), StateId(target(rng)));
      moves.push_back(std::move(tick));
    } else {
      moves.push_back(random_act(rng, n, "b", {}));
    }
    fx.mdp.moves.push_back(std::move(moves));
  }
  return fx;
}

JointStrategyIrP random_strategy(std::mt19937& rng, const StrategySpace& space,
                                 std::uint32_t grain) {
  JointStrategyIrP theta;
  for (const auto& b : space.blocks)
    theta.weights.push_back(random_distribution(rng, b.actions.size(), grain,
                                                /*allow_zero=*/true));
  return theta;
}

std::size_t brute_force_state_count(const Network& network) {
  if (network.agents.size() != 1)
    throw ContractError("brute-force oracle handles single-agent networks only");
  const Agent& agent = network.agents[0];
  auto consts = max_constants(network);
  std::vector<std::uint32_t> caps;
  for (const auto& c : agent.clocks) caps.push_back(consts.at(c) + 1);

  using Key = std::pair<std::uint32_t, std::vector<std::uint32_t>>;  // (loc, valuation)
  auto clock_value = [&](const std::vector<std::uint32_t>& vals, const std::string& name) {
    for (std::size_t i = 0; i < agent.clocks.size(); ++i)
      if (agent.clocks[i] == name) return std::uint64_t(vals[i]);
    throw ContractError("unknown clock " + name);
  };

  std::set<Key> seen;
  std::vector<Key> frontier;
  Key init{*agent.location_index(agent.initial),
           std::vector<std::uint32_t>(agent.clocks.size(), 0)};
  seen.insert(init);
  frontier.push_back(init);
  while (!frontier.empty()) {
    auto [loc, vals] = frontier.back();
    frontier.pop_back();
    auto push = [&](std::uint32_t l, std::vector<std::uint32_t> v) {
      Key k{l, std::move(v)};
      if (seen.insert(k).second) frontier.push_back(k);
    };
    // tick
    {
      std::vector<std::uint32_t> v = vals;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::min(v[i] + 1, caps[i]);
      bool ok = true;
      for (std::uint32_t l = 0; l < agent.locations.size(); ++l)
        if (l == loc)
          ok = agent.locations[l].invariant.satisfied(
              [&](const std::string& c) { return clock_value(v, c); });
      if (ok) push(loc, std::move(v));
    }
    // edges
    const std::string& loc_name = agent.locations[loc].name;
    const auto& protocol = agent.locations[loc].protocol;
    for (const auto& e : agent.edges) {
      if (e.source != loc_name) continue;
      if (std::find(protocol.begin(), protocol.end(), e.action) == protocol.end()) continue;
      bool enabled = e.guard.satisfied([&](const std::string& c) { return clock_value(vals, c); });
      if (!enabled) continue;
      for (const auto& b : e.branches) {
        std::vector<std::uint32_t> v = vals;
        for (const auto& r : b.resets)
          for (std::size_t i = 0; i < agent.clocks.size(); ++i)
            if (agent.clocks[i] == r) v[i] = 0;
        push(*agent.location_index(b.target), std::move(v));
      }
    }
  }
  return seen.size();
}

}  // namespace pstctl::testing
