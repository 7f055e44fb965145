// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared test helpers: seeded random digital MDPs (built directly, not via
// networks), random strategies, and small independent oracles.

#pragma once

#include <random>
#include <vector>

#include <pstctl/checker.hpp>
#include <pstctl/digital.hpp>
#include <pstctl/strategy.hpp>

namespace pstctl::testing {

// Arbitrary digital MDP: ticks and acts with exact dyadic branch
// probabilities, every state has at least one move, single proposition "goal"
// on a random subset. Nondeterministic on purpose.
DigitalMdp random_mdp(std::mt19937& rng, std::size_t max_states);

// Fully probabilistic model with one strategy block of `actions` symbolic
// actions: decision states carry one move per action (merged by induction),
// every other state has exactly one tick or act move.
struct ParametricFixture {
  DigitalMdp mdp;
  StrategySpace space;
};
ParametricFixture random_parametric_fixture(std::mt19937& rng, std::size_t max_states,
                                            std::uint32_t actions);

// Random indicator vector; density in (0,1).
std::vector<char> random_subset(std::mt19937& rng, std::size_t n, double density);

// Random strategy with weights of denominator `grain`, exact sum 1 per block.
JointStrategyIrP random_strategy(std::mt19937& rng, const StrategySpace& space,
                                 std::uint32_t grain = 16);

// Independent brute-force enumeration of reachable (location, valuation)
// pairs for single-agent networks; used as an oracle against digitize.
std::size_t brute_force_state_count(const Network& network);

}  // namespace pstctl::testing
