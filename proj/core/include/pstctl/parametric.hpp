// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact parametric oracle. Coalition choices are left symbolic (one variable
// per block action); the induced model must be fully probabilistic, i.e.
// exactly one resolved move per state. Reachability probabilities are then
// rational functions of the strategy parameters: state elimination for
// unbounded horizons, layered accumulation over the tick counter for bounded
// ones. Evaluating the result at a concrete strategy is exact.

#pragma once

#include <optional>
#include <vector>

#include <pstctl/checker.hpp>
#include <pstctl/digital.hpp>
#include <pstctl/polynomial.hpp>
#include <pstctl/strategy.hpp>

namespace pstctl {

struct ParametricModel {
  const DigitalMdp* mdp = nullptr;
  std::vector<std::string> parameters;  // p_<agent>_<location>_<action>, block order

  struct Transition {
    std::vector<std::pair<RationalFunction, StateId>> branches;
    bool tick = false;
  };
  std::vector<Transition> transitions;  // exactly one per state

  std::size_t nvars() const { return parameters.size(); }
};

// Parameter names for a strategy space, in block-then-action order.
std::vector<std::string> parameter_names(const StrategySpace& space, const Network& network);

// Flattens a strategy into the parameter order of `parameter_names`.
std::vector<Rational> parameter_values(const StrategySpace& space, const JointStrategyIrP& theta);

// Resolves coalition choices symbolically. Weights over a fully enabled block
// stay as plain variables (their sum is 1 on the simplex); proper subsets are
// renormalized by their symbolic sum, deferring division-by-zero to
// evaluation time. Throws ContractError when any state retains more than one
// move and ResourceError above cfg.oracle_state_cap states.
ParametricModel symbolic_induce(const DigitalMdp& mdp, const StrategySpace& space,
                                const CheckConfig& cfg = {});

// Probability of reaching `target` from the initial state within `horizon`
// ticks (unbounded when nullopt), as an exact rational function.
RationalFunction parametric_reach(const ParametricModel& model, const std::vector<char>& target,
                                  std::optional<std::uint32_t> horizon,
                                  const CheckConfig& cfg = {});

}  // namespace pstctl
