// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Memoryless imperfect-information strategies. A joint strategy assigns, per
// (coalition agent, local location), a probability distribution over the
// actions available there; deterministic strategies are the point
// distributions. `induce` resolves coalition choices inside a digital MDP,
// leaving every other source of nondeterminism (opponent actions, tick/act
// scheduling) adversarial.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <pstctl/digital.hpp>
#include <pstctl/model.hpp>

namespace pstctl {

// ── Parameter space ─────────────────────────────────────────────────────────

struct StrategyBlock {
  std::uint32_t agent;
  std::uint32_t location;
  std::vector<std::string> actions;  // protocol order
};

struct StrategySpace {
  std::vector<StrategyBlock> blocks;  // agent order, then location order
  std::vector<std::uint32_t> coalition;  // agent indices, ascending

  std::optional<std::uint32_t> block_index(std::uint32_t agent, std::uint32_t location) const;
  std::size_t parameter_count() const;
  bool empty() const { return blocks.empty(); }
};

// One block per coalition-agent location with a nonempty protocol.
// Throws ContractError if a coalition agent is unknown.
StrategySpace strategy_space(const Network& network, const std::vector<std::string>& coalition);

// ── Strategies ──────────────────────────────────────────────────────────────

struct JointStrategyIrP {
  std::vector<std::vector<Rational>> weights;  // per block, summing to 1

  static JointStrategyIrP uniform(const StrategySpace& space);

  // lexicographic over concatenated weight vectors
  bool lex_less(const JointStrategyIrP& other) const;
  bool operator==(const JointStrategyIrP&) const = default;
};

struct JointStrategyIrp {
  std::vector<std::uint32_t> choice;  // per block, index into its action list

  JointStrategyIrP as_distribution(const StrategySpace& space) const;
};

bool is_point_distribution(const JointStrategyIrP& theta);

// Deterministic text form, one line per block:
//   agent.location: action=1/2, action=1/2
std::string print_strategy(const StrategySpace& space, const Network& network,
                           const JointStrategyIrP& theta);
// Parses the text form against a space; validates blocks and distributions.
JointStrategyIrP parse_strategy(const StrategySpace& space, const Network& network,
                                const std::string& text);

// ── Enumeration ─────────────────────────────────────────────────────────────

inline constexpr std::uint64_t kDefaultEnumCap = 1'000'000;

// Number of deterministic strategies / simplex-lattice points; throws
// ResourceError when above `cap`.
std::uint64_t irp_count(const StrategySpace& space, std::uint64_t cap = kDefaultEnumCap);
std::uint64_t grid_count(const StrategySpace& space, std::uint32_t resolution,
                         std::uint64_t cap = kDefaultEnumCap);

// Streams all deterministic strategies in lexicographic order of their index
// tuples. The empty space yields exactly one (empty) strategy.
class IrpEnumerator {
 public:
  IrpEnumerator(const StrategySpace& space, std::uint64_t cap = kDefaultEnumCap);
  std::optional<JointStrategyIrp> next();

 private:
  const StrategySpace* space_;
  std::vector<std::uint32_t> current_;
  bool done_ = false;
  bool first_ = true;
};

// Streams the simplex lattice of per-block distributions with entries in
// {0, 1/k, ..., k/k}, in ascending lexicographic order. Contains every
// deterministic strategy as a corner.
class GridEnumerator {
 public:
  GridEnumerator(const StrategySpace& space, std::uint32_t resolution,
                 std::uint64_t cap = kDefaultEnumCap);
  std::optional<JointStrategyIrP> next();

 private:
  std::vector<std::vector<std::vector<Rational>>> block_points_;  // per block, lattice points
  std::vector<std::uint32_t> current_;
  bool done_ = false;
  bool first_ = true;
};

// ── Induction ───────────────────────────────────────────────────────────────

// Strategy-resolved model in compact form. Choices of one state are
// contiguous; every choice is a full probability distribution over targets.
struct InducedModel {
  const DigitalMdp* mdp = nullptr;

  std::vector<std::uint32_t> choice_offset;  // size = states + 1
  struct Choice {
    bool tick = false;
    std::uint32_t branch_begin = 0;
    std::uint32_t branch_end = 0;
  };
  std::vector<Choice> choices;
  std::vector<double> branch_prob;
  std::vector<StateId> branch_target;

  std::size_t state_count() const { return choice_offset.size() - 1; }
  std::uint32_t choice_count(StateId s) const { return choice_offset[s + 1] - choice_offset[s]; }
  // true iff no state has more than one choice (all nondeterminism resolved)
  bool deterministic() const;
};

// Resolves coalition choices under `theta`. In each state, a coalition
// agent's enabled actions are merged into weighted choices; weights come from
// the agent's block renormalized over the enabled subset, falling back to
// uniform when the enabled subset carries zero weight. Edge-level variants of
// one action stay adversarial: one merged choice per combination of variants.
// Throws ContractError if a coalition agent has enabled actions at a location
// without a block.
InducedModel induce(const DigitalMdp& mdp, const StrategySpace& space,
                    const JointStrategyIrP& theta);

// ── Local search ────────────────────────────────────────────────────────────

struct RefineSchedule {
  Rational initial_delta;           // default: 1/(2k) from the grid resolution
  Rational min_delta = Rational(1, 10000);
  double improve_eps = 1e-9;
};

// Coordinate descent on the per-block simplexes: moves delta of mass between
// two coordinates while it improves the objective, halving delta down to the
// schedule floor. The result is never worse than theta0.
JointStrategyIrP refine(const StrategySpace& space, const JointStrategyIrP& theta0,
                        const std::function<double(const JointStrategyIrP&)>& objective,
                        const RefineSchedule& schedule);

}  // namespace pstctl
