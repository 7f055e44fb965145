// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Interval-bounded until/release probabilities by layered value iteration,
// the coalition decision procedure, bottom-up formula evaluation, and
// strategy synthesis.
//
// Digital reading of the path operators: a path satisfies `g1 U_I g2` iff it
// has a position whose tick count lies in I, satisfying g2, all earlier
// positions satisfying g1; release is the De Morgan dual. Probabilities are
// optimized over every residual source of nondeterminism, so a lower
// probability bound is checked against the adversarial minimum and an upper
// bound against the adversarial maximum.

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <pstctl/digital.hpp>
#include <pstctl/formula.hpp>
#include <pstctl/strategy.hpp>

namespace pstctl {

enum class OptMode : std::uint8_t { Min, Max };

struct ProbVector {
  std::vector<double> values;

  double at(StateId s) const {
    double v = values[s];
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  }
  std::size_t size() const { return values.size(); }
};

enum class SynthMode : std::uint8_t { Irp, IrP };
enum class Soundness : std::uint8_t { Exact, GridIncomplete };

std::string to_string(SynthMode m);
std::string to_string(Soundness s);

struct CheckConfig {
  SynthMode mode = SynthMode::IrP;
  std::uint32_t grid_resolution = 10;
  bool refine = true;
  std::uint32_t refine_top = 5;

  double vi_epsilon = 1e-10;          // unbounded-phase stopping threshold
  std::uint64_t vi_max_sweeps = 1'000'000;
  double comparison_eps = 1e-9;       // probability-bound comparisons

  std::uint64_t enum_cap = kDefaultEnumCap;
  std::uint64_t state_cap = kDefaultStateCap;
  std::uint32_t oracle_state_cap = 2000;

  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SearchStats {
  std::uint32_t grid_resolution = 0;
  std::uint64_t candidates = 0;       // strategy evaluations, refinement included
  std::uint64_t refine_steps = 0;     // accepted improvement steps
};

struct Verdict {
  bool holds = false;
  std::optional<JointStrategyIrP> witness;
  double p_min = 0.0;  // first probability operator, at the queried state
  double p_max = 0.0;
  double slack = 0.0;  // signed margin of the best candidate
  SearchStats search;
  Soundness soundness = Soundness::Exact;
};

// ── Path-set probabilities ──────────────────────────────────────────────────

// Per-state optimal probability of the digital until path set over states
// satisfying s1/s2 and tick counts in `interval`. Bounded intervals unroll
// over a saturating elapsed-time counter; unbounded tails are solved by
// convergent iteration (threshold cfg.vi_epsilon, at most cfg.vi_max_sweeps
// sweeps, NumericError on non-convergence).
ProbVector prob_until(const InducedModel& model, const std::vector<char>& s1,
                      const std::vector<char>& s2, const TimeInterval& interval, OptMode mode,
                      const CheckConfig& cfg = {});

// Dual of prob_until: Pr_mode(g1 R_I g2) = 1 - Pr_{~mode}(!g1 U_I !g2).
ProbVector prob_release(const InducedModel& model, const std::vector<char>& s1,
                        const std::vector<char>& s2, const TimeInterval& interval, OptMode mode,
                        const CheckConfig& cfg = {});

// Universal-outcome check of p ~ z: lower bounds compare the adversarial
// minimum, upper bounds the adversarial maximum, with tolerance eps.
bool check_pbound(double p_min, double p_max, const ProbBound& bound, double eps = 1e-9);

// ── Evaluation and synthesis ────────────────────────────────────────────────

struct EvalResult {
  FormulaPtr root;            // desugared tree the results refer to
  std::vector<char> sat;      // per-state satisfaction of the root
  // one verdict per coalition node, post-order, at the initial state
  std::vector<std::pair<FormulaPtr, Verdict>> verdicts;

  bool holds_at_initial(const DigitalMdp& mdp) const { return sat[mdp.initial] != 0; }
};

// Bottom-up evaluation. Coalition nodes are resolved by synthesis and
// memoized as state labelings; everything inside one coalition shares a
// single strategy. Throws ModelError for propositions or agents missing from
// the network.
EvalResult eval(const DigitalMdp& mdp, const FormulaPtr& formula, const CheckConfig& cfg);

// Synthesizes a strategy for `gamma` (a strategy-layer tree) queried at the
// initial state. Deterministic mode enumerates exhaustively and is exact;
// probabilistic mode searches the simplex grid (plus local refinement) and is
// exact for true verdicts, incomplete for false ones.
Verdict synthesize(const DigitalMdp& mdp, const std::vector<std::string>& coalition,
                   const FormulaPtr& gamma, SynthMode mode, const CheckConfig& cfg);

// Evaluates `gamma` under a fixed strategy; no search.
Verdict check_fixed_strategy(const DigitalMdp& mdp, const std::vector<std::string>& coalition,
                             const FormulaPtr& gamma, const JointStrategyIrP& theta,
                             const CheckConfig& cfg);

// ── Verdict serialization ───────────────────────────────────────────────────

std::string verdict_text(const Verdict& v, const StrategySpace& space, const Network& network);
std::string verdict_json(const Verdict& v, const StrategySpace& space, const Network& network);

}  // namespace pstctl
