// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <pstctl/checker.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include <pstctl/errors.hpp>
#include <pstctl/printer.hpp>

namespace pstctl {

std::string to_string(SynthMode m) { return m == SynthMode::Irp ? "irp" : "irP"; }
std::string to_string(Soundness s) {
  return s == Soundness::Exact ? "exact" : "grid-incomplete";
}

namespace {

// Bounded layers are solved close to machine precision; the configured
// epsilon applies to the unbounded tail, whose error the stopping rule can
// only bound up to the contraction rate.
constexpr double kLayerEps = 1e-13;

void check_deadline(const CheckConfig& cfg) {
  if (cfg.deadline && std::chrono::steady_clock::now() > *cfg.deadline)
    throw TimeoutError("deadline exceeded");
}

enum class TickTarget : std::uint8_t { NextLayer, SameLayer, Dead };

// Solves one elapsed-time layer by Gauss-Seidel sweeps. `upper` is the
// already-solved successor layer (unused for Dead/SameLayer ticks). `work`
// must be zero-initialized; converges from below to the least fixpoint.
void solve_layer(const InducedModel& m, const std::vector<char>& s1, const std::vector<char>& s2,
                 bool in_interval, TickTarget tick, const std::vector<double>& upper,
                 std::vector<double>& work, OptMode mode, const CheckConfig& cfg, double eps) {
  const std::size_t n = m.state_count();
  std::vector<char> solid(n, 0);  // fixed value, no equation
  for (std::size_t q = 0; q < n; ++q) {
    if (in_interval && s2[q]) {
      work[q] = 1.0;
      solid[q] = 1;
    } else if (!s1[q]) {
      work[q] = 0.0;
      solid[q] = 1;
    }
  }

  double delta = 0.0;
  for (std::uint64_t sweep = 0;; ++sweep) {
    if (sweep >= cfg.vi_max_sweeps)
      throw NumericError("value iteration did not converge within " +
                             std::to_string(cfg.vi_max_sweeps) + " sweeps",
                         delta);
    if ((sweep & 0x3ff) == 0x3ff) check_deadline(cfg);
    delta = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      if (solid[q]) continue;
      double best = 0.0;
      bool first = true;
      for (std::uint32_t c = m.choice_offset[q]; c < m.choice_offset[q + 1]; ++c) {
        const auto& ch = m.choices[c];
        double v = 0.0;
        if (ch.tick) {
          switch (tick) {
            case TickTarget::Dead: v = 0.0; break;
            case TickTarget::SameLayer:
              for (std::uint32_t b = ch.branch_begin; b < ch.branch_end; ++b)
                v += m.branch_prob[b] * work[m.branch_target[b]];
              break;
            case TickTarget::NextLayer:
              for (std::uint32_t b = ch.branch_begin; b < ch.branch_end; ++b)
                v += m.branch_prob[b] * upper[m.branch_target[b]];
              break;
          }
        } else {
          for (std::uint32_t b = ch.branch_begin; b < ch.branch_end; ++b)
            v += m.branch_prob[b] * work[m.branch_target[b]];
        }
        if (first) {
          best = v;
          first = false;
        } else {
          best = (mode == OptMode::Max) ? std::max(best, v) : std::min(best, v);
        }
      }
      delta = std::max(delta, std::abs(best - work[q]));
      work[q] = best;
    }
    if (delta < eps) break;
  }
}

}  // namespace

ProbVector prob_until(const InducedModel& model, const std::vector<char>& s1,
                      const std::vector<char>& s2, const TimeInterval& interval, OptMode mode,
                      const CheckConfig& cfg) {
  const std::size_t n = model.state_count();
  const std::uint32_t lower = interval.lower;
  const bool bounded = interval.upper.has_value();
  const std::uint32_t top = bounded ? *interval.upper : lower;

  std::vector<double> upper_layer(n, 0.0);
  std::vector<double> work(n, 0.0);

  for (std::uint32_t t = top + 1; t-- > 0;) {
    check_deadline(cfg);
    std::fill(work.begin(), work.end(), 0.0);
    TickTarget tick = TickTarget::NextLayer;
    double eps = kLayerEps;
    if (t == top) {
      if (bounded) {
        tick = TickTarget::Dead;
      } else {
        tick = TickTarget::SameLayer;  // saturated layer: unbounded phase
        eps = cfg.vi_epsilon;
      }
    }
    solve_layer(model, s1, s2, t >= lower, tick, upper_layer, work, mode, cfg, eps);
    std::swap(upper_layer, work);
  }
  return ProbVector{std::move(upper_layer)};
}

ProbVector prob_release(const InducedModel& model, const std::vector<char>& s1,
                        const std::vector<char>& s2, const TimeInterval& interval, OptMode mode,
                        const CheckConfig& cfg) {
  std::vector<char> not1(s1.size()), not2(s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) not1[i] = !s1[i];
  for (std::size_t i = 0; i < s2.size(); ++i) not2[i] = !s2[i];
  OptMode dual = mode == OptMode::Max ? OptMode::Min : OptMode::Max;
  ProbVector v = prob_until(model, not1, not2, interval, dual, cfg);
  for (auto& x : v.values) x = 1.0 - x;
  return v;
}

bool check_pbound(double p_min, double p_max, const ProbBound& bound, double eps) {
  double z = to_double(bound.threshold);
  switch (bound.rel) {
    case Rel::Ge: return p_min >= z - eps;
    case Rel::Gt: return p_min > z + eps;
    case Rel::Le: return p_max <= z + eps;
    case Rel::Lt: return p_max < z - eps;
  }
  return false;
}

// ── Strategy-layer evaluation under a fixed strategy ────────────────────────

namespace {

struct PNodeValues {
  double value = 0.0;   // the side the bound needs, at the queried state
  double margin = 0.0;  // signed satisfaction margin at the queried state
  double p_min = 0.0;   // both sides; equal to `value` unless both_modes
  double p_max = 0.0;
};

struct GammaEvaluator {
  const InducedModel& induced;
  const std::map<const Formula*, std::vector<char>>& state_memo;
  const CheckConfig& cfg;
  StateId queried;
  bool both_modes = false;  // additionally compute the unneeded side

  std::vector<PNodeValues> pnodes;  // post-order

  std::vector<char> run(const FormulaPtr& g) {
    const std::size_t n = induced.state_count();
    switch (g->kind) {
      case FKind::GEmbed:
        return state_memo.at(g->lhs.get());
      case FKind::GNot: {
        std::vector<char> v = run(g->lhs);
        for (auto& x : v) x = !x;
        return v;
      }
      case FKind::GAnd: {
        std::vector<char> a = run(g->lhs);
        std::vector<char> b = run(g->rhs);
        for (std::size_t i = 0; i < n; ++i) a[i] = a[i] && b[i];
        return a;
      }
      case FKind::GPUntil:
      case FKind::GPRelease: {
        std::vector<char> s1 = run(g->lhs);
        std::vector<char> s2 = run(g->rhs);
        const bool is_until = g->kind == FKind::GPUntil;
        const bool needs_min = g->bound.rel == Rel::Ge || g->bound.rel == Rel::Gt;
        OptMode need = needs_min ? OptMode::Min : OptMode::Max;

        ProbVector v = is_until ? prob_until(induced, s1, s2, g->interval, need, cfg)
                                : prob_release(induced, s1, s2, g->interval, need, cfg);
        PNodeValues pv;
        pv.value = v.at(queried);
        double z = to_double(g->bound.threshold);
        pv.margin = needs_min ? pv.value - z : z - pv.value;
        pv.p_min = pv.p_max = pv.value;
        if (both_modes && !induced.deterministic()) {
          OptMode other = needs_min ? OptMode::Max : OptMode::Min;
          ProbVector w = is_until ? prob_until(induced, s1, s2, g->interval, other, cfg)
                                  : prob_release(induced, s1, s2, g->interval, other, cfg);
          (needs_min ? pv.p_max : pv.p_min) = w.at(queried);
        }
        pnodes.push_back(pv);

        std::vector<char> sat(n, 0);
        for (std::size_t q = 0; q < n; ++q)
          sat[q] = check_pbound(v.at(StateId(q)), v.at(StateId(q)), g->bound,
                                cfg.comparison_eps);
        return sat;
      }
      default:
        throw Error("internal: state-layer node in strategy-layer evaluation");
    }
  }
};

struct CandidateOutcome {
  std::vector<char> sat;
  bool holds_at_queried = false;
  double slack = 0.0;
  double p_min = 0.0;  // outermost probability node
  double p_max = 0.0;
};

CandidateOutcome evaluate_candidate(const DigitalMdp& mdp, const StrategySpace& space,
                                    const JointStrategyIrP& theta, const FormulaPtr& gamma,
                                    const std::map<const Formula*, std::vector<char>>& memo,
                                    const CheckConfig& cfg, bool both_modes) {
  InducedModel induced = induce(mdp, space, theta);
  GammaEvaluator ge{induced, memo, cfg, mdp.initial, both_modes, {}};
  CandidateOutcome out;
  out.sat = ge.run(gamma);
  out.holds_at_queried = !out.sat.empty() && out.sat[mdp.initial] != 0;
  double slack = std::numeric_limits<double>::infinity();
  for (const auto& p : ge.pnodes) slack = std::min(slack, p.margin);
  out.slack = ge.pnodes.empty() ? 0.0 : slack;
  if (!ge.pnodes.empty()) {
    out.p_min = ge.pnodes.back().p_min;  // outermost operator is evaluated last
    out.p_max = ge.pnodes.back().p_max;
  }
  return out;
}

// Candidate ranking: larger slack first, lexicographically smaller strategy
// on ties (reproducible witnesses).
bool better(double slack_a, const JointStrategyIrP& a, double slack_b,
            const JointStrategyIrP& b) {
  if (slack_a != slack_b) return slack_a > slack_b;
  return a.lex_less(b);
}

struct SynthOutcome {
  Verdict verdict;
  std::vector<char> labeling;
};

SynthOutcome synthesize_impl(const DigitalMdp& mdp, const std::vector<std::string>& coalition,
                             const FormulaPtr& gamma, SynthMode mode,
                             const std::map<const Formula*, std::vector<char>>& memo,
                             const CheckConfig& cfg) {
  const StrategySpace space = strategy_space(*mdp.network, coalition);
  SynthOutcome out;
  out.labeling.assign(mdp.state_count(), 0);
  out.verdict.search.grid_resolution = mode == SynthMode::IrP ? cfg.grid_resolution : 0;

  std::optional<JointStrategyIrP> best;          // by slack, over all candidates
  double best_slack = 0.0;
  std::optional<JointStrategyIrP> best_holding;  // by slack, among satisfying ones
  double best_holding_slack = 0.0;
  std::vector<std::pair<double, JointStrategyIrP>> top;  // refinement seeds

  auto consider = [&](const JointStrategyIrP& theta) {
    CandidateOutcome r =
        evaluate_candidate(mdp, space, theta, gamma, memo, cfg, /*both_modes=*/false);
    ++out.verdict.search.candidates;
    for (std::size_t q = 0; q < r.sat.size(); ++q) out.labeling[q] |= r.sat[q];
    if (!best || better(r.slack, theta, best_slack, *best)) {
      best = theta;
      best_slack = r.slack;
    }
    if (r.holds_at_queried &&
        (!best_holding || better(r.slack, theta, best_holding_slack, *best_holding))) {
      best_holding = theta;
      best_holding_slack = r.slack;
    }
    if (mode == SynthMode::IrP && cfg.refine) {
      top.emplace_back(r.slack, theta);
      std::stable_sort(top.begin(), top.end(),
                       [](const auto& x, const auto& y) { return x.first > y.first; });
      if (top.size() > std::size_t(cfg.refine_top)) top.resize(cfg.refine_top);
    }
    check_deadline(cfg);
    return r;
  };

  if (mode == SynthMode::Irp) {
    IrpEnumerator en(space, cfg.enum_cap);
    while (auto s = en.next()) consider(s->as_distribution(space));
  } else {
    GridEnumerator en(space, cfg.grid_resolution, cfg.enum_cap);
    while (auto s = en.next()) consider(*s);
  }

  if (mode == SynthMode::IrP && cfg.refine && !space.blocks.empty()) {
    RefineSchedule schedule{Rational(1) / int(2 * cfg.grid_resolution), Rational(1) / 10000,
                            1e-9};
    auto seeds = top;
    for (const auto& [seed_slack, seed] : seeds) {
      (void)seed_slack;
      double running_best = -std::numeric_limits<double>::infinity();
      auto objective = [&](const JointStrategyIrP& theta) {
        CandidateOutcome r = consider(theta);
        if (r.slack > running_best + schedule.improve_eps) {
          ++out.verdict.search.refine_steps;
          running_best = r.slack;
        }
        return r.slack;
      };
      refine(space, seed, objective, schedule);
    }
  }

  const bool holds = best_holding.has_value();
  const JointStrategyIrP winner = holds ? *best_holding : (best ? *best : JointStrategyIrP{});
  CandidateOutcome final_eval =
      evaluate_candidate(mdp, space, winner, gamma, memo, cfg, /*both_modes=*/true);

  out.verdict.holds = holds;
  out.verdict.slack = holds ? best_holding_slack : best_slack;
  out.verdict.p_min = final_eval.p_min;
  out.verdict.p_max = final_eval.p_max;
  if (holds) out.verdict.witness = winner;
  out.verdict.soundness = (mode == SynthMode::Irp || holds) ? Soundness::Exact
                                                            : Soundness::GridIncomplete;
  return out;
}

// ── Bottom-up state-layer evaluation ────────────────────────────────────────

struct Evaluator {
  const DigitalMdp& mdp;
  const CheckConfig& cfg;
  std::map<const Formula*, std::vector<char>> memo;
  std::vector<std::pair<FormulaPtr, Verdict>> verdicts;

  const std::vector<char>& state_sat(const FormulaPtr& f) {
    auto it = memo.find(f.get());
    if (it != memo.end()) return it->second;
    std::vector<char> out;
    switch (f->kind) {
      case FKind::Atom: {
        bool known = std::binary_search(mdp.propositions.begin(), mdp.propositions.end(), f->atom);
        if (!known) throw ModelError("unknown proposition '" + f->atom + "'");
        out = mdp.label_set(f->atom);
        break;
      }
      case FKind::True:
        out.assign(mdp.state_count(), 1);
        break;
      case FKind::False:
        out.assign(mdp.state_count(), 0);
        break;
      case FKind::Not: {
        out = state_sat(f->lhs);
        for (auto& x : out) x = !x;
        break;
      }
      case FKind::And: {
        out = state_sat(f->lhs);
        const auto& rhs = state_sat(f->rhs);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] && rhs[i];
        break;
      }
      case FKind::Coalition:
        out = coalition_sat(f);
        break;
      default:
        throw ContractError("formula must be desugared before evaluation");
    }
    return memo.emplace(f.get(), std::move(out)).first->second;
  }

  void prewalk_gamma(const FormulaPtr& g) {
    if (!g) return;
    if (g->kind == FKind::GEmbed) {
      state_sat(g->lhs);
      return;
    }
    prewalk_gamma(g->lhs);
    prewalk_gamma(g->rhs);
  }

  std::vector<char> gamma_boolean(const FormulaPtr& g) {
    switch (g->kind) {
      case FKind::GEmbed: return state_sat(g->lhs);
      case FKind::GNot: {
        auto v = gamma_boolean(g->lhs);
        for (auto& x : v) x = !x;
        return v;
      }
      case FKind::GAnd: {
        auto a = gamma_boolean(g->lhs);
        auto b = gamma_boolean(g->rhs);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
        return a;
      }
      default:
        throw Error("internal: probability node in boolean strategy layer");
    }
  }

  std::vector<char> coalition_sat(const FormulaPtr& f) {
    for (const auto& name : f->agents)
      if (!mdp.network->agent_index(name))
        throw ModelError("coalition names unknown agent '" + name + "'");
    const FormulaPtr& gamma = f->lhs;
    prewalk_gamma(gamma);

    if (!contains_prob_operator(gamma)) {
      // no path constraint: the strategy is irrelevant and the body is a
      // plain boolean over state sets
      std::vector<char> sat = gamma_boolean(gamma);
      Verdict v;
      v.holds = sat[mdp.initial] != 0;
      v.p_min = v.p_max = v.holds ? 1.0 : 0.0;
      v.soundness = Soundness::Exact;
      if (v.holds) {
        StrategySpace space = strategy_space(*mdp.network, f->agents);
        v.witness = JointStrategyIrP::uniform(space);
      }
      verdicts.emplace_back(f, std::move(v));
      return sat;
    }

    SynthOutcome so = synthesize_impl(mdp, f->agents, gamma, cfg.mode, memo, cfg);
    verdicts.emplace_back(f, so.verdict);
    return so.labeling;
  }
};

}  // namespace

EvalResult eval(const DigitalMdp& mdp, const FormulaPtr& formula, const CheckConfig& cfg) {
  EvalResult result;
  result.root = desugar(formula);
  Evaluator ev{mdp, cfg, {}, {}};
  result.sat = ev.state_sat(result.root);
  result.verdicts = std::move(ev.verdicts);
  return result;
}

Verdict synthesize(const DigitalMdp& mdp, const std::vector<std::string>& coalition,
                   const FormulaPtr& gamma, SynthMode mode, const CheckConfig& cfg) {
  FormulaPtr core = desugar(gamma);
  if (!contains_prob_operator(core))
    throw ContractError("synthesis requires at least one probability operator");
  CheckConfig local = cfg;
  local.mode = mode;
  Evaluator ev{mdp, local, {}, {}};
  ev.prewalk_gamma(core);
  return synthesize_impl(mdp, coalition, core, mode, ev.memo, local).verdict;
}

Verdict check_fixed_strategy(const DigitalMdp& mdp, const std::vector<std::string>& coalition,
                             const FormulaPtr& gamma, const JointStrategyIrP& theta,
                             const CheckConfig& cfg) {
  FormulaPtr core = desugar(gamma);
  Evaluator ev{mdp, cfg, {}, {}};
  ev.prewalk_gamma(core);
  StrategySpace space = strategy_space(*mdp.network, coalition);
  if (!contains_prob_operator(core)) {
    Verdict v;
    v.holds = ev.gamma_boolean(core)[mdp.initial] != 0;
    v.p_min = v.p_max = v.holds ? 1.0 : 0.0;
    if (v.holds) v.witness = theta;
    return v;
  }
  CandidateOutcome r =
      evaluate_candidate(mdp, space, theta, core, ev.memo, cfg, /*both_modes=*/true);
  Verdict v;
  v.holds = r.holds_at_queried;
  v.slack = r.slack;
  v.p_min = r.p_min;
  v.p_max = r.p_max;
  v.search.candidates = 1;
  if (v.holds) v.witness = theta;
  return v;
}

// ── Serialization ───────────────────────────────────────────────────────────

std::string verdict_text(const Verdict& v, const StrategySpace& space, const Network& network) {
  std::ostringstream os;
  os << "holds: " << (v.holds ? "true" : "false") << "\n";
  os << "p_min: " << v.p_min << "\n";
  os << "p_max: " << v.p_max << "\n";
  os << "soundness: " << to_string(v.soundness) << "\n";
  os << "candidates: " << v.search.candidates << "\n";
  if (v.witness) {
    os << "witness:\n";
    std::istringstream lines(print_strategy(space, network, *v.witness));
    std::string line;
    while (std::getline(lines, line)) os << "  " << line << "\n";
  }
  return os.str();
}

std::string verdict_json(const Verdict& v, const StrategySpace& space, const Network& network) {
  nlohmann::json j;
  j["holds"] = v.holds;
  j["p_min"] = v.p_min;
  j["p_max"] = v.p_max;
  j["slack"] = v.slack;
  j["soundness"] = to_string(v.soundness);
  j["candidates"] = v.search.candidates;
  j["refine_steps"] = v.search.refine_steps;
  if (v.search.grid_resolution) j["grid_resolution"] = v.search.grid_resolution;
  if (v.witness) {
    nlohmann::json w = nlohmann::json::object();
    for (std::size_t b = 0; b < space.blocks.size(); ++b) {
      const auto& blk = space.blocks[b];
      std::string key = network.agents[blk.agent].name + "." +
                        network.agents[blk.agent].locations[blk.location].name;
      nlohmann::json dist = nlohmann::json::object();
      for (std::size_t i = 0; i < blk.actions.size(); ++i)
        dist[blk.actions[i]] = rational_to_string(v.witness->weights[b][i]);
      w[key] = dist;
    }
    j["witness"] = w;
  }
  return j.dump(2);
}

}  // namespace pstctl
