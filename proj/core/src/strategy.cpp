// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <pstctl/strategy.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <pstctl/errors.hpp>

namespace pstctl {

// ── Parameter space ─────────────────────────────────────────────────────────

std::optional<std::uint32_t> StrategySpace::block_index(std::uint32_t agent,
                                                        std::uint32_t location) const {
  for (std::uint32_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].agent == agent && blocks[i].location == location) return i;
  return std::nullopt;
}

std::size_t StrategySpace::parameter_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.actions.size();
  return n;
}

StrategySpace strategy_space(const Network& network, const std::vector<std::string>& coalition) {
  StrategySpace space;
  std::set<std::uint32_t> members;
  for (const auto& name : coalition) {
    auto idx = network.agent_index(name);
    if (!idx) throw ContractError("coalition agent '" + name + "' not in network");
    members.insert(*idx);
  }
  space.coalition.assign(members.begin(), members.end());
  for (auto a : space.coalition) {
    const Agent& agent = network.agents[a];
    for (std::uint32_t l = 0; l < agent.locations.size(); ++l) {
      if (agent.locations[l].protocol.empty()) continue;
      space.blocks.push_back({a, l, agent.locations[l].protocol});
    }
  }
  return space;
}

// ── Strategies ──────────────────────────────────────────────────────────────

JointStrategyIrP JointStrategyIrP::uniform(const StrategySpace& space) {
  JointStrategyIrP theta;
  for (const auto& b : space.blocks)
    theta.weights.emplace_back(b.actions.size(),
                               Rational(1, static_cast<unsigned long>(b.actions.size())));
  return theta;
}

bool JointStrategyIrP::lex_less(const JointStrategyIrP& other) const {
  for (std::size_t b = 0; b < weights.size() && b < other.weights.size(); ++b) {
    for (std::size_t i = 0; i < weights[b].size() && i < other.weights[b].size(); ++i) {
      if (weights[b][i] < other.weights[b][i]) return true;
      if (weights[b][i] > other.weights[b][i]) return false;
    }
  }
  return false;
}

JointStrategyIrP JointStrategyIrp::as_distribution(const StrategySpace& space) const {
  JointStrategyIrP theta;
  for (std::size_t b = 0; b < space.blocks.size(); ++b) {
    std::vector<Rational> w(space.blocks[b].actions.size(), Rational(0));
    w.at(choice[b]) = 1;
    theta.weights.push_back(std::move(w));
  }
  return theta;
}

bool is_point_distribution(const JointStrategyIrP& theta) {
  for (const auto& w : theta.weights) {
    int ones = 0;
    for (const auto& x : w) {
      if (x == 1)
        ++ones;
      else if (x != 0)
        return false;
    }
    if (ones != 1) return false;
  }
  return true;
}

std::string print_strategy(const StrategySpace& space, const Network& network,
                           const JointStrategyIrP& theta) {
  std::ostringstream os;
  for (std::size_t b = 0; b < space.blocks.size(); ++b) {
    const auto& blk = space.blocks[b];
    os << network.agents[blk.agent].name << "."
       << network.agents[blk.agent].locations[blk.location].name << ":";
    for (std::size_t i = 0; i < blk.actions.size(); ++i)
      os << (i ? ", " : " ") << blk.actions[i] << "=" << rational_to_string(theta.weights[b][i]);
    os << "\n";
  }
  return os.str();
}

JointStrategyIrP parse_strategy(const StrategySpace& space, const Network& network,
                                const std::string& text) {
  // line format: agent.location: action=prob, action=prob
  std::map<std::pair<std::string, std::string>, std::map<std::string, Rational>> parsed;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty() || line.rfind("//", 0) == 0) continue;
    auto colon = line.find(':');
    auto dot = line.find('.');
    if (colon == std::string::npos || dot == std::string::npos || dot > colon)
      throw ParseError("expected 'agent.location: action=prob, ...'", lineno, 1);
    std::string agent = trim(line.substr(0, dot));
    std::string loc = trim(line.substr(dot + 1, colon - dot - 1));
    auto& dist = parsed[{agent, loc}];
    std::string rest = line.substr(colon + 1);
    std::istringstream items(rest);
    std::string item;
    while (std::getline(items, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("expected 'action=prob'", lineno, 1);
      std::string action = trim(item.substr(0, eq));
      Rational p;
      try {
        p = rational_from_string(trim(item.substr(eq + 1)));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lineno, 1);
      }
      if (!dist.emplace(action, p).second)
        throw ParseError("duplicate action '" + action + "'", lineno, 1);
    }
  }

  JointStrategyIrP theta;
  for (const auto& blk : space.blocks) {
    const std::string agent = network.agents[blk.agent].name;
    const std::string loc = network.agents[blk.agent].locations[blk.location].name;
    auto it = parsed.find({agent, loc});
    if (it == parsed.end())
      throw ContractError("strategy is missing block " + agent + "." + loc);
    std::vector<Rational> w;
    Rational sum = 0;
    for (const auto& action : blk.actions) {
      auto jt = it->second.find(action);
      if (jt == it->second.end())
        throw ContractError("strategy block " + agent + "." + loc + " is missing action '" +
                            action + "'");
      if (jt->second < 0 || jt->second > 1)
        throw ContractError("weight for " + agent + "." + loc + "." + action + " outside [0,1]");
      sum += jt->second;
      w.push_back(jt->second);
    }
    if (it->second.size() != blk.actions.size())
      throw ContractError("strategy block " + agent + "." + loc + " lists unknown actions");
    if (sum != 1)
      throw ContractError("strategy block " + agent + "." + loc + " sums to " +
                          rational_to_string(sum) + ", expected 1");
    theta.weights.push_back(std::move(w));
  }
  return theta;
}

// ── Enumeration ─────────────────────────────────────────────────────────────

namespace {
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap,
                          const char* what) {
  if (b != 0 && a > cap / b + 1) throw ResourceError(std::string(what) + " exceeds cap");
  std::uint64_t r = a * b;
  if (r > cap)
    throw ResourceError(std::string(what) + " count " + std::to_string(r) + " exceeds cap " +
                        std::to_string(cap));
  return r;
}

// lattice points of the (d-1)-simplex scaled by k, ascending lexicographic
void compositions(std::uint32_t k, std::uint32_t d, std::vector<Rational>& prefix,
                  std::vector<std::vector<Rational>>& out) {
  if (d == 1) {
    prefix.push_back(Rational(int(k)));
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::uint32_t x = 0; x <= k; ++x) {
    prefix.push_back(Rational(int(x)));
    compositions(k - x, d - 1, prefix, out);
    prefix.pop_back();
  }
}
}  // namespace

std::uint64_t irp_count(const StrategySpace& space, std::uint64_t cap) {
  std::uint64_t n = 1;
  for (const auto& b : space.blocks)
    n = checked_mul(n, b.actions.size(), cap, "deterministic strategy");
  return n;
}

std::uint64_t grid_count(const StrategySpace& space, std::uint32_t resolution, std::uint64_t cap) {
  std::uint64_t n = 1;
  for (const auto& b : space.blocks) {
    // C(k + d - 1, d - 1)
    std::uint64_t d = b.actions.size();
    std::uint64_t points = 1;
    for (std::uint64_t i = 1; i < d; ++i) {
      points = checked_mul(points, resolution + i, std::uint64_t(-1) / 2, "grid");
      points /= i;
    }
    n = checked_mul(n, points, cap, "grid");
  }
  return n;
}

IrpEnumerator::IrpEnumerator(const StrategySpace& space, std::uint64_t cap) : space_(&space) {
  irp_count(space, cap);  // enforce the cap before streaming
  current_.assign(space.blocks.size(), 0);
}

std::optional<JointStrategyIrp> IrpEnumerator::next() {
  if (done_) return std::nullopt;
  if (first_) {
    first_ = false;
    return JointStrategyIrp{current_};
  }
  // odometer, last block fastest
  std::size_t i = current_.size();
  while (i > 0) {
    if (++current_[i - 1] < space_->blocks[i - 1].actions.size()) break;
    current_[--i] = 0;
  }
  if (i == 0) {
    done_ = true;
    return std::nullopt;
  }
  return JointStrategyIrp{current_};
}

GridEnumerator::GridEnumerator(const StrategySpace& space, std::uint32_t resolution,
                               std::uint64_t cap) {
  if (resolution < 1) throw ContractError("grid resolution must be at least 1");
  grid_count(space, resolution, cap);
  for (const auto& b : space.blocks) {
    std::vector<std::vector<Rational>> pts;
    std::vector<Rational> prefix;
    compositions(resolution, std::uint32_t(b.actions.size()), prefix, pts);
    for (auto& p : pts)
      for (auto& x : p) x /= int(resolution);
    block_points_.push_back(std::move(pts));
  }
  current_.assign(block_points_.size(), 0);
}

std::optional<JointStrategyIrP> GridEnumerator::next() {
  if (done_) return std::nullopt;
  if (!first_) {
    std::size_t i = current_.size();
    while (i > 0) {
      if (++current_[i - 1] < block_points_[i - 1].size()) break;
      current_[--i] = 0;
    }
    if (i == 0) {
      done_ = true;
      return std::nullopt;
    }
  }
  first_ = false;
  JointStrategyIrP theta;
  for (std::size_t b = 0; b < block_points_.size(); ++b)
    theta.weights.push_back(block_points_[b][current_[b]]);
  return theta;
}

// ── Induction ───────────────────────────────────────────────────────────────

bool InducedModel::deterministic() const {
  for (std::size_t s = 0; s + 1 < choice_offset.size(); ++s)
    if (choice_offset[s + 1] - choice_offset[s] > 1) return false;
  return true;
}

namespace {

struct MergedBranches {
  std::map<StateId, Rational> probs;

  void add(const Rational& w, const std::vector<std::pair<Rational, StateId>>& branches) {
    for (const auto& [p, t] : branches) probs[t] += w * p;
  }
};

}  // namespace

InducedModel induce(const DigitalMdp& mdp, const StrategySpace& space,
                    const JointStrategyIrP& theta) {
  if (theta.weights.size() != space.blocks.size())
    throw ContractError("strategy does not cover every block of the space");

  InducedModel out;
  out.mdp = &mdp;
  out.choice_offset.reserve(mdp.state_count() + 1);
  out.choice_offset.push_back(0);

  std::vector<char> in_coalition;
  {
    std::size_t agents = mdp.network->agents.size();
    in_coalition.assign(agents, 0);
    for (auto a : space.coalition) in_coalition[a] = 1;
  }

  auto emit_choice = [&out](bool tick, const MergedBranches& mb) {
    InducedModel::Choice c;
    c.tick = tick;
    c.branch_begin = std::uint32_t(out.branch_prob.size());
    for (const auto& [t, p] : mb.probs) {
      if (p == 0) continue;
      out.branch_prob.push_back(to_double(p));
      out.branch_target.push_back(t);
    }
    c.branch_end = std::uint32_t(out.branch_prob.size());
    out.choices.push_back(c);
  };

  for (StateId s = 0; s < mdp.state_count(); ++s) {
    const auto& moves = mdp.moves[s];

    // non-coalition moves pass through unchanged, in move order
    for (const auto& m : moves) {
      bool coalition_move = false;
      for (const auto& o : m.owners) coalition_move |= bool(in_coalition[o.agent]);
      if (coalition_move) continue;
      MergedBranches mb;
      mb.add(Rational(1), m.branches);
      emit_choice(m.is_tick(), mb);
    }

    // coalition moves, grouped per deciding agent (ascending agent index)
    for (auto agent : space.coalition) {
      // distinct actions of this agent's enabled moves, in move order
      std::vector<std::string> actions;
      std::vector<std::vector<const DigitalMove*>> variants;  // per action
      std::uint32_t location = 0;
      for (const auto& m : moves) {
        bool mine = false;
        for (const auto& o : m.owners)
          if (o.agent == agent) {
            mine = true;
            location = o.location;
          }
        if (!mine) continue;
        auto it = std::find(actions.begin(), actions.end(), m.action);
        if (it == actions.end()) {
          actions.push_back(m.action);
          variants.emplace_back();
          it = actions.end() - 1;
        }
        variants[it - actions.begin()].push_back(&m);
      }
      if (actions.empty()) continue;

      auto block = space.block_index(agent, location);
      if (!block)
        throw ContractError("agent '" + mdp.network->agents[agent].name +
                            "' has enabled actions at a location without a strategy block");
      const auto& blk = space.blocks[*block];

      // weight of an action: product of the strategy weights of every
      // coalition owner (the deciding agent and any coalition partners)
      std::vector<Rational> weight(actions.size(), Rational(1));
      Rational total = 0;
      for (std::size_t i = 0; i < actions.size(); ++i) {
        for (const auto& o : variants[i].front()->owners) {
          if (!in_coalition[o.agent]) continue;
          auto ob = space.block_index(o.agent, o.location);
          if (!ob)
            throw ContractError("agent '" + mdp.network->agents[o.agent].name +
                                "' has enabled actions at a location without a strategy block");
          const auto& oblk = space.blocks[*ob];
          auto ai = std::find(oblk.actions.begin(), oblk.actions.end(), actions[i]);
          if (ai == oblk.actions.end())
            throw ContractError("action '" + actions[i] + "' missing from block of agent '" +
                                mdp.network->agents[o.agent].name + "'");
          weight[i] *= theta.weights[*ob][ai - oblk.actions.begin()];
        }
        total += weight[i];
      }
      (void)blk;
      if (total == 0) {
        // the strategy puts no mass on any enabled action: fall back to the
        // uniform distribution over the enabled subset
        for (auto& w : weight) w = Rational(1, static_cast<unsigned long>(actions.size()));
      } else if (total != 1) {
        for (auto& w : weight) w /= total;
      }

      // drop zero-weight actions, then one merged choice per variant combo
      std::vector<std::size_t> live;
      for (std::size_t i = 0; i < actions.size(); ++i)
        if (weight[i] != 0) live.push_back(i);

      std::vector<std::size_t> pick(live.size(), 0);
      for (;;) {
        MergedBranches mb;
        for (std::size_t li = 0; li < live.size(); ++li)
          mb.add(weight[live[li]], variants[live[li]][pick[li]]->branches);
        emit_choice(false, mb);
        std::size_t i = live.size();
        while (i > 0) {
          if (++pick[i - 1] < variants[live[i - 1]].size()) break;
          pick[--i] = 0;
        }
        if (i == 0) break;
      }
    }

    if (out.choices.size() == out.choice_offset.back())
      throw Error("internal: state lost all moves during induction");
    out.choice_offset.push_back(std::uint32_t(out.choices.size()));
  }
  return out;
}

// ── Local search ────────────────────────────────────────────────────────────

JointStrategyIrP refine(const StrategySpace& space, const JointStrategyIrP& theta0,
                        const std::function<double(const JointStrategyIrP&)>& objective,
                        const RefineSchedule& schedule) {
  JointStrategyIrP theta = theta0;
  double best = objective(theta);
  Rational delta = schedule.initial_delta;
  while (delta >= schedule.min_delta) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t b = 0; b < space.blocks.size(); ++b) {
        const std::size_t d = space.blocks[b].actions.size();
        for (std::size_t j = 0; j < d; ++j) {
          for (std::size_t i = 0; i < d; ++i) {
            if (i == j || theta.weights[b][j] == 0) continue;
            Rational step = std::min(delta, theta.weights[b][j]);
            JointStrategyIrP cand = theta;
            cand.weights[b][j] -= step;
            cand.weights[b][i] += step;
            double v = objective(cand);
            if (v > best + schedule.improve_eps) {
              theta = std::move(cand);
              best = v;
              improved = true;
            }
          }
        }
      }
    }
    delta /= 2;
  }
  return theta;
}

}  // namespace pstctl
