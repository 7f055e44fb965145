// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <pstctl/parametric.hpp>

#include <algorithm>
#include <map>
#include <set>

#include <pstctl/errors.hpp>

namespace pstctl {

std::vector<std::string> parameter_names(const StrategySpace& space, const Network& network) {
  std::vector<std::string> names;
  for (const auto& blk : space.blocks) {
    const Agent& agent = network.agents[blk.agent];
    for (const auto& action : blk.actions)
      names.push_back("p_" + agent.name + "_" + agent.locations[blk.location].name + "_" +
                      action);
  }
  return names;
}

std::vector<Rational> parameter_values(const StrategySpace& space,
                                       const JointStrategyIrP& theta) {
  std::vector<Rational> values;
  for (std::size_t b = 0; b < space.blocks.size(); ++b)
    for (const auto& w : theta.weights.at(b)) values.push_back(w);
  return values;
}

namespace {

// flat variable index of (block, action)
std::size_t var_index(const StrategySpace& space, std::uint32_t block, std::size_t action) {
  std::size_t idx = 0;
  for (std::uint32_t b = 0; b < block; ++b) idx += space.blocks[b].actions.size();
  return idx + action;
}

}  // namespace

ParametricModel symbolic_induce(const DigitalMdp& mdp, const StrategySpace& space,
                                const CheckConfig& cfg) {
  if (mdp.state_count() > cfg.oracle_state_cap)
    throw ResourceError("oracle cap: model has " + std::to_string(mdp.state_count()) +
                        " states, cap is " + std::to_string(cfg.oracle_state_cap));

  ParametricModel out;
  out.mdp = &mdp;
  out.parameters = parameter_names(space, *mdp.network);
  const std::size_t nvars = out.parameters.size();

  std::vector<char> in_coalition(mdp.network->agents.size(), 0);
  for (auto a : space.coalition) in_coalition[a] = 1;

  for (StateId s = 0; s < mdp.state_count(); ++s) {
    const auto& moves = mdp.moves[s];
    std::vector<ParametricModel::Transition> resolved;

    for (const auto& m : moves) {
      bool coalition_move = false;
      for (const auto& o : m.owners) coalition_move |= bool(in_coalition[o.agent]);
      if (coalition_move) continue;
      ParametricModel::Transition t;
      t.tick = m.is_tick();
      for (const auto& [p, tgt] : m.branches)
        t.branches.emplace_back(RationalFunction(nvars, p), tgt);
      resolved.push_back(std::move(t));
    }

    for (auto agent : space.coalition) {
      std::vector<std::string> actions;
      std::vector<std::vector<const DigitalMove*>> variants;
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
      for (const auto& v : variants)
        if (v.size() > 1)
          throw ContractError(
              "symbolic induction requires edge-deterministic actions (state " +
              std::to_string(s) + ", action '" + actions.front() + "' has variants)");

      auto block = space.block_index(agent, location);
      if (!block)
        throw ContractError("agent '" + mdp.network->agents[agent].name +
                            "' has enabled actions at a location without a strategy block");
      const auto& blk = space.blocks[*block];

      // symbolic weight per enabled action: product over coalition owners
      std::vector<RationalFunction> weight;
      for (std::size_t i = 0; i < actions.size(); ++i) {
        RationalFunction w(nvars, Rational(1));
        for (const auto& o : variants[i].front()->owners) {
          if (!in_coalition[o.agent]) continue;
          auto ob = space.block_index(o.agent, o.location);
          if (!ob)
            throw ContractError("agent '" + mdp.network->agents[o.agent].name +
                                "' has enabled actions at a location without a strategy block");
          const auto& oblk = space.blocks[*ob];
          auto ai = std::find(oblk.actions.begin(), oblk.actions.end(), actions[i]);
          if (ai == oblk.actions.end())
            throw ContractError("action '" + actions[i] + "' missing from its strategy block");
          w = w * RationalFunction::variable(nvars,
                                             var_index(space, *ob, ai - oblk.actions.begin()));
        }
        weight.push_back(std::move(w));
      }
      // Renormalization over the enabled subset. A single enabled action gets
      // weight one; the full block keeps plain variables (the block sums to
      // one at any valid strategy); a proper subset divides by its symbolic
      // sum, deferring vanishing denominators to evaluation.
      if (actions.size() == 1) {
        weight[0] = RationalFunction(nvars, Rational(1));
      } else if (actions.size() < blk.actions.size()) {
        RationalFunction total(nvars, Rational(0));
        for (const auto& w : weight) total = total + w;
        for (auto& w : weight) w = w / total;
      }

      ParametricModel::Transition t;
      std::map<StateId, RationalFunction> merged;
      for (std::size_t i = 0; i < actions.size(); ++i) {
        for (const auto& [p, tgt] : variants[i].front()->branches) {
          RationalFunction add = weight[i] * RationalFunction(nvars, p);
          auto it = merged.find(tgt);
          if (it == merged.end())
            merged.emplace(tgt, std::move(add));
          else
            it->second = it->second + add;
        }
      }
      for (auto& [tgt, p] : merged) t.branches.emplace_back(std::move(p), tgt);
      resolved.push_back(std::move(t));
    }

    if (resolved.size() != 1)
      throw ContractError("residual nondeterminism at state " + std::to_string(s) + " (" +
                          std::to_string(resolved.size()) + " moves resolve)");
    out.transitions.push_back(std::move(resolved.front()));
  }
  return out;
}

// ── Reachability ────────────────────────────────────────────────────────────

namespace {

// Strongly connected components of the same-layer (action) dependency graph,
// returned in reverse topological order (callees before callers).
struct Tarjan {
  const std::vector<std::vector<StateId>>& adj;
  std::vector<int> index, low;
  std::vector<char> on_stack;
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> sccs;
  int counter = 0;

  explicit Tarjan(const std::vector<std::vector<StateId>>& a)
      : adj(a), index(a.size(), -1), low(a.size(), 0), on_stack(a.size(), 0) {
    for (StateId v = 0; v < adj.size(); ++v)
      if (index[v] < 0) dfs(v);
  }

  void dfs(StateId root) {
    // iterative to keep deep models off the call stack
    std::vector<std::pair<StateId, std::size_t>> work{{root, 0}};
    while (!work.empty()) {
      auto& [v, ei] = work.back();
      if (ei == 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      bool descended = false;
      while (ei < adj[v].size()) {
        StateId w = adj[v][ei++];
        if (index[w] < 0) {
          work.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        sccs.emplace_back();
        for (;;) {
          StateId w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          sccs.back().push_back(w);
          if (w == v) break;
        }
      }
      StateId finished = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[finished]);
    }
  }
};

// Solves (I - A) x = c by Gaussian elimination over rational functions.
// Closed subsystems (all-zero rows with zero constants) resolve to zero, the
// least fixpoint.
std::vector<RationalFunction> solve_linear(std::vector<std::vector<RationalFunction>> a,
                                           std::vector<RationalFunction> c, std::size_t nvars) {
  const std::size_t m = c.size();
  // build I - A in place
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      RationalFunction entry = (i == j) ? RationalFunction(nvars, Rational(1)) : RationalFunction(nvars);
      a[i][j] = entry - a[i][j];
    }

  std::vector<std::size_t> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = i;

  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && a[perm[pivot]][col].is_zero()) ++pivot;
    if (pivot == m) {
      // no equation constrains this variable: valid only if the remaining
      // system is degenerate toward the zero fixpoint
      bool ok = true;
      for (std::size_t r = col; r < m; ++r) ok = ok && c[perm[r]].is_zero();
      if (!ok) throw ModelError("degenerate parametric layer system");
      continue;
    }
    std::swap(perm[col], perm[pivot]);
    const std::size_t pr = perm[col];
    for (std::size_t r = col + 1; r < m; ++r) {
      const std::size_t rr = perm[r];
      if (a[rr][col].is_zero()) continue;
      RationalFunction f = a[rr][col] / a[pr][col];
      for (std::size_t j = col; j < m; ++j) a[rr][j] = a[rr][j] - f * a[pr][j];
      c[rr] = c[rr] - f * c[pr];
    }
  }
  std::vector<RationalFunction> x(m, RationalFunction(nvars));
  for (std::size_t col = m; col-- > 0;) {
    const std::size_t pr = perm[col];
    if (a[pr][col].is_zero()) continue;  // unconstrained: zero fixpoint
    RationalFunction acc = c[pr];
    for (std::size_t j = col + 1; j < m; ++j)
      if (!a[pr][j].is_zero()) acc = acc - a[pr][j] * x[j];
    x[col] = acc / a[pr][col];
  }
  // undo the permutation: x[col] corresponds to variable `col` already
  return x;
}

// One backward layer: given next-layer values, computes this layer's values.
// Target states are one, tick states defer to `next` (or zero past the
// horizon), action states form a linear system solved per SCC.
std::vector<RationalFunction> solve_parametric_layer(const ParametricModel& model,
                                                     const std::vector<char>& target,
                                                     const std::vector<RationalFunction>* next,
                                                     std::size_t nvars) {
  const std::size_t n = model.transitions.size();
  std::vector<RationalFunction> val(n, RationalFunction(nvars));
  std::vector<char> known(n, 0);
  for (std::size_t q = 0; q < n; ++q) {
    if (target[q]) {
      val[q] = RationalFunction(nvars, Rational(1));
      known[q] = 1;
    } else if (model.transitions[q].tick) {
      if (next) {
        RationalFunction acc(nvars);
        for (const auto& [p, tgt] : model.transitions[q].branches)
          acc = acc + p * (*next)[tgt];
        val[q] = std::move(acc);
      }
      known[q] = 1;  // zero past the horizon
    }
  }

  // dependency graph among unresolved action states
  std::vector<std::vector<StateId>> adj(n);
  for (std::size_t q = 0; q < n; ++q) {
    if (known[q]) continue;
    for (const auto& [p, tgt] : model.transitions[q].branches) {
      (void)p;
      if (!known[tgt]) adj[q].push_back(tgt);
    }
  }
  Tarjan tarjan(adj);
  for (const auto& scc : tarjan.sccs) {
    if (scc.size() == 1 && known[scc[0]]) continue;
    // constants: contributions through already-resolved targets
    std::map<StateId, std::size_t> pos;
    for (std::size_t i = 0; i < scc.size(); ++i) pos[scc[i]] = i;
    std::vector<std::vector<RationalFunction>> a(
        scc.size(), std::vector<RationalFunction>(scc.size(), RationalFunction(nvars)));
    std::vector<RationalFunction> c(scc.size(), RationalFunction(nvars));
    for (std::size_t i = 0; i < scc.size(); ++i) {
      for (const auto& [p, tgt] : model.transitions[scc[i]].branches) {
        auto it = pos.find(tgt);
        if (it != pos.end())
          a[i][it->second] = a[i][it->second] + p;
        else
          c[i] = c[i] + p * val[tgt];
      }
    }
    std::vector<RationalFunction> x = solve_linear(std::move(a), std::move(c), nvars);
    for (std::size_t i = 0; i < scc.size(); ++i) {
      val[scc[i]] = std::move(x[i]);
      known[scc[i]] = 1;
    }
  }
  return val;
}

// Unbounded reachability by state elimination, initial state only.
RationalFunction eliminate_reach(const ParametricModel& model, const std::vector<char>& target,
                                 std::size_t nvars) {
  const std::size_t n = model.transitions.size();
  const StateId start = model.mdp->initial;

  // adjacency with merged parallel edges; target states absorb
  std::vector<std::map<StateId, RationalFunction>> out(n);
  std::vector<std::set<StateId>> preds(n);
  for (StateId q = 0; q < n; ++q) {
    if (target[q]) continue;
    for (const auto& [p, tgt] : model.transitions[q].branches) {
      auto it = out[q].find(tgt);
      if (it == out[q].end())
        out[q].emplace(tgt, p);
      else
        it->second = it->second + p;
    }
    for (const auto& [tgt, p] : out[q]) {
      (void)p;
      preds[tgt].insert(q);
    }
  }

  std::vector<char> gone(n, 0);
  auto self_factor = [&](StateId q) {
    // 1 / (1 - self-loop weight); identity when there is no self-loop
    auto it = out[q].find(q);
    if (it == out[q].end()) return RationalFunction(nvars, Rational(1));
    RationalFunction one(nvars, Rational(1));
    RationalFunction denom = one - it->second;
    if (denom.is_zero()) return RationalFunction(nvars);  // trapped: zero reach mass
    out[q].erase(it);
    preds[q].erase(q);
    return one / denom;
  };

  for (;;) {
    // cheapest remaining state by fill-in estimate
    StateId chosen = StateId(n);
    std::size_t best_cost = std::size_t(-1);
    for (StateId q = 0; q < n; ++q) {
      if (gone[q] || q == start || target[q]) continue;
      std::size_t cost = preds[q].size() * out[q].size();
      if (cost < best_cost) {
        best_cost = cost;
        chosen = q;
      }
    }
    if (chosen == StateId(n)) break;

    RationalFunction factor = self_factor(chosen);
    std::vector<StateId> ps(preds[chosen].begin(), preds[chosen].end());
    for (StateId u : ps) {
      if (gone[u]) continue;
      auto uit = out[u].find(chosen);
      if (uit == out[u].end()) continue;
      RationalFunction w = uit->second * factor;
      out[u].erase(uit);
      for (const auto& [tgt, p] : out[chosen]) {
        RationalFunction add = w * p;
        auto it = out[u].find(tgt);
        if (it == out[u].end())
          out[u].emplace(tgt, std::move(add));
        else
          it->second = it->second + add;
        preds[tgt].insert(u);
      }
    }
    for (const auto& [tgt, p] : out[chosen]) {
      (void)p;
      preds[tgt].erase(chosen);
    }
    out[chosen].clear();
    gone[chosen] = 1;
  }

  if (target[start]) return RationalFunction(nvars, Rational(1));
  RationalFunction mass(nvars);
  RationalFunction self(nvars);
  for (const auto& [tgt, p] : out[start]) {
    if (tgt == start)
      self = p;
    else if (target[tgt])
      mass = mass + p;
  }
  if (mass.is_zero()) return RationalFunction(nvars);
  RationalFunction denom = RationalFunction(nvars, Rational(1)) - self;
  if (denom.is_zero()) return RationalFunction(nvars);
  return mass / denom;
}

}  // namespace

RationalFunction parametric_reach(const ParametricModel& model, const std::vector<char>& target,
                                  std::optional<std::uint32_t> horizon, const CheckConfig& cfg) {
  (void)cfg;
  const std::size_t nvars = model.nvars();
  if (target.size() != model.transitions.size())
    throw ContractError("target set size mismatch");

  if (!horizon) return eliminate_reach(model, target, nvars);

  std::vector<RationalFunction> next;  // empty: beyond the horizon, value 0
  std::vector<RationalFunction> layer;
  for (std::uint32_t t = *horizon + 1; t-- > 0;) {
    layer = solve_parametric_layer(model, target, next.empty() ? nullptr : &next, nvars);
    next = std::move(layer);
  }
  return next[model.mdp->initial];
}

}  // namespace pstctl
