// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <pstctl/digital.hpp>

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>
#include <sstream>

#include <pstctl/errors.hpp>

namespace pstctl {

bool DigitalMdp::has_label(StateId s, std::uint16_t prop) const {
  const auto& ls = labels[s];
  return std::binary_search(ls.begin(), ls.end(), prop);
}

std::vector<char> DigitalMdp::label_set(const std::string& prop) const {
  auto it = std::find(propositions.begin(), propositions.end(), prop);
  std::vector<char> out(states.size(), 0);
  if (it == propositions.end()) return out;
  auto id = static_cast<std::uint16_t>(it - propositions.begin());
  for (StateId s = 0; s < states.size(); ++s)
    if (has_label(s, id)) out[s] = 1;
  return out;
}

// ── Product table ───────────────────────────────────────────────────────────

ProductTable::ProductTable(const Network& network) : net_(&network) {
  owners_ = network.action_owners();
}

namespace {
std::string loc_key(const std::vector<std::uint32_t>& locs) {
  std::string key;
  key.reserve(locs.size() * 4);
  for (auto l : locs) {
    key.push_back(char(l & 0xff));
    key.push_back(char((l >> 8) & 0xff));
    key.push_back(char((l >> 16) & 0xff));
    key.push_back(char((l >> 24) & 0xff));
  }
  return key;
}
}  // namespace

const std::vector<JointEdge>& ProductTable::joint_edges(
    const std::vector<std::uint32_t>& locations) const {
  auto key = loc_key(locations);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  std::vector<JointEdge> result;
  for (const auto& [action, owners] : owners_) {
    // enabled by protocol: every owner lists the action at its location
    bool enabled = true;
    for (auto a : owners) {
      const Location& loc = net_->agents[a].locations[locations[a]];
      if (std::find(loc.protocol.begin(), loc.protocol.end(), action) == loc.protocol.end()) {
        enabled = false;
        break;
      }
    }
    if (!enabled) continue;

    // eligible edges per owner, declaration order
    std::vector<std::vector<std::uint32_t>> eligible(owners.size());
    for (std::size_t i = 0; i < owners.size(); ++i) {
      const Agent& agent = net_->agents[owners[i]];
      const std::string& src = agent.locations[locations[owners[i]]].name;
      for (std::uint32_t e = 0; e < agent.edges.size(); ++e)
        if (agent.edges[e].source == src && agent.edges[e].action == action)
          eligible[i].push_back(e);
      if (eligible[i].empty()) enabled = false;
    }
    if (!enabled) continue;

    // one joint edge per combination; last owner varies fastest
    std::vector<std::uint32_t> pick(owners.size(), 0);
    for (;;) {
      JointEdge je;
      je.action = action;
      for (std::size_t i = 0; i < owners.size(); ++i)
        je.participants.emplace_back(owners[i], eligible[i][pick[i]]);
      result.push_back(std::move(je));
      std::size_t i = owners.size();
      while (i > 0 && ++pick[i - 1] == eligible[i - 1].size()) pick[--i] = 0;
      if (i == 0) break;
    }
  }
  return cache_.emplace(std::move(key), std::move(result)).first->second;
}

ProductTable build_product(const Network& network) { return ProductTable(network); }

// ── Digitizer ───────────────────────────────────────────────────────────────

namespace {

struct StateHash {
  std::size_t operator()(const DigitalState& s) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint32_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    for (auto l : s.locations) mix(l);
    for (auto c : s.clocks) mix(c);
    return h;
  }
};

struct Builder {
  const Network& net;
  std::uint64_t cap;
  ProductTable table;

  std::vector<std::string> clock_names;
  std::vector<std::uint32_t> clock_caps;
  // clock index ranges per agent: [first, first+count)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> agent_clocks;
  std::vector<std::string> props;

  DigitalMdp mdp;
  std::unordered_map<DigitalState, StateId, StateHash> index;
  std::deque<StateId> frontier;

  explicit Builder(const Network& network, std::uint64_t state_cap)
      : net(network), cap(state_cap), table(network) {
    auto consts = max_constants(net);
    for (const auto& agent : net.agents) {
      agent_clocks.emplace_back(std::uint32_t(clock_names.size()),
                                std::uint32_t(agent.clocks.size()));
      for (const auto& c : agent.clocks) {
        clock_names.push_back(c);
        clock_caps.push_back(consts.at(c) + 1);
      }
    }
    std::set<std::string> prop_set;
    for (const auto& agent : net.agents)
      for (const auto& loc : agent.locations)
        for (const auto& p : loc.labels) prop_set.insert(p);
    props.assign(prop_set.begin(), prop_set.end());
  }

  std::uint32_t clock_index(std::uint32_t agent, const std::string& clock) const {
    auto [first, count] = agent_clocks[agent];
    for (std::uint32_t i = 0; i < count; ++i)
      if (clock_names[first + i] == clock) return first + i;
    throw Error("internal: unknown clock " + clock);
  }

  bool constraint_holds(std::uint32_t agent, const ClockConstraint& cc,
                        const std::vector<std::uint32_t>& clocks) const {
    return cc.satisfied([&](const std::string& name) {
      return std::uint64_t(clocks[clock_index(agent, name)]);
    });
  }

  bool invariants_hold(const DigitalState& s) const {
    for (std::uint32_t a = 0; a < net.agents.size(); ++a) {
      const Location& loc = net.agents[a].locations[s.locations[a]];
      if (!constraint_holds(a, loc.invariant, s.clocks)) return false;
    }
    return true;
  }

  StateId intern(DigitalState&& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (mdp.states.size() >= cap)
      throw ResourceError("digital state space exceeds cap of " + std::to_string(cap) +
                          " states");
    StateId id = StateId(mdp.states.size());
    index.emplace(s, id);
    mdp.states.push_back(std::move(s));
    mdp.moves.emplace_back();
    mdp.labels.push_back(state_labels(mdp.states.back()));
    frontier.push_back(id);
    return id;
  }

  std::vector<std::uint16_t> state_labels(const DigitalState& s) const {
    std::vector<std::uint16_t> out;
    for (std::uint32_t a = 0; a < net.agents.size(); ++a) {
      for (const auto& p : net.agents[a].locations[s.locations[a]].labels) {
        auto it = std::lower_bound(props.begin(), props.end(), p);
        out.push_back(std::uint16_t(it - props.begin()));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Expands one probabilistic branch combination of a joint edge. Branch
  // combinations multiply across participants.
  void expand_joint(const StateId src, const JointEdge& je) {
    const DigitalState state = mdp.states[src];  // copy: intern() may reallocate states
    // check guards of all participants
    for (auto [agent, edge] : je.participants) {
      const Edge& e = net.agents[agent].edges[edge];
      if (!constraint_holds(agent, e.guard, state.clocks)) return;
    }
    DigitalMove move;
    move.kind = DigitalMove::Kind::Act;
    move.action = je.action;
    for (auto [agent, edge] : je.participants) {
      (void)edge;
      move.owners.push_back({agent, state.locations[agent]});
    }

    std::vector<std::uint32_t> pick(je.participants.size(), 0);
    for (;;) {
      Rational prob = 1;
      DigitalState succ = state;
      for (std::size_t i = 0; i < je.participants.size(); ++i) {
        auto [agent, edge] = je.participants[i];
        const Branch& b = net.agents[agent].edges[edge].branches[pick[i]];
        prob *= b.probability;
        succ.locations[agent] = *net.agents[agent].location_index(b.target);
        for (const auto& r : b.resets) succ.clocks[clock_index(agent, r)] = 0;
      }
      if (!invariants_hold(succ)) {
        std::ostringstream os;
        os << "action '" << je.action << "' from state " << src
           << " reaches a state violating a location invariant";
        throw ModelError(os.str());
      }
      move.branches.emplace_back(prob, intern(std::move(succ)));

      std::size_t i = je.participants.size();
      while (i > 0) {
        auto [agent, edge] = je.participants[i - 1];
        if (++pick[i - 1] < net.agents[agent].edges[edge].branches.size()) break;
        pick[--i] = 0;
      }
      if (i == 0) break;
    }
    // merge duplicate targets for a canonical distribution
    std::map<StateId, Rational> merged;
    for (const auto& [p, t] : move.branches) merged[t] += p;
    move.branches.clear();
    for (const auto& [t, p] : merged) move.branches.emplace_back(p, t);
    mdp.moves[src].push_back(std::move(move));
  }

  void expand(StateId src) {
    // Tick: advance every clock by one (saturating at its cap); enabled iff
    // all location invariants still hold afterwards.
    {
      DigitalState succ = mdp.states[src];
      for (std::size_t i = 0; i < succ.clocks.size(); ++i)
        succ.clocks[i] = std::min(succ.clocks[i] + 1, clock_caps[i]);
      if (invariants_hold(succ)) {
        DigitalMove tick;
        tick.kind = DigitalMove::Kind::Tick;
        tick.branches.emplace_back(Rational(1), intern(std::move(succ)));
        mdp.moves[src].push_back(std::move(tick));
      }
    }
    for (const auto& je : table.joint_edges(mdp.states[src].locations)) expand_joint(src, je);

    if (mdp.moves[src].empty()) {
      DigitalMove stallm;
      stallm.kind = DigitalMove::Kind::Act;
      stallm.action = kStallAction;
      stallm.stall = true;
      stallm.branches.emplace_back(Rational(1), src);
      mdp.moves[src].push_back(std::move(stallm));
      mdp.stall_states.push_back(src);
    }
  }

  DigitalMdp build() {
    DigitalState init;
    for (const auto& agent : net.agents)
      init.locations.push_back(*agent.location_index(agent.initial));
    init.clocks.assign(clock_names.size(), 0);
    if (!invariants_hold(init))
      throw ModelError("initial state violates a location invariant");

    mdp.network = std::make_shared<Network>(net);
    mdp.clock_names = clock_names;
    mdp.clock_caps = clock_caps;
    mdp.propositions = props;
    mdp.initial = intern(std::move(init));

    while (!frontier.empty()) {
      StateId s = frontier.front();
      frontier.pop_front();
      expand(s);
    }
    return std::move(mdp);
  }
};

}  // namespace

DigitalMdp digitize(const Network& network, std::uint64_t state_cap) {
  return Builder(network, state_cap).build();
}

MdpStats reachable_stats(const DigitalMdp& mdp) {
  MdpStats st;
  st.states = mdp.states.size();
  for (const auto& ms : mdp.moves) {
    st.moves += ms.size();
    for (const auto& m : ms)
      if (m.is_tick()) ++st.ticks;
  }
  return st;
}

void dump_mdp(const DigitalMdp& mdp, std::ostream& os) {
  const Network& net = *mdp.network;
  for (StateId s = 0; s < mdp.states.size(); ++s) {
    const auto& st = mdp.states[s];
    os << "state " << s << " ";
    for (std::size_t a = 0; a < st.locations.size(); ++a)
      os << (a ? "," : "") << net.agents[a].locations[st.locations[a]].name;
    os << " ";
    if (st.clocks.empty()) {
      os << "-";
    } else {
      for (std::size_t c = 0; c < st.clocks.size(); ++c) os << (c ? "," : "") << st.clocks[c];
    }
    os << " ";
    if (mdp.labels[s].empty()) {
      os << "-";
    } else {
      for (std::size_t i = 0; i < mdp.labels[s].size(); ++i)
        os << (i ? "," : "") << mdp.propositions[mdp.labels[s][i]];
    }
    os << "\n";
  }
  for (StateId s = 0; s < mdp.states.size(); ++s) {
    for (const auto& m : mdp.moves[s]) {
      os << "move " << s << " ";
      if (m.is_tick())
        os << "tick -";
      else if (m.stall)
        os << "stall " << m.action;
      else
        os << "act " << m.action;
      for (const auto& [p, t] : m.branches)
        os << " " << rational_to_string(p) << ":" << t;
      os << "\n";
    }
  }
}

}  // namespace pstctl
