// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <pstctl/prism_export.hpp>

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <pstctl/errors.hpp>

namespace pstctl {

namespace {

std::string guard_to_prism(const ClockConstraint& cc) {
  if (cc.is_true()) return "true";
  std::string out;
  for (std::size_t i = 0; i < cc.atoms.size(); ++i) {
    const auto& a = cc.atoms[i];
    if (i) out += " & ";
    out += a.clock;
    switch (a.cmp) {
      case Cmp::Le: out += "<="; break;
      case Cmp::Ge: out += ">="; break;
      case Cmp::Eq: out += "="; break;
      case Cmp::Lt: out += "<"; break;
      case Cmp::Gt: out += ">"; break;
    }
    out += std::to_string(a.bound);
  }
  return out;
}

// invariant of a location evaluated one tick ahead: clock x becomes
// min(x+1, cap), so every atom "x ~ c" is rewritten over x+1
std::string invariant_after_tick(const ClockConstraint& cc,
                                 const std::map<std::string, std::uint32_t>& caps) {
  if (cc.is_true()) return "true";
  std::string out;
  for (std::size_t i = 0; i < cc.atoms.size(); ++i) {
    const auto& a = cc.atoms[i];
    if (i) out += " & ";
    std::string val = "min(" + a.clock + "+1," + std::to_string(caps.at(a.clock) + 1) + ")";
    switch (a.cmp) {
      case Cmp::Le: out += val + "<=" + std::to_string(a.bound); break;
      case Cmp::Ge: out += val + ">=" + std::to_string(a.bound); break;
      case Cmp::Eq: out += val + "=" + std::to_string(a.bound); break;
      case Cmp::Lt: out += val + "<" + std::to_string(a.bound); break;
      case Cmp::Gt: out += val + ">" + std::to_string(a.bound); break;
    }
  }
  return out;
}

std::string double_literal(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", to_double(r));
  return buf;
}

}  // namespace

std::string export_prism(const Network& network, const std::vector<std::string>& coalition,
                         const std::optional<JointStrategyIrP>& specialize) {
  StrategySpace space = strategy_space(network, coalition);
  auto caps = max_constants(network);

  std::ostringstream os;
  os << "// digital-clocks MDP export\n";
  os << "mdp\n\n";

  if (!space.blocks.empty()) {
    os << "// strategy parameters, one per (location, available action)\n";
    for (std::size_t b = 0; b < space.blocks.size(); ++b) {
      const auto& blk = space.blocks[b];
      const Agent& agent = network.agents[blk.agent];
      for (std::size_t i = 0; i < blk.actions.size(); ++i) {
        os << "const double p_" << agent.name << "_" << agent.locations[blk.location].name << "_"
           << blk.actions[i];
        if (specialize) os << " = " << double_literal(specialize->weights[b][i]);
        os << ";\n";
      }
    }
    os << "\n";
  }

  std::set<std::uint32_t> members(space.coalition.begin(), space.coalition.end());

  for (std::uint32_t ai = 0; ai < network.agents.size(); ++ai) {
    const Agent& agent = network.agents[ai];
    const bool strategic = members.count(ai) > 0;
    const std::string loc_var = agent.name + "_loc";
    const std::string sel_var = agent.name + "_sel";

    std::size_t max_block = 0;
    if (strategic)
      for (const auto& blk : space.blocks)
        if (blk.agent == ai) max_block = std::max(max_block, blk.actions.size());

    os << "// agent " << agent.name << ": locations";
    for (std::size_t l = 0; l < agent.locations.size(); ++l)
      os << (l ? "," : "") << " " << agent.locations[l].name << "=" << l;
    os << "\n";
    os << "module " << agent.name << "\n";
    os << "  " << loc_var << " : [0.." << (agent.locations.size() - 1) << "] init "
       << *agent.location_index(agent.initial) << ";\n";
    if (strategic && max_block > 0)
      os << "  " << sel_var << " : [0.." << max_block << "] init 0;\n";
    for (const auto& c : agent.clocks)
      os << "  " << c << " : [0.." << (caps.at(c) + 1) << "] init 0;\n";
    os << "\n";

    // probabilistic action selection for coalition locations
    if (strategic) {
      for (const auto& blk : space.blocks) {
        if (blk.agent != ai) continue;
        const Location& loc = agent.locations[blk.location];
        os << "  [] " << loc_var << "=" << blk.location << " & " << sel_var << "=0 -> ";
        for (std::size_t i = 0; i < blk.actions.size(); ++i) {
          if (i) os << " + ";
          os << "p_" << agent.name << "_" << loc.name << "_" << blk.actions[i] << " : ("
             << sel_var << "'=" << (i + 1) << ")";
        }
        os << ";\n";
      }
    }

    // action commands, one per edge
    for (std::uint32_t l = 0; l < agent.locations.size(); ++l) {
      const Location& loc = agent.locations[l];
      for (const auto& e : agent.edges) {
        if (e.source != loc.name) continue;
        os << "  [" << e.action << "] " << loc_var << "=" << l;
        if (strategic) {
          auto blk = space.block_index(ai, l);
          if (blk) {
            const auto& actions = space.blocks[*blk].actions;
            auto it = std::find(actions.begin(), actions.end(), e.action);
            os << " & " << sel_var << "=" << (it - actions.begin() + 1);
          }
        }
        if (!e.guard.is_true()) os << " & " << guard_to_prism(e.guard);
        os << " -> ";
        for (std::size_t b = 0; b < e.branches.size(); ++b) {
          const Branch& br = e.branches[b];
          if (b) os << " + ";
          os << rational_to_string(br.probability) << " : (" << loc_var << "'="
             << *agent.location_index(br.target) << ")";
          for (const auto& r : br.resets) os << " & (" << r << "'=0)";
          if (strategic && max_block > 0) os << " & (" << sel_var << "'=0)";
        }
        os << ";\n";
      }
    }

    // synchronized time step, blocked by the location invariants and during
    // action selection
    os << "  [tick] ";
    bool first = true;
    if (strategic && max_block > 0) {
      os << sel_var << "=0";
      first = false;
    }
    for (std::uint32_t l = 0; l < agent.locations.size(); ++l) {
      const Location& loc = agent.locations[l];
      if (loc.invariant.is_true()) continue;
      if (!first) os << " & ";
      first = false;
      os << "(" << loc_var << "!=" << l << " | (" << invariant_after_tick(loc.invariant, caps)
         << "))";
    }
    if (first) os << "true";
    os << " -> ";
    if (agent.clocks.empty()) {
      os << "true";
    } else {
      for (std::size_t c = 0; c < agent.clocks.size(); ++c) {
        if (c) os << " & ";
        os << "(" << agent.clocks[c] << "'=min(" << agent.clocks[c] << "+1,"
           << (caps.at(agent.clocks[c]) + 1) << "))";
      }
    }
    os << ";\n";
    os << "endmodule\n\n";
  }

  // proposition labels
  std::map<std::string, std::vector<std::pair<std::uint32_t, std::uint32_t>>> props;
  for (std::uint32_t ai = 0; ai < network.agents.size(); ++ai)
    for (std::uint32_t l = 0; l < network.agents[ai].locations.size(); ++l)
      for (const auto& p : network.agents[ai].locations[l].labels)
        props[p].emplace_back(ai, l);
  for (const auto& [p, where] : props) {
    os << "label \"" << p << "\" = ";
    for (std::size_t i = 0; i < where.size(); ++i) {
      if (i) os << " | ";
      os << network.agents[where[i].first].name << "_loc=" << where[i].second;
    }
    os << ";\n";
  }
  return os.str();
}

}  // namespace pstctl
