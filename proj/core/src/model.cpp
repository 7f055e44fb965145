// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <pstctl/model.hpp>

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pstctl {

Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto digits_only = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den))
      throw std::invalid_argument("malformed rational literal: " + text);
    mpz_class n{num}, d{den};
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    Rational r{n, d};
    r.canonicalize();
    return r;
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!digits_only(whole) || !digits_only(frac))
      throw std::invalid_argument("malformed decimal literal: " + text);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    mpz_class num = mpz_class(whole) * den + (frac.empty() ? mpz_class(0) : mpz_class(frac));
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (!digits_only(text)) throw std::invalid_argument("malformed number: " + text);
  return Rational(mpz_class(text));
}

std::string rational_to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string cmp_to_string(Cmp c) {
  switch (c) {
    case Cmp::Le: return "<=";
    case Cmp::Ge: return ">=";
    case Cmp::Eq: return "=";
    case Cmp::Lt: return "<";
    case Cmp::Gt: return ">";
  }
  return "?";
}

std::string rel_to_string(Rel r) {
  switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "?";
}

const Location* Agent::find_location(const std::string& loc) const {
  for (const auto& l : locations)
    if (l.name == loc) return &l;
  return nullptr;
}

std::optional<std::uint32_t> Agent::location_index(const std::string& loc) const {
  for (std::uint32_t i = 0; i < locations.size(); ++i)
    if (locations[i].name == loc) return i;
  return std::nullopt;
}

bool Agent::has_clock(const std::string& clock) const {
  return std::find(clocks.begin(), clocks.end(), clock) != clocks.end();
}

std::optional<std::uint32_t> Network::agent_index(const std::string& name) const {
  for (std::uint32_t i = 0; i < agents.size(); ++i)
    if (agents[i].name == name) return i;
  return std::nullopt;
}

std::map<std::string, std::vector<std::uint32_t>> Network::action_owners() const {
  std::map<std::string, std::vector<std::uint32_t>> owners;
  for (std::uint32_t i = 0; i < agents.size(); ++i) {
    std::set<std::string> mine;
    for (const auto& loc : agents[i].locations)
      for (const auto& a : loc.protocol) mine.insert(a);
    for (const auto& a : mine) owners[a].push_back(i);
  }
  return owners;
}

std::map<std::string, std::uint32_t> Network::proposition_owners() const {
  std::map<std::string, std::uint32_t> owners;
  for (std::uint32_t i = 0; i < agents.size(); ++i)
    for (const auto& loc : agents[i].locations)
      for (const auto& p : loc.labels)
        owners.emplace(p, i);  // first owner wins; duplicates are a validation error
  return owners;
}

namespace {

void check_constraint(const Agent& agent, const ClockConstraint& cc, const std::string& element,
                      std::vector<Diagnostic>& out) {
  for (const auto& atom : cc.atoms) {
    if (is_strict(atom.cmp)) {
      out.push_back({Severity::Error, element,
                     "strict comparator violates digital-clocks restriction: " + atom.clock + " " +
                         cmp_to_string(atom.cmp) + " " + std::to_string(atom.bound)});
    }
    if (!agent.has_clock(atom.clock)) {
      out.push_back({Severity::Error, element, "unknown clock '" + atom.clock + "'"});
    }
  }
}

// A conjunction of interval atoms over single clocks is unsatisfiable iff the
// bounds on some clock conflict.
bool guard_unsatisfiable(const ClockConstraint& cc) {
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> range;  // lo, hi
  for (const auto& atom : cc.atoms) {
    auto [it, fresh] = range.try_emplace(atom.clock, 0, std::numeric_limits<std::int64_t>::max());
    (void)fresh;
    auto& [lo, hi] = it->second;
    switch (atom.cmp) {
      case Cmp::Le: hi = std::min<std::int64_t>(hi, atom.bound); break;
      case Cmp::Ge: lo = std::max<std::int64_t>(lo, atom.bound); break;
      case Cmp::Eq:
        lo = std::max<std::int64_t>(lo, atom.bound);
        hi = std::min<std::int64_t>(hi, atom.bound);
        break;
      case Cmp::Lt: hi = std::min<std::int64_t>(hi, std::int64_t(atom.bound) - 1); break;
      case Cmp::Gt: lo = std::max<std::int64_t>(lo, std::int64_t(atom.bound) + 1); break;
    }
    if (lo > hi) return true;
  }
  return false;
}

}  // namespace

std::vector<Diagnostic> validate_agent(const Agent& agent) {
  std::vector<Diagnostic> out;
  const std::string who = "agent " + agent.name;

  std::set<std::string> loc_names;
  for (const auto& loc : agent.locations) {
    if (!loc_names.insert(loc.name).second)
      out.push_back({Severity::Error, who, "duplicate location '" + loc.name + "'"});
  }
  std::set<std::string> clock_names;
  for (const auto& c : agent.clocks) {
    if (!clock_names.insert(c).second)
      out.push_back({Severity::Error, who, "duplicate clock '" + c + "'"});
  }
  if (agent.locations.empty()) {
    out.push_back({Severity::Error, who, "agent has no locations"});
    return out;
  }
  if (!agent.find_location(agent.initial))
    out.push_back({Severity::Error, who, "initial location '" + agent.initial + "' not declared"});

  for (const auto& loc : agent.locations)
    check_constraint(agent, loc.invariant, who + ", location " + loc.name, out);

  // protocol(l) and the actions on edges out of l must agree both ways
  for (const auto& loc : agent.locations) {
    for (const auto& act : loc.protocol) {
      bool found = false;
      for (const auto& e : agent.edges)
        if (e.source == loc.name && e.action == act) found = true;
      if (!found)
        out.push_back({Severity::Error, who + ", location " + loc.name,
                       "protocol action '" + act + "' labels no edge out of '" + loc.name + "'"});
    }
  }

  for (const auto& e : agent.edges) {
    const std::string where = who + ", edge " + e.source + " --" + e.action + "-->";
    const Location* src = agent.find_location(e.source);
    if (!src) {
      out.push_back({Severity::Error, where, "unknown source location '" + e.source + "'"});
      continue;
    }
    if (std::find(src->protocol.begin(), src->protocol.end(), e.action) == src->protocol.end())
      out.push_back({Severity::Error, where,
                     "action '" + e.action + "' not in protocol of '" + e.source + "'"});
    check_constraint(agent, e.guard, where, out);

    if (e.branches.empty()) {
      out.push_back({Severity::Error, where, "edge has no branches"});
      continue;
    }
    Rational sum = 0;
    for (const auto& b : e.branches) {
      if (!(b.probability > 0) || b.probability > 1)
        out.push_back({Severity::Error, where,
                       "branch probability " + rational_to_string(b.probability) +
                           " outside (0, 1]"});
      sum += b.probability;
      if (!agent.find_location(b.target))
        out.push_back({Severity::Error, where, "unknown target location '" + b.target + "'"});
      for (const auto& r : b.resets)
        if (!agent.has_clock(r))
          out.push_back({Severity::Error, where, "reset of unknown clock '" + r + "'"});
    }
    if (sum != 1)
      out.push_back({Severity::Error, where,
                     "branch probabilities sum to " + rational_to_string(sum) + ", expected 1"});
  }

  // Protocol actions whose every edge guard is unsatisfiable can never be
  // taken; permitted, but worth flagging.
  for (const auto& loc : agent.locations) {
    for (const auto& act : loc.protocol) {
      bool any_sat = false, any_edge = false;
      for (const auto& e : agent.edges) {
        if (e.source != loc.name || e.action != act) continue;
        any_edge = true;
        if (!guard_unsatisfiable(e.guard)) any_sat = true;
      }
      if (any_edge && !any_sat)
        out.push_back({Severity::Warning, who + ", location " + loc.name,
                       "action '" + act + "' has only unsatisfiable guards"});
    }
  }
  return out;
}

std::vector<Diagnostic> validate_network(const Network& network) {
  std::vector<Diagnostic> out;

  std::set<std::string> agent_names;
  for (const auto& a : network.agents)
    if (!agent_names.insert(a.name).second)
      out.push_back({Severity::Error, "network", "duplicate agent name '" + a.name + "'"});

  std::map<std::string, std::string> clock_owner;
  for (const auto& a : network.agents) {
    for (const auto& c : a.clocks) {
      auto [it, fresh] = clock_owner.emplace(c, a.name);
      if (!fresh)
        out.push_back({Severity::Error, "agent " + a.name,
                       "clock name collision: '" + c + "' already declared by agent '" +
                           it->second + "'"});
    }
  }

  std::map<std::string, std::string> prop_owner;
  for (const auto& a : network.agents) {
    std::set<std::string> mine;
    for (const auto& loc : a.locations)
      for (const auto& p : loc.labels) mine.insert(p);
    for (const auto& p : mine) {
      auto [it, fresh] = prop_owner.emplace(p, a.name);
      if (!fresh)
        out.push_back({Severity::Error, "agent " + a.name,
                       "proposition '" + p + "' already owned by agent '" + it->second + "'"});
    }
  }

  // Every shared action must be available in some location of each owner;
  // owners are derived from protocols, so this guards against degenerate
  // agents with empty protocols only.
  for (const auto& [action, owners] : network.action_owners()) {
    (void)action;
    (void)owners;
  }
  return out;
}

std::vector<Diagnostic> validate_all(const Network& network) {
  std::vector<Diagnostic> out;
  for (const auto& a : network.agents) {
    auto diags = validate_agent(a);
    out.insert(out.end(), diags.begin(), diags.end());
  }
  auto diags = validate_network(network);
  out.insert(out.end(), diags.begin(), diags.end());
  return out;
}

std::map<std::string, std::uint32_t> max_constants(const Network& network) {
  std::map<std::string, std::uint32_t> out;
  for (const auto& a : network.agents)
    for (const auto& c : a.clocks) out[c] = 0;
  auto take = [&out](const ClockConstraint& cc) {
    for (const auto& atom : cc.atoms) {
      auto it = out.find(atom.clock);
      if (it != out.end()) it->second = std::max(it->second, atom.bound);
    }
  };
  for (const auto& a : network.agents) {
    for (const auto& loc : a.locations) take(loc.invariant);
    for (const auto& e : a.edges) take(e.guard);
  }
  return out;
}

}  // namespace pstctl
