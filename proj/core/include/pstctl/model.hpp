// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Domain types for networks of probabilistic timed automata with per-location
// protocols, plus their structural validation.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <pstctl/rational.hpp>

namespace pstctl {

// ── Clock constraints ───────────────────────────────────────────────────────
// Conjunctions of atoms comparing a single clock against a natural constant.
// Difference atoms (x - y ~ c) are not representable. Strict comparators can
// be parsed but are rejected by validation: the digital-clocks construction
// is only sound for closed, diagonal-free models.

enum class Cmp : std::uint8_t { Le, Ge, Eq, Lt, Gt };

inline bool is_strict(Cmp c) { return c == Cmp::Lt || c == Cmp::Gt; }
std::string cmp_to_string(Cmp c);

struct ClockAtom {
  std::string clock;
  Cmp cmp = Cmp::Le;
  std::uint32_t bound = 0;

  bool operator==(const ClockAtom&) const = default;
};

struct ClockConstraint {
  std::vector<ClockAtom> atoms;  // empty conjunction = true

  bool is_true() const { return atoms.empty(); }
  // Evaluates the conjunction; `value` maps a clock name to its valuation.
  template <typename Fn>
  bool satisfied(Fn&& value) const {
    for (const auto& a : atoms) {
      std::uint64_t v = value(a.clock);
      switch (a.cmp) {
        case Cmp::Le: if (!(v <= a.bound)) return false; break;
        case Cmp::Ge: if (!(v >= a.bound)) return false; break;
        case Cmp::Eq: if (!(v == a.bound)) return false; break;
        case Cmp::Lt: if (!(v < a.bound)) return false; break;
        case Cmp::Gt: if (!(v > a.bound)) return false; break;
      }
    }
    return true;
  }

  bool operator==(const ClockConstraint&) const = default;
};

// ── Agents ──────────────────────────────────────────────────────────────────

struct Branch {
  Rational probability;
  std::vector<std::string> resets;  // clock names, sorted
  std::string target;

  bool operator==(const Branch&) const = default;
};

struct Edge {
  std::string source;
  std::string action;
  ClockConstraint guard;
  std::vector<Branch> branches;

  bool operator==(const Edge&) const = default;
};

struct Location {
  std::string name;
  ClockConstraint invariant;
  std::vector<std::string> labels;    // atomic propositions holding here
  std::vector<std::string> protocol;  // actions available here (may be empty)

  bool operator==(const Location&) const = default;
};

struct Agent {
  std::string name;
  std::vector<std::string> clocks;
  std::string initial;
  std::vector<Location> locations;  // declaration order is canonical
  std::vector<Edge> edges;          // declaration order is canonical

  const Location* find_location(const std::string& loc) const;
  std::optional<std::uint32_t> location_index(const std::string& loc) const;
  bool has_clock(const std::string& clock) const;

  bool operator==(const Agent&) const = default;
};

// ── Networks ────────────────────────────────────────────────────────────────
// An action is shared iff it occurs in the protocols of two or more agents;
// shared actions synchronize all owners, private ones interleave.

struct Network {
  std::vector<Agent> agents;

  std::optional<std::uint32_t> agent_index(const std::string& name) const;

  // action -> owning agent indices, in agent order. Every action that occurs
  // in some protocol appears here.
  std::map<std::string, std::vector<std::uint32_t>> action_owners() const;

  // proposition -> owning agent index. Each proposition belongs to exactly
  // one agent in a valid network.
  std::map<std::string, std::uint32_t> proposition_owners() const;

  bool operator==(const Network&) const = default;
};

// ── Formulas' numeric side ──────────────────────────────────────────────────

// Closed interval of natural time bounds; upper may be infinite.
struct TimeInterval {
  std::uint32_t lower = 0;
  std::optional<std::uint32_t> upper;  // nullopt = unbounded

  static TimeInterval bounded(std::uint32_t lo, std::uint32_t hi) { return {lo, hi}; }
  static TimeInterval unbounded(std::uint32_t lo) { return {lo, std::nullopt}; }

  bool contains(std::uint64_t t) const {
    return t >= lower && (!upper || t <= *upper);
  }

  bool operator==(const TimeInterval&) const = default;
};

enum class Rel : std::uint8_t { Lt, Le, Ge, Gt };
std::string rel_to_string(Rel r);

struct ProbBound {
  Rel rel = Rel::Ge;
  Rational threshold;

  bool operator==(const ProbBound&) const = default;
};

// ── Validation ──────────────────────────────────────────────────────────────

enum class Severity : std::uint8_t { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string element;  // offending agent/location/edge/clock
  std::string message;  // names the violated invariant
};

// Structural checks for a single agent: closed non-diagonal constraints,
// natural constants, branch distributions summing to one, protocol/edge
// agreement, known locations and clocks. Unsatisfiable guards on protocol
// actions are legal but reported as warnings.
std::vector<Diagnostic> validate_agent(const Agent& agent);

// Network-level checks: unique agent names, clock disjointness, proposition
// ownership, shared-action protocol consistency. Assumes each agent is
// individually valid.
std::vector<Diagnostic> validate_network(const Network& network);

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::Error) return true;
  return false;
}

// All diagnostics for a network: per-agent first (agent order), then
// network-level.
std::vector<Diagnostic> validate_all(const Network& network);

// Largest constant each clock is compared against in any guard or invariant;
// 0 for clocks never compared. Keys cover every declared clock.
std::map<std::string, std::uint32_t> max_constants(const Network& network);

}  // namespace pstctl
