// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Asynchronous product of a network and its digital-clocks finite MDP.
// States are (location vector, integer clock valuation) with every clock
// capped at its largest compared constant plus one; moves are either a tick
// (all clocks advance by one, subject to invariants) or a joint action
// (private, or synchronized across all owners of a shared action).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <pstctl/model.hpp>

namespace pstctl {

using StateId = std::uint32_t;

// Name given to the implicit self-loop on deadlocked states.
inline constexpr const char* kStallAction = "tau_stall";

struct DigitalState {
  std::vector<std::uint32_t> locations;  // per agent, network order
  std::vector<std::uint32_t> clocks;     // global clock order

  bool operator==(const DigitalState&) const = default;
};

struct OwnerView {
  std::uint32_t agent;
  std::uint32_t location;  // owner's local location at move time

  bool operator==(const OwnerView&) const = default;
};

struct DigitalMove {
  enum class Kind : std::uint8_t { Tick, Act } kind = Kind::Act;
  std::string action;             // empty for ticks
  std::vector<OwnerView> owners;  // agent order; empty for ticks and stalls
  std::vector<std::pair<Rational, StateId>> branches;
  bool stall = false;

  bool is_tick() const { return kind == Kind::Tick; }
};

// One joint edge at a global location: a specific combination of one
// participating edge per owner of the action (a single edge for private
// actions). Guards are evaluated later, per clock valuation.
struct JointEdge {
  std::string action;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> participants;  // (agent, edge index)
};

// Location-level joint-edge table, memoized per global location vector.
// An action is listed iff it is in every owner's protocol at the current
// location and every owner has at least one edge on it there; each
// combination of eligible owner edges is a separate entry.
class ProductTable {
 public:
  explicit ProductTable(const Network& network);

  const std::vector<JointEdge>& joint_edges(const std::vector<std::uint32_t>& locations) const;

  const std::map<std::string, std::vector<std::uint32_t>>& owners() const { return owners_; }

 private:
  const Network* net_;
  std::map<std::string, std::vector<std::uint32_t>> owners_;
  mutable std::unordered_map<std::string, std::vector<JointEdge>> cache_;
};

struct DigitalMdp {
  std::shared_ptr<const Network> network;

  std::vector<DigitalState> states;  // index = StateId, BFS discovery order
  StateId initial = 0;
  std::vector<std::vector<DigitalMove>> moves;     // per state
  std::vector<std::vector<std::uint16_t>> labels;  // per state, sorted proposition ids
  std::vector<std::string> propositions;           // id -> name, sorted

  std::vector<std::string> clock_names;  // global order: agents, then declaration
  std::vector<std::uint32_t> clock_caps; // max constant + 1
  std::vector<StateId> stall_states;     // states that received the implicit stall loop

  std::size_t state_count() const { return states.size(); }
  bool has_label(StateId s, std::uint16_t prop) const;
  std::vector<char> label_set(const std::string& prop) const;  // indicator over states
};

inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

// Symbolic product description (location-level joint edges).
ProductTable build_product(const Network& network);

// Builds the reachable digital MDP. Deterministic: identical networks yield
// identical state orderings. Throws ResourceError when the reachable state
// count exceeds `state_cap` and ModelError if a probabilistic branch lands in
// a state violating its target invariant.
DigitalMdp digitize(const Network& network, std::uint64_t state_cap = kDefaultStateCap);

struct MdpStats {
  std::uint64_t states = 0;
  std::uint64_t moves = 0;  // ticks included
  std::uint64_t ticks = 0;

  bool operator==(const MdpStats&) const = default;
};

MdpStats reachable_stats(const DigitalMdp& mdp);

// Deterministic text dump, one line per state and per move; suitable for
// diffing in tests.
void dump_mdp(const DigitalMdp& mdp, std::ostream& os);

}  // namespace pstctl
