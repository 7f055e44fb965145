// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Formula AST. The grammar has two layers: state formulas (atoms, boolean
// connectives, the coalition modality) and strategy-scoped path constraints
// (boolean combinations of probability-bounded until/release). Surface trees
// may contain derived operators (F, G, |, ->); `desugar` rewrites them into
// the core kinds.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include <pstctl/model.hpp>

namespace pstctl {

enum class FKind : std::uint8_t {
  // state layer
  Atom,       // named proposition
  True,
  False,
  Not,        // child: lhs
  And,        // children: lhs, rhs
  Or,         // surface only
  Implies,    // surface only
  Coalition,  // agents + body (strategy layer)

  // strategy layer
  GEmbed,     // wraps a state-layer formula
  GNot,
  GAnd,
  GPUntil,    // bound, lhs U_interval rhs
  GPRelease,  // bound, lhs R_interval rhs
  GPFinally,  // surface only: bound, F_interval lhs
  GPGlobally, // surface only: bound, G_interval lhs
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind;
  std::string atom;                 // Atom
  std::vector<std::string> agents;  // Coalition (may be empty)
  ProbBound bound;                  // GP* nodes
  TimeInterval interval;            // GP* nodes
  FormulaPtr lhs, rhs;

  bool is_state_layer() const {
    return kind == FKind::Atom || kind == FKind::True || kind == FKind::False ||
           kind == FKind::Not || kind == FKind::And || kind == FKind::Or ||
           kind == FKind::Implies || kind == FKind::Coalition;
  }
};

// ── Constructors ────────────────────────────────────────────────────────────

FormulaPtr f_atom(std::string name);
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_coalition(std::vector<std::string> agents, FormulaPtr body);

FormulaPtr g_embed(FormulaPtr state);
FormulaPtr g_not(FormulaPtr a);
FormulaPtr g_and(FormulaPtr a, FormulaPtr b);
FormulaPtr g_until(ProbBound bound, FormulaPtr lhs, TimeInterval i, FormulaPtr rhs);
FormulaPtr g_release(ProbBound bound, FormulaPtr lhs, TimeInterval i, FormulaPtr rhs);
FormulaPtr g_finally(ProbBound bound, TimeInterval i, FormulaPtr body);
FormulaPtr g_globally(ProbBound bound, TimeInterval i, FormulaPtr body);

// ── Operations ──────────────────────────────────────────────────────────────

// Rewrites derived operators into core kinds:
//   F_I g  =>  true U_I g        G_I g  =>  false R_I g
//   a | b  =>  !(!a & !b)        a -> b =>  !(a & !b)
// Idempotent; core trees pass through unchanged.
FormulaPtr desugar(const FormulaPtr& f);

// True iff no surface-only kind occurs anywhere in the tree.
bool is_core(const FormulaPtr& f);

// Structural equality.
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

// True iff the strategy-layer tree contains a probability-bounded operator.
bool contains_prob_operator(const FormulaPtr& f);

}  // namespace pstctl
