// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Formula construction, desugaring, structural equality, and canonical
// printing for models and formulas.

#include <pstctl/printer.hpp>

#include <sstream>

#include <pstctl/errors.hpp>

namespace pstctl {

// ── Formula constructors ────────────────────────────────────────────────────

namespace {
FormulaPtr make(FKind kind, FormulaPtr lhs = nullptr, FormulaPtr rhs = nullptr) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}
}  // namespace

FormulaPtr f_atom(std::string name) {
  auto f = std::make_shared<Formula>();
  f->kind = FKind::Atom;
  f->atom = std::move(name);
  return f;
}
FormulaPtr f_true() { return make(FKind::True); }
FormulaPtr f_false() { return make(FKind::False); }
FormulaPtr f_not(FormulaPtr a) { return make(FKind::Not, std::move(a)); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return make(FKind::And, std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return make(FKind::Or, std::move(a), std::move(b)); }
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return make(FKind::Implies, std::move(a), std::move(b));
}
FormulaPtr f_coalition(std::vector<std::string> agents, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = FKind::Coalition;
  f->agents = std::move(agents);
  f->lhs = std::move(body);
  return f;
}
FormulaPtr g_embed(FormulaPtr state) { return make(FKind::GEmbed, std::move(state)); }
FormulaPtr g_not(FormulaPtr a) { return make(FKind::GNot, std::move(a)); }
FormulaPtr g_and(FormulaPtr a, FormulaPtr b) { return make(FKind::GAnd, std::move(a), std::move(b)); }

namespace {
FormulaPtr make_prob(FKind kind, ProbBound bound, TimeInterval i, FormulaPtr lhs, FormulaPtr rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->bound = std::move(bound);
  f->interval = i;
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}
}  // namespace

FormulaPtr g_until(ProbBound bound, FormulaPtr lhs, TimeInterval i, FormulaPtr rhs) {
  return make_prob(FKind::GPUntil, std::move(bound), i, std::move(lhs), std::move(rhs));
}
FormulaPtr g_release(ProbBound bound, FormulaPtr lhs, TimeInterval i, FormulaPtr rhs) {
  return make_prob(FKind::GPRelease, std::move(bound), i, std::move(lhs), std::move(rhs));
}
FormulaPtr g_finally(ProbBound bound, TimeInterval i, FormulaPtr body) {
  return make_prob(FKind::GPFinally, std::move(bound), i, std::move(body), nullptr);
}
FormulaPtr g_globally(ProbBound bound, TimeInterval i, FormulaPtr body) {
  return make_prob(FKind::GPGlobally, std::move(bound), i, std::move(body), nullptr);
}

// ── Desugar ─────────────────────────────────────────────────────────────────

FormulaPtr desugar(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::True:
    case FKind::False:
      return f;
    case FKind::Not: return f_not(desugar(f->lhs));
    case FKind::And: return f_and(desugar(f->lhs), desugar(f->rhs));
    case FKind::Or: {
      auto a = desugar(f->lhs), b = desugar(f->rhs);
      return f_not(f_and(f_not(a), f_not(b)));
    }
    case FKind::Implies: {
      auto a = desugar(f->lhs), b = desugar(f->rhs);
      return f_not(f_and(a, f_not(b)));
    }
    case FKind::Coalition: return f_coalition(f->agents, desugar(f->lhs));
    case FKind::GEmbed: return g_embed(desugar(f->lhs));
    case FKind::GNot: return g_not(desugar(f->lhs));
    case FKind::GAnd: return g_and(desugar(f->lhs), desugar(f->rhs));
    case FKind::GPUntil:
      return g_until(f->bound, desugar(f->lhs), f->interval, desugar(f->rhs));
    case FKind::GPRelease:
      return g_release(f->bound, desugar(f->lhs), f->interval, desugar(f->rhs));
    case FKind::GPFinally:
      return g_until(f->bound, g_embed(f_true()), f->interval, desugar(f->lhs));
    case FKind::GPGlobally:
      return g_release(f->bound, g_embed(f_false()), f->interval, desugar(f->lhs));
  }
  throw Error("internal: unknown formula kind");
}

bool is_core(const FormulaPtr& f) {
  if (!f) return true;
  switch (f->kind) {
    case FKind::Or:
    case FKind::Implies:
    case FKind::GPFinally:
    case FKind::GPGlobally:
      return false;
    default:
      return is_core(f->lhs) && is_core(f->rhs);
  }
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->atom != b->atom || a->agents != b->agents) return false;
  switch (a->kind) {
    case FKind::GPUntil:
    case FKind::GPRelease:
    case FKind::GPFinally:
    case FKind::GPGlobally:
      if (!(a->bound == b->bound) || !(a->interval == b->interval)) return false;
      break;
    default:
      break;
  }
  return formula_equal(a->lhs, b->lhs) && formula_equal(a->rhs, b->rhs);
}

bool contains_prob_operator(const FormulaPtr& f) {
  if (!f) return false;
  switch (f->kind) {
    case FKind::GPUntil:
    case FKind::GPRelease:
    case FKind::GPFinally:
    case FKind::GPGlobally:
      return true;
    case FKind::GEmbed:
      return false;  // embedded state formulas resolve their own coalitions
    case FKind::GNot:
    case FKind::GAnd:
      return contains_prob_operator(f->lhs) || contains_prob_operator(f->rhs);
    default:
      return false;
  }
}

// ── Model printing ──────────────────────────────────────────────────────────

namespace {

std::string print_constraint(const ClockConstraint& cc) {
  if (cc.is_true()) return "true";
  std::string out;
  for (std::size_t i = 0; i < cc.atoms.size(); ++i) {
    if (i) out += " & ";
    out += cc.atoms[i].clock + " " + cmp_to_string(cc.atoms[i].cmp) + " " +
           std::to_string(cc.atoms[i].bound);
  }
  return out;
}

void print_list(std::ostream& os, const std::vector<std::string>& items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ", ";
    os << items[i];
  }
}

}  // namespace

std::string print_model(const Network& network) {
  std::ostringstream os;
  for (const auto& agent : network.agents) {
    os << "agent " << agent.name << " {\n";
    if (!agent.clocks.empty()) {
      os << "  clocks ";
      print_list(os, agent.clocks);
      os << ";\n";
    }
    os << "  init " << agent.initial << ";\n";
    for (const auto& loc : agent.locations) {
      os << "  loc " << loc.name;
      if (!loc.invariant.is_true()) os << " [" << print_constraint(loc.invariant) << "]";
      os << " {\n";
      if (!loc.labels.empty()) {
        os << "    labels ";
        print_list(os, loc.labels);
        os << ";\n";
      }
      if (!loc.protocol.empty()) {
        os << "    protocol ";
        print_list(os, loc.protocol);
        os << ";\n";
      }
      for (const auto& e : agent.edges) {
        if (e.source != loc.name) continue;
        os << "    on " << e.action;
        if (!e.guard.is_true()) os << " when " << print_constraint(e.guard);
        os << " goto {";
        for (const auto& b : e.branches) {
          os << " " << rational_to_string(b.probability) << ":";
          if (!b.resets.empty()) {
            os << " reset {";
            for (std::size_t i = 0; i < b.resets.size(); ++i)
              os << (i ? ", " : "") << b.resets[i];
            os << "}";
          }
          os << " -> " << b.target << ";";
        }
        os << " }\n";
      }
      os << "  }\n";
    }
    os << "}\n";
  }
  return os.str();
}

// ── Formula printing ────────────────────────────────────────────────────────

std::string print_interval(const TimeInterval& i) {
  return "[" + std::to_string(i.lower) + "," + (i.upper ? std::to_string(*i.upper) : "inf") + "]";
}

std::string print_bound(const ProbBound& b) {
  return "P" + rel_to_string(b.rel) + rational_to_string(b.threshold);
}

namespace {

// precedence: atoms/unary tighter than &, & tighter than |, | tighter than ->
int prec(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Implies: return 1;
    case FKind::Or: return 2;
    case FKind::And:
    case FKind::GAnd: return 3;
    case FKind::GEmbed: return prec(f->lhs);
    default: return 4;
  }
}

// Parenthesizes whenever the node binds looser than the context requires.
void print_rec(std::ostream& os, const FormulaPtr& f, int min_prec) {
  if (prec(f) < min_prec) {
    os << "(";
    print_rec(os, f, 0);
    os << ")";
    return;
  }
  switch (f->kind) {
    case FKind::Atom: os << f->atom; return;
    case FKind::True: os << "true"; return;
    case FKind::False: os << "false"; return;
    case FKind::Not:
    case FKind::GNot:
      os << "!";
      print_rec(os, f->lhs, 4);
      return;
    case FKind::And:
    case FKind::GAnd:
      print_rec(os, f->lhs, 3);
      os << " & ";
      print_rec(os, f->rhs, 4);  // left-assoc: right child binds tighter
      return;
    case FKind::Or:
      print_rec(os, f->lhs, 2);
      os << " | ";
      print_rec(os, f->rhs, 3);
      return;
    case FKind::Implies:
      print_rec(os, f->lhs, 2);
      os << " -> ";
      print_rec(os, f->rhs, 1);  // right-assoc
      return;
    case FKind::Coalition: {
      os << "<<";
      for (std::size_t i = 0; i < f->agents.size(); ++i) os << (i ? "," : "") << f->agents[i];
      os << ">> ";
      print_rec(os, f->lhs, 4);
      return;
    }
    case FKind::GEmbed:
      print_rec(os, f->lhs, min_prec);
      return;
    case FKind::GPUntil:
    case FKind::GPRelease:
      os << print_bound(f->bound) << " (";
      print_rec(os, f->lhs, 0);
      os << (f->kind == FKind::GPUntil ? " U" : " R") << print_interval(f->interval) << " ";
      print_rec(os, f->rhs, 0);
      os << ")";
      return;
    case FKind::GPFinally:
    case FKind::GPGlobally:
      os << print_bound(f->bound) << " " << (f->kind == FKind::GPFinally ? "F" : "G")
         << print_interval(f->interval) << " ";
      print_rec(os, f->lhs, 4);
      return;
  }
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::ostringstream os;
  print_rec(os, f, 0);
  return os.str();
}

}  // namespace pstctl
