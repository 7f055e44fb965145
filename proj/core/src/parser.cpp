// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <pstctl/parser.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

#include <pstctl/errors.hpp>

namespace pstctl {

namespace {

// ── Lexer ───────────────────────────────────────────────────────────────────

enum class Tok : std::uint8_t {
  Ident, Number,
  LBrace, RBrace, LBracket, RBracket, LParen, RParen,
  Comma, Semicolon, Colon,
  Arrow,       // ->
  CoalL,       // <<
  CoalR,       // >>
  Bang, Amp, Pipe,
  Le, Ge, Lt, Gt, Eq,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : src_(text) { scan_all(); }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  Token next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(msg + " (near '" + (t.kind == Tok::End ? "<end>" : t.text) + "')", t.line,
                     t.col);
  }

 private:
  void scan_all() {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string s, int l, int c) {
      tokens_.push_back({k, std::move(s), l, c});
    };
    while (i < src_.size()) {
      char c = src_[i];
      if (c == '\n') { ++line; col = 1; ++i; continue; }
      if (std::isspace(static_cast<unsigned char>(c))) { ++col; ++i; continue; }
      if (c == '/' && i + 1 < src_.size() && src_[i + 1] == '/') {
        while (i < src_.size() && src_[i] != '\n') ++i;
        continue;
      }
      int tl = line, tc = col;
      auto two = [&](char a, char b) {
        return c == a && i + 1 < src_.size() && src_[i + 1] == b;
      };
      if (two('-', '>')) { push(Tok::Arrow, "->", tl, tc); i += 2; col += 2; continue; }
      if (two('<', '<')) { push(Tok::CoalL, "<<", tl, tc); i += 2; col += 2; continue; }
      if (two('>', '>')) { push(Tok::CoalR, ">>", tl, tc); i += 2; col += 2; continue; }
      if (two('<', '=')) { push(Tok::Le, "<=", tl, tc); i += 2; col += 2; continue; }
      if (two('>', '=')) { push(Tok::Ge, ">=", tl, tc); i += 2; col += 2; continue; }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        bool seen_frac = false;
        while (j < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[j])) ||
                ((src_[j] == '/' || src_[j] == '.') && !seen_frac &&
                 j + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j + 1])) &&
                 (seen_frac = true)))) {
          ++j;
        }
        push(Tok::Number, src_.substr(i, j - i), tl, tc);
        col += int(j - i);
        i = j;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
          ++j;
        push(Tok::Ident, src_.substr(i, j - i), tl, tc);
        col += int(j - i);
        i = j;
        continue;
      }
      switch (c) {
        case '{': push(Tok::LBrace, "{", tl, tc); break;
        case '}': push(Tok::RBrace, "}", tl, tc); break;
        case '[': push(Tok::LBracket, "[", tl, tc); break;
        case ']': push(Tok::RBracket, "]", tl, tc); break;
        case '(': push(Tok::LParen, "(", tl, tc); break;
        case ')': push(Tok::RParen, ")", tl, tc); break;
        case ',': push(Tok::Comma, ",", tl, tc); break;
        case ';': push(Tok::Semicolon, ";", tl, tc); break;
        case ':': push(Tok::Colon, ":", tl, tc); break;
        case '!': push(Tok::Bang, "!", tl, tc); break;
        case '&': push(Tok::Amp, "&", tl, tc); break;
        case '|': push(Tok::Pipe, "|", tl, tc); break;
        case '<': push(Tok::Lt, "<", tl, tc); break;
        case '>': push(Tok::Gt, ">", tl, tc); break;
        case '=': push(Tok::Eq, "=", tl, tc); break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
      }
      ++i;
      ++col;
    }
    tokens_.push_back({Tok::End, "", line, col});
  }

  std::string src_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ── Model parser ────────────────────────────────────────────────────────────

class ModelParser {
 public:
  explicit ModelParser(const std::string& text) : lex_(text) {}

  Network parse() {
    Network net;
    while (lex_.peek().kind != Tok::End) {
      expect_keyword("agent");
      net.agents.push_back(parse_agent());
    }
    if (net.agents.empty()) lex_.fail("expected at least one agent");
    return net;
  }

 private:
  Token expect(Tok k, const std::string& what) {
    if (lex_.peek().kind != k) lex_.fail("expected " + what);
    return lex_.next();
  }
  void expect_keyword(const std::string& kw) {
    if (!(lex_.peek().kind == Tok::Ident && lex_.peek().text == kw))
      lex_.fail("expected '" + kw + "'");
    lex_.next();
  }
  bool at_keyword(const std::string& kw) const {
    return lex_.peek().kind == Tok::Ident && lex_.peek().text == kw;
  }
  std::string ident(const std::string& what) { return expect(Tok::Ident, what).text; }

  std::vector<std::string> ident_list(const std::string& what) {
    std::vector<std::string> out{ident(what)};
    while (lex_.peek().kind == Tok::Comma) {
      lex_.next();
      out.push_back(ident(what));
    }
    return out;
  }

  std::uint32_t natural() {
    Token t = expect(Tok::Number, "a natural number");
    if (t.text.find('/') != std::string::npos || t.text.find('.') != std::string::npos)
      Lexer::fail_at(t, "expected an integer constant, got '" + t.text + "'");
    try {
      unsigned long v = std::stoul(t.text);
      if (v > 0xffffffffUL) throw std::out_of_range("");
      return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      Lexer::fail_at(t, "integer constant out of range: '" + t.text + "'");
    }
  }

  Rational probability() {
    Token t = expect(Tok::Number, "a probability");
    Rational r;
    try {
      r = rational_from_string(t.text);
    } catch (const std::invalid_argument& e) {
      Lexer::fail_at(t, e.what());
    }
    return r;
  }

  ClockConstraint constraint() {
    ClockConstraint cc;
    if (at_keyword("true")) {
      lex_.next();
      return cc;
    }
    cc.atoms.push_back(atom());
    while (lex_.peek().kind == Tok::Amp) {
      lex_.next();
      cc.atoms.push_back(atom());
    }
    return cc;
  }

  ClockAtom atom() {
    ClockAtom a;
    a.clock = ident("a clock name");
    switch (lex_.peek().kind) {
      case Tok::Le: a.cmp = Cmp::Le; break;
      case Tok::Ge: a.cmp = Cmp::Ge; break;
      case Tok::Eq: a.cmp = Cmp::Eq; break;
      case Tok::Lt: a.cmp = Cmp::Lt; break;
      case Tok::Gt: a.cmp = Cmp::Gt; break;
      default: lex_.fail("expected a comparator (<=, >=, =)");
    }
    lex_.next();
    a.bound = natural();
    return a;
  }

  Agent parse_agent() {
    Agent agent;
    agent.name = ident("an agent name");
    expect(Tok::LBrace, "'{'");
    if (at_keyword("clocks")) {
      lex_.next();
      agent.clocks = ident_list("a clock name");
      expect(Tok::Semicolon, "';'");
    }
    expect_keyword("init");
    agent.initial = ident("a location name");
    expect(Tok::Semicolon, "';'");
    while (at_keyword("loc")) {
      lex_.next();
      parse_location(agent);
    }
    expect(Tok::RBrace, "'}'");
    return agent;
  }

  void parse_location(Agent& agent) {
    Location loc;
    loc.name = ident("a location name");
    if (lex_.peek().kind == Tok::LBracket) {
      lex_.next();
      loc.invariant = constraint();
      expect(Tok::RBracket, "']'");
    }
    expect(Tok::LBrace, "'{'");
    if (at_keyword("labels")) {
      lex_.next();
      loc.labels = ident_list("a proposition");
      expect(Tok::Semicolon, "';'");
    }
    if (at_keyword("protocol")) {
      lex_.next();
      loc.protocol = ident_list("an action");
      expect(Tok::Semicolon, "';'");
    }
    while (at_keyword("on")) {
      lex_.next();
      agent.edges.push_back(parse_edge(loc.name));
    }
    expect(Tok::RBrace, "'}'");
    agent.locations.push_back(std::move(loc));
  }

  Edge parse_edge(const std::string& source) {
    Edge e;
    e.source = source;
    e.action = ident("an action name");
    if (at_keyword("when")) {
      lex_.next();
      e.guard = constraint();
    }
    expect_keyword("goto");
    expect(Tok::LBrace, "'{'");
    while (lex_.peek().kind != Tok::RBrace) {
      Branch b;
      b.probability = probability();
      expect(Tok::Colon, "':'");
      if (at_keyword("reset")) {
        lex_.next();
        expect(Tok::LBrace, "'{'");
        if (lex_.peek().kind != Tok::RBrace) b.resets = ident_list("a clock name");
        expect(Tok::RBrace, "'}'");
        std::sort(b.resets.begin(), b.resets.end());
        b.resets.erase(std::unique(b.resets.begin(), b.resets.end()), b.resets.end());
      }
      expect(Tok::Arrow, "'->'");
      b.target = ident("a location name");
      expect(Tok::Semicolon, "';'");
      e.branches.push_back(std::move(b));
    }
    expect(Tok::RBrace, "'}'");
    if (e.branches.empty()) lex_.fail("edge needs at least one branch");
    return e;
  }

  Lexer lex_;
};

// ── Formula parser ──────────────────────────────────────────────────────────
// Parses one unified expression layer, then stratifies it into the state and
// strategy layers; boolean structure over probability operators is only legal
// with ! and &, and only under a coalition modality.

const char* kReserved[] = {"P", "U", "R", "F", "G", "inf"};

bool is_reserved(const std::string& s) {
  return std::find(std::begin(kReserved), std::end(kReserved), s) != std::end(kReserved);
}

class FormulaParser {
 public:
  explicit FormulaParser(const std::string& text) : lex_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = expr();
    if (lex_.peek().kind != Tok::End) lex_.fail("trailing input after formula");
    return stratify_state(f);
  }

 private:
  // raw surface tree; state/strategy kinds are separated afterwards
  FormulaPtr expr() { return implies(); }

  FormulaPtr implies() {
    FormulaPtr lhs = disj();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.next();
      return f_implies(lhs, implies());
    }
    return lhs;
  }

  FormulaPtr disj() {
    FormulaPtr lhs = conj();
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.next();
      lhs = f_or(lhs, conj());
    }
    return lhs;
  }

  FormulaPtr conj() {
    FormulaPtr lhs = unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.next();
      lhs = f_and(lhs, unary());
    }
    return lhs;
  }

  FormulaPtr unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Bang:
        lex_.next();
        return f_not(unary());
      case Tok::LParen: {
        lex_.next();
        FormulaPtr f = expr();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::CoalL: {
        lex_.next();
        std::vector<std::string> agents;
        if (lex_.peek().kind == Tok::Ident) {
          agents.push_back(lex_.next().text);
          while (lex_.peek().kind == Tok::Comma) {
            lex_.next();
            agents.push_back(expect(Tok::Ident, "an agent name").text);
          }
        }
        expect(Tok::CoalR, "'>>'");
        return f_coalition(std::move(agents), unary());
      }
      case Tok::Ident:
        if (t.text == "P") {
          lex_.next();
          return prob_node();
        }
        if (t.text == "true") { lex_.next(); return f_true(); }
        if (t.text == "false") { lex_.next(); return f_false(); }
        if (is_reserved(t.text)) lex_.fail("'" + t.text + "' is reserved");
        return f_atom(lex_.next().text);
      default:
        lex_.fail("expected a formula");
    }
  }

  FormulaPtr prob_node() {
    ProbBound bound;
    switch (lex_.peek().kind) {
      case Tok::Lt: bound.rel = Rel::Lt; break;
      case Tok::Le: bound.rel = Rel::Le; break;
      case Tok::Ge: bound.rel = Rel::Ge; break;
      case Tok::Gt: bound.rel = Rel::Gt; break;
      case Tok::Eq: lex_.fail("'=' is not a valid probability relation (use <, <=, >=, >)");
      default: lex_.fail("expected a probability relation after P");
    }
    lex_.next();
    Token t = expect(Tok::Number, "a probability threshold");
    try {
      bound.threshold = rational_from_string(t.text);
    } catch (const std::invalid_argument& e) {
      Lexer::fail_at(t, e.what());
    }
    if (!is_probability(bound.threshold))
      Lexer::fail_at(t, "probability threshold outside [0, 1]");

    if (at_ident("F")) {
      lex_.next();
      TimeInterval i = interval();
      return g_finally(bound, i, unary());
    }
    if (at_ident("G")) {
      lex_.next();
      TimeInterval i = interval();
      return g_globally(bound, i, unary());
    }
    if (lex_.peek().kind == Tok::LParen) {
      lex_.next();
      FormulaPtr lhs = expr();
      if (at_ident("U") || at_ident("R")) {
        bool is_until = lex_.next().text == "U";
        TimeInterval i = interval();
        FormulaPtr rhs = expr();
        expect(Tok::RParen, "')'");
        return is_until ? g_until(bound, lhs, i, rhs) : g_release(bound, lhs, i, rhs);
      }
      expect(Tok::RParen, "')'");
      return until_tail(bound, lhs);
    }
    return until_tail(bound, unary());
  }

  FormulaPtr until_tail(ProbBound bound, FormulaPtr lhs) {
    if (!(at_ident("U") || at_ident("R")))
      lex_.fail("expected a path operator (U, R) after the left operand");
    bool is_until = lex_.next().text == "U";
    TimeInterval i = interval();
    FormulaPtr rhs = unary();
    return is_until ? g_until(bound, lhs, i, rhs) : g_release(bound, lhs, i, rhs);
  }

  TimeInterval interval() {
    expect(Tok::LBracket, "'['");
    std::uint32_t lo = natural();
    expect(Tok::Comma, "','");
    TimeInterval out;
    if (at_ident("inf")) {
      lex_.next();
      out = TimeInterval::unbounded(lo);
    } else {
      std::uint32_t hi = natural();
      if (lo > hi) lex_.fail("empty time interval [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
      out = TimeInterval::bounded(lo, hi);
    }
    expect(Tok::RBracket, "']'");
    return out;
  }

  std::uint32_t natural() {
    Token t = expect(Tok::Number, "a natural number");
    if (t.text.find('/') != std::string::npos || t.text.find('.') != std::string::npos)
      Lexer::fail_at(t, "time bounds must be integers, got '" + t.text + "'");
    try {
      unsigned long v = std::stoul(t.text);
      if (v > 0xffffffffUL) throw std::out_of_range("");
      return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      Lexer::fail_at(t, "integer constant out of range: '" + t.text + "'");
    }
  }

  bool at_ident(const std::string& s) const {
    return lex_.peek().kind == Tok::Ident && lex_.peek().text == s;
  }
  Token expect(Tok k, const std::string& what) {
    if (lex_.peek().kind != k) lex_.fail("expected " + what);
    return lex_.next();
  }

  // ── stratification ──

  static bool has_prob(const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::GPUntil:
      case FKind::GPRelease:
      case FKind::GPFinally:
      case FKind::GPGlobally:
        return true;
      case FKind::Not:
      case FKind::And:
      case FKind::Or:
      case FKind::Implies:
        return (f->lhs && has_prob(f->lhs)) || (f->rhs && has_prob(f->rhs));
      default:
        return false;  // Coalition bodies are self-contained
    }
  }

  FormulaPtr stratify_state(const FormulaPtr& f) {
    if (has_prob(f))
      throw ParseError("probability operator outside a coalition modality (use <<...>>)", 1, 1);
    switch (f->kind) {
      case FKind::Atom:
      case FKind::True:
      case FKind::False:
        return f;
      case FKind::Not: return f_not(stratify_state(f->lhs));
      case FKind::And: return f_and(stratify_state(f->lhs), stratify_state(f->rhs));
      case FKind::Or: return f_or(stratify_state(f->lhs), stratify_state(f->rhs));
      case FKind::Implies: return f_implies(stratify_state(f->lhs), stratify_state(f->rhs));
      case FKind::Coalition: return f_coalition(f->agents, stratify_gamma(f->lhs));
      default:
        throw ParseError("internal: unexpected node in state layer", 1, 1);
    }
  }

  FormulaPtr stratify_gamma(const FormulaPtr& f) {
    if (!has_prob(f) && f->kind != FKind::Coalition && f->is_state_layer())
      return g_embed(stratify_state(f));
    switch (f->kind) {
      case FKind::Coalition:
        return g_embed(stratify_state(f));
      case FKind::Not:
        return g_not(stratify_gamma(f->lhs));
      case FKind::And:
        return g_and(stratify_gamma(f->lhs), stratify_gamma(f->rhs));
      case FKind::Or:
      case FKind::Implies:
        throw ParseError("only ! and & may combine path constraints under <<...>>", 1, 1);
      case FKind::GPUntil:
        return g_until(f->bound, stratify_gamma(f->lhs), f->interval, stratify_gamma(f->rhs));
      case FKind::GPRelease:
        return g_release(f->bound, stratify_gamma(f->lhs), f->interval, stratify_gamma(f->rhs));
      case FKind::GPFinally:
        return g_finally(f->bound, f->interval, stratify_gamma(f->lhs));
      case FKind::GPGlobally:
        return g_globally(f->bound, f->interval, stratify_gamma(f->lhs));
      default:
        throw ParseError("internal: unexpected node in strategy layer", 1, 1);
    }
  }

  Lexer lex_;
};

}  // namespace

Network parse_model(const std::string& text) {
  Network net = ModelParser(text).parse();
  auto diags = validate_all(net);
  if (has_errors(diags)) {
    std::ostringstream os;
    os << "model validation failed:";
    for (const auto& d : diags)
      if (d.severity == Severity::Error) os << "\n  " << d.element << ": " << d.message;
    throw ModelError(os.str());
  }
  return net;
}

FormulaPtr parse_formula(const std::string& text) { return FormulaParser(text).parse(); }

}  // namespace pstctl
