// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <pstctl/errors.hpp>
#include <pstctl/parser.hpp>
#include <pstctl/printer.hpp>
#include <pstctl/tgc.hpp>

using namespace pstctl;

TEST_CASE("minimal model: one agent, one location, no edges") {
  Network net = parse_model("agent A { init only; loc only { } }");
  REQUIRE(net.agents.size() == 1);
  CHECK(net.agents[0].name == "A");
  CHECK(net.agents[0].initial == "only");
  CHECK(net.agents[0].locations.size() == 1);
  CHECK(net.agents[0].edges.empty());
}

TEST_CASE("generated benchmark parses to controller plus trains") {
  Network net = parse_model(gen_tgc({2, 30}).model_text);
  REQUIRE(net.agents.size() == 3);
  CHECK(net.agents[0].name == "C");
  CHECK(net.agents[1].name == "train_1");
  CHECK(net.agents[2].name == "train_2");
  CHECK(validate_all(net).empty());
}

TEST_CASE("bad distributions are parse-time errors") {
  const char* text =
      "agent A { init s;"
      "  loc s { protocol go; on go goto { 1/2: -> s; 1/3: -> s; } }"
      "}";
  CHECK_THROWS_WITH_AS(parse_model(text), doctest::Contains("5/6"), ModelError);
}

TEST_CASE("strict and non-integer bounds are rejected") {
  CHECK_THROWS_AS(
      parse_model("agent A { clocks x; init s; loc s { protocol go;"
                  " on go when x < 3 goto { 1: -> s; } } }"),
      ModelError);
  CHECK_THROWS_AS(
      parse_model("agent A { clocks x; init s; loc s [x <= 2.5] { } }"),
      ParseError);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_model("agent A {\n  init s\n  loc s { } }");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);  // missing ';' discovered at 'loc'
  }
}

static void roundtrip_model(const std::string& text) {
  Network first = parse_model(text);
  std::string printed = print_model(first);
  Network second = parse_model(printed);
  CHECK(first == second);
  CHECK(print_model(second) == printed);
}

TEST_CASE("model round-trips: hand corpus") {
  // grammar corners: empty reset sets, multiple clocks, guards, labels,
  // rationals vs decimals, shared actions, empty protocols
  roundtrip_model("agent A { init s; loc s { } }");
  roundtrip_model("agent A { clocks x; init s; loc s [x <= 3] { } }");
  roundtrip_model(
      "agent A { clocks x, y; init s;"
      "  loc s [x <= 2 & y <= 7] { protocol go;"
      "    on go when x >= 1 & y = 2 goto { 0.5: reset {x, y} -> t; 1/2: -> s; } }"
      "  loc t { labels done; }"
      "}");
  roundtrip_model(
      "agent A { init s; loc s { labels p, q; protocol a, b;"
      "  on a goto { 1: -> s; } on b goto { 1/3: -> s; 2/3: -> t; } }"
      " loc t { } }");
  roundtrip_model(
      "agent A { init s; loc s { protocol hop; on hop goto { 1: -> t; } } loc t { } }"
      "agent B { init u; loc u { protocol hop; on hop goto { 1: -> u; } } }");
  roundtrip_model(
      "agent A { clocks c1; init w;"
      "  loc w { protocol leap; on leap when c1 = 4 goto { 1: reset {c1} -> w; } } }");
  roundtrip_model(
      "agent Alpha { init one; loc one { protocol z_9; on z_9 goto { 1: -> two; } }"
      "  loc two { labels fin; } }");
  roundtrip_model(
      "agent M { clocks t0; init a; loc a [t0 <= 1] { protocol go;"
      "  on go when t0 >= 1 goto { 1: reset {t0} -> b; } }"
      "  loc b [t0 <= 1] { protocol go2; on go2 when t0 = 1 goto { 1: reset {t0} -> a; } } }");
  roundtrip_model(
      "agent P { init s; loc s { protocol roll;"
      "  on roll goto { 1/6: -> s; 1/6: -> t; 2/3: -> u; } } loc t { } loc u { labels six; } }");
  roundtrip_model(
      "agent Q { clocks q; init s0; loc s0 { protocol tickle;"
      "  on tickle when q >= 0 goto { 1: -> s0; } } }");
}

TEST_CASE("model round-trips: generated benchmark up to 16 trains") {
  for (std::uint32_t n = 1; n <= 16; ++n)
    roundtrip_model(gen_tgc({n, 30}, /*with_formula=*/false).model_text);
}

// ── formulas ────────────────────────────────────────────────────────────────

TEST_CASE("benchmark formula parses to coalition over bounded finally") {
  FormulaPtr f = parse_formula("<<C>> P>=0.8 F[0,30](passed_1 & passed_2)");
  REQUIRE(f->kind == FKind::Coalition);
  CHECK(f->agents == std::vector<std::string>{"C"});
  const FormulaPtr& g = f->lhs;
  REQUIRE(g->kind == FKind::GPFinally);
  CHECK(g->bound.rel == Rel::Ge);
  CHECK(g->bound.threshold == Rational(4, 5));
  CHECK(g->interval == TimeInterval::bounded(0, 30));
  REQUIRE(g->lhs->kind == FKind::GEmbed);
  CHECK(g->lhs->lhs->kind == FKind::And);
}

TEST_CASE("bare propositions and boolean layer") {
  CHECK(parse_formula("p")->kind == FKind::Atom);
  FormulaPtr f = parse_formula("!p & q | r -> s");
  CHECK(f->kind == FKind::Implies);  // -> binds loosest
  CHECK(f->lhs->kind == FKind::Or);
}

TEST_CASE("until with explicit operands") {
  FormulaPtr f = parse_formula("<<A>> P<0.5 (a U[2,7] b)");
  REQUIRE(f->kind == FKind::Coalition);
  const FormulaPtr& g = f->lhs;
  REQUIRE(g->kind == FKind::GPUntil);
  CHECK(g->bound.rel == Rel::Lt);
  CHECK(g->bound.threshold == Rational(1, 2));
  CHECK(g->interval == TimeInterval::bounded(2, 7));
  CHECK(g->lhs->lhs->atom == "a");
  CHECK(g->rhs->lhs->atom == "b");
}

TEST_CASE("release, unbounded intervals, empty coalition") {
  FormulaPtr f = parse_formula("<<>> P>0.1 (a R[3,inf] b)");
  REQUIRE(f->kind == FKind::Coalition);
  CHECK(f->agents.empty());
  CHECK(f->lhs->kind == FKind::GPRelease);
  CHECK(f->lhs->interval == TimeInterval::unbounded(3));
}

TEST_CASE("formula parse errors") {
  CHECK_THROWS_AS(parse_formula("<<A>> P=0.5 F[0,3] p"), ParseError);   // '=' not a relation
  CHECK_THROWS_AS(parse_formula("P>=0.5 F[0,3] p"), ParseError);        // P outside <<>>
  CHECK_THROWS_AS(parse_formula("<<A>> P>=1.5 F[0,3] p"), ParseError);  // threshold > 1
  CHECK_THROWS_AS(parse_formula("<<A>> P>=0.5 F[4,3] p"), ParseError);  // empty interval
  CHECK_THROWS_AS(parse_formula("<<A>> (P>=0.5 F[0,3] p | q)"), ParseError);  // | over P
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
}

static void roundtrip_formula(const std::string& text) {
  FormulaPtr first = parse_formula(text);
  std::string printed = print_formula(first);
  FormulaPtr second = parse_formula(printed);
  CHECK(formula_equal(first, second));
  CHECK(print_formula(second) == printed);
}

TEST_CASE("formula round-trips") {
  roundtrip_formula("p");
  roundtrip_formula("!p & (q | r)");
  roundtrip_formula("p -> q -> r");
  roundtrip_formula("<<C>> P>=0.8 F[0,30](passed_1 & passed_2)");
  roundtrip_formula("<<A,B>> P<=0.25 (a U[0,inf] b & c)");
  roundtrip_formula("<<A>> (P>=0.5 F[0,3] p & !P>0.9 G[2,8] q)");
  roundtrip_formula("<<A>> P>=0.5 ((p | q) U[1,2] !r)");
  roundtrip_formula("!<<A>> P<0.1 G[0,inf] p | t");
  roundtrip_formula("<<A>> !(P>=0.5 F[0,3] p & P>=0.5 F[0,3] q)");
}

TEST_CASE("desugaring produces core operators only") {
  FormulaPtr f = desugar(parse_formula("<<C>> P>=0.8 F[0,30](p & q)"));
  CHECK(is_core(f));
  const FormulaPtr& g = f->lhs;
  REQUIRE(g->kind == FKind::GPUntil);
  CHECK(g->lhs->kind == FKind::GEmbed);
  CHECK(g->lhs->lhs->kind == FKind::True);  // F g = true U g

  FormulaPtr h = desugar(parse_formula("<<C>> P>=0.9 G[0,5] safe"));
  REQUIRE(h->lhs->kind == FKind::GPRelease);
  CHECK(h->lhs->lhs->lhs->kind == FKind::False);  // G g = false R g

  FormulaPtr o = desugar(parse_formula("p | q"));
  CHECK(o->kind == FKind::Not);  // !(!p & !q)
  CHECK(o->lhs->kind == FKind::And);
}

TEST_CASE("desugar is idempotent") {
  for (const char* text :
       {"<<C>> P>=0.8 F[0,30](p & q)", "p -> q | r", "<<A>> (P>=0.5 F[0,3] p & P<0.2 G[1,4] q)",
        "<<A>> P<0.5 (a U[2,7] b)"}) {
    FormulaPtr once = desugar(parse_formula(text));
    FormulaPtr twice = desugar(once);
    CHECK(formula_equal(once, twice));
  }
}
