#include <random>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace nalab;

TEST_CASE("parse examples") {
  auto p = Formula::var("p");
  CHECK(parse_formula("[]p -> [][]p") == Formula::imp(Formula::box(p), Formula::box(p, 2)));
  CHECK(parse_formula("[]^3 bot") == Formula::box(Formula::bot(), 3));
  CHECK_THROWS_AS(parse_formula("p ->"), ParseError);
}

TEST_CASE("precedence and associativity") {
  auto p = Formula::var("p"), q = Formula::var("q"), r = Formula::var("r");
  CHECK(parse_formula("p -> q -> r") == Formula::imp(p, Formula::imp(q, r)));
  CHECK(parse_formula("p | q & r") == Formula::disj(p, Formula::conj(q, r)));
  CHECK(parse_formula("p & q & r") == Formula::conj(Formula::conj(p, q), r));
  CHECK(parse_formula("~[]p & q") == Formula::conj(Formula::neg(Formula::box(p)), q));
  CHECK(parse_formula("[](p -> q)") == Formula::box(Formula::imp(p, q)));
  CHECK(parse_formula("[]^0 p") == p);
  CHECK(parse_formula("  ( p )  ") == p);
  CHECK(parse_formula("x_1A") == Formula::var("x_1A"));
}

TEST_CASE("parse errors carry spans") {
  for (const char* bad : {"", "p q", "(p", "p & ", "P", "[]^ p", "p -> -> q", "~", "p)", "[]^99999 p"}) {
    try {
      parse_formula(bad);
      FAIL("accepted " << bad);
    } catch (const ParseError& e) {
      CHECK(e.span().start <= e.span().end);
      CHECK(std::string(e.what()).find("offset") != std::string::npos);
    }
  }
}

TEST_CASE("render examples") {
  auto p = Formula::var("p"), q = Formula::var("q");
  CHECK(render_formula(Formula::box(p)) == "[]p");
  CHECK(render_formula(Formula::bot()) == "bot");
  CHECK(parse_formula(render_formula(Formula::imp(p, Formula::imp(q, p)))) == Formula::imp(p, Formula::imp(q, p)));
  CHECK(render_formula(Formula::imp(Formula::imp(p, q), p)) == "(p -> q) -> p");
  CHECK(render_formula(Formula::conj(p, Formula::conj(q, p))) == "p & (q & p)");
  CHECK(render_formula(Formula::neg(Formula::conj(p, q))) == "~(p & q)");
}

TEST_CASE("round trip on 10000 random formulas") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    Formula a = nalab::testing::random_formula(rng, 8, 3);
    REQUIRE(parse_formula(render_formula(a)) == a);
  }
}
