#include <random>

#include "doctest.h"
#include "nalab/sat.hpp"

using namespace nalab::sat;

namespace {

bool brute_sat(int nvars, const std::vector<std::vector<Lit>>& cnf, const std::vector<Lit>& assume) {
  for (std::uint32_t mask = 0; mask < (1u << nvars); ++mask) {
    auto val = [&](Lit l) { return (((mask >> l.var()) & 1u) != 0) != l.negated(); };
    bool ok = true;
    for (Lit a : assume) ok = ok && val(a);
    for (const auto& c : cnf) {
      bool any = false;
      for (Lit l : c) any = any || val(l);
      ok = ok && any;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("solver agrees with brute force on random 3-CNF") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 600; ++trial) {
    int nvars = 3 + static_cast<int>(rng() % 10);
    int ncl = static_cast<int>(rng() % (nvars * 5 + 1));
    std::vector<std::vector<Lit>> cnf;
    Solver s;
    for (int v = 0; v < nvars; ++v) s.new_var();
    for (int c = 0; c < ncl; ++c) {
      std::vector<Lit> cl;
      int len = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < len; ++k) {
        std::uint32_t v = rng() % nvars;
        cl.push_back(rng() % 2 ? Lit::pos(v) : Lit::neg(v));
      }
      cnf.push_back(cl);
      s.add_clause(cl);
    }
    bool want = brute_sat(nvars, cnf, {});
    Result r = s.solve();
    REQUIRE(r == (want ? Result::Sat : Result::Unsat));
    if (r == Result::Sat) {
      for (const auto& c : cnf) {
        bool any = false;
        for (Lit l : c) any = any || s.value(l);
        CHECK(any);
      }
    }
    // Incremental queries under assumptions.
    for (int q = 0; q < 4 && want; ++q) {
      std::vector<Lit> as;
      for (int k = 0; k < 2; ++k) {
        std::uint32_t v = rng() % nvars;
        as.push_back(rng() % 2 ? Lit::pos(v) : Lit::neg(v));
      }
      bool w2 = brute_sat(nvars, cnf, as);
      Result r2 = s.solve(as);
      REQUIRE(r2 == (w2 ? Result::Sat : Result::Unsat));
      if (r2 == Result::Sat)
        for (Lit a : as) CHECK(s.value(a));
    }
  }
}

TEST_CASE("pigeonhole 5 into 4 is unsat and respects a budget") {
  auto build = [](Solver& s) {
    const int P = 5, H = 4;
    std::vector<std::vector<Lit>> x(P);
    for (int p = 0; p < P; ++p)
      for (int h = 0; h < H; ++h) x[p].push_back(Lit::pos(s.new_var()));
    for (int p = 0; p < P; ++p) s.add_clause(x[p]);
    for (int h = 0; h < H; ++h)
      for (int p = 0; p < P; ++p)
        for (int q = p + 1; q < P; ++q) s.add_clause({~x[p][h], ~x[q][h]});
  };
  Solver a;
  build(a);
  CHECK(a.solve() == Result::Unsat);
  Solver b;
  build(b);
  CHECK(b.solve(1) == Result::Unknown);
}

TEST_CASE("builder gates fold constants") {
  CnfBuilder b;
  Lit x = b.fresh(), y = b.fresh();
  CHECK(b.and2(x, b.constant(true)) == x);
  CHECK(b.and2(x, b.constant(false)) == b.constant(false));
  CHECK(b.or2(x, ~x) == b.constant(true));
  Lit g = b.iff(x, y);
  b.require(g);
  b.require(x);
  REQUIRE(b.solver().solve() == Result::Sat);
  CHECK(b.solver().value(y));
}
