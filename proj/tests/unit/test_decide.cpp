#include "doctest.h"
#include "nalab/decide.hpp"
#include "test_helpers.hpp"

using namespace nalab;
using nalab::testing::F;

namespace {
const char* kK = "[](p -> q) -> ([]p -> []q)";
}

TEST_CASE("search_countermodel examples") {
  auto r = search_countermodel(F("[]bot"), 1, 0, 2);
  REQUIRE(r.found);
  CHECK(verify_countermodel(F("[]bot"), 1, 0, r.found->model, r.found->world));
  CHECK_FALSE(search_countermodel(F("[][]p -> []p"), 1, 2, 3).found);
  auto k = search_countermodel(F(kK), 1, 1, 2);
  REQUIRE(k.found);
  CHECK(verify_countermodel(F(kK), 1, 1, k.found->model, k.found->world));
  CHECK(k.found->model.worlds().size() <= 2);
}

TEST_CASE("verify_countermodel on the distribution model") {
  NModel m({1, 2}, {{F("q"), {{1, 2}}}}, {});
  CHECK(verify_countermodel(F(kK), 1, 1, m, 1));
  NModel m2({1, 2}, {{F("q"), {{1, 2}}}}, {{2, {"q"}}});
  CHECK_FALSE(verify_countermodel(F(kK), 1, 1, m2, 1));
  CHECK_FALSE(verify_countermodel(F(kK), 1, 1, m, 3));
}

TEST_CASE("decide examples") {
  auto a = decide(F("[][]p -> []p"), 1, 2);
  CHECK(a.verdict == Verdict::Provable);
  REQUIRE(a.proof);
  CHECK(check_proof(*a.proof).accepted);
  CHECK(decide(F("[]p -> [][]p"), 2, 1).verdict == Verdict::Provable);
  auto b = decide(F("[]bot"), 1, 0);
  CHECK(b.verdict == Verdict::Refuted);
  CHECK(decide(F("[]p -> p"), 1, 2).verdict == Verdict::Refuted);
  CHECK(decide(F("p -> []p"), 2, 1).verdict == Verdict::Refuted);
  CHECK(decide(F("[]^2 bot"), 2, 0).verdict == Verdict::Refuted);
}

TEST_CASE("refutations persist at larger bounds and are deterministic") {
  for (const char* s : {"[]bot", "[]p -> p", "p -> []p", kK}) {
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 0}, {1, 2}, {2, 1}, {1, 1}}) {
      auto small = search_countermodel(F(s), m, n, 2);
      auto big = search_countermodel(F(s), m, n, 4);
      if (small.found) {
        REQUIRE(big.found);
        CHECK(big.found->model == small.found->model);
      }
      auto again = search_countermodel(F(s), m, n, 4);
      CHECK(again.found.has_value() == big.found.has_value());
      if (big.found) {
        CHECK(again.found->model == big.found->model);
        CHECK(verify_countermodel(F(s), m, n, big.found->model, big.found->world));
      }
    }
  }
}

TEST_CASE("extension by empty relations keeps verdicts") {
  for (const char* s : {"[]bot", "[]p -> p", "p -> []p", kK, "[][]bot"}) {
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 0}, {2, 1}, {1, 1}, {2, 0}}) {
      auto r = search_countermodel(F(s), m, n, 3);
      if (!r.found) continue;
      const auto& mdl = r.found->model;
      auto u = relation_universe(F(s), m, n);
      CHECK(is_mn_accessible(mdl, m, n, u).accessible);
      CHECK(is_mn_accessible(mdl, m, n, relation_universe(F(s), m + 2, n + 2)).accessible);
      CHECK(is_mn_accessible(mdl, m, n, support_universe(mdl, m, n)).accessible);
    }
  }
}

TEST_CASE("NA_{m,m} agrees with N") {
  for (const char* s : {"[]bot", "[]p -> p", "p -> []p", kK, "[](p -> p)", "[]p -> []p"}) {
    for (std::size_t m = 1; m <= 3; ++m) {
      DecideOptions o;
      o.max_worlds = 3;
      CHECK(decide(F(s), m, m, o).verdict == decide(F(s), 1, 1, o).verdict);
    }
  }
}

TEST_CASE("tiny budget yields unknown, not a wrong verdict") {
  DecideOptions o;
  o.conflict_budget = 1;
  auto d = decide(F("[][]p -> ([]q -> [][]p)"), 1, 2, o);
  CHECK(d.verdict != Verdict::Refuted);
}

TEST_CASE("m = 0 with n >= 1 never refutes") {
  Decision d = decide(F("p"), 0, 1);
  CHECK(d.verdict == Verdict::Unknown);
  CHECK(d.report.sizes_unknown.size() == kDefaultMaxWorlds);
  CHECK(decide(F("[]p -> p"), 0, 1).verdict == Verdict::Provable);
}
