#include <algorithm>
#include <random>

#include "doctest.h"
#include "nalab/checks.hpp"
#include "nalab/gen.hpp"
#include "nalab/sim.hpp"
#include "test_helpers.hpp"

using namespace nalab;
using nalab::testing::F;

namespace {

Sentence negS(std::uint64_t j) { return Sentence::neg(Sentence::shat(j)); }

ArithScenario bare(MachineKind k) {
  ArithScenario sc;
  sc.machine = k;
  return sc;
}

bool tt_tc(const std::vector<Sentence>& prem, Sentence target) {
  AtomMap atoms;
  std::vector<Prop> ps;
  for (Sentence s : prem) ps.push_back(i_translate(s, atoms));
  Prop t = i_translate(target, atoms);
  return prop_is_tc(ps, t, atoms.size(), 20);
}

// The min clause evaluated directly with truth tables.
WorldId brute_value(const ArithScenario& sc, MonitorKind kind, std::uint64_t s) {
  ProofStream ps(sc);
  std::set<Sentence> seen;
  std::vector<Sentence> prem;
  for (std::uint64_t c = 0; c <= s; ++c)
    if (auto x = ps.at(c); x && seen.insert(*x).second) prem.push_back(*x);
  for (std::uint64_t j = 1; j <= s + 1; ++j) {
    if (tt_tc(prem, negS(j))) return static_cast<WorldId>(j);
    if (kind != MonitorKind::HPrime) continue;
    auto k = sc.family.family_of(static_cast<WorldId>(j));
    if (!k) continue;
    for (Formula b : subformulas(sc.family.entries[*k].a))
      if (tt_tc(prem, Sentence::forall_phi(b)) && tt_tc(prem, phi_trigger(b, j))) return static_cast<WorldId>(j);
  }
  return 0;
}

std::set<Sentence> output_set(const SimTrace& tr) {
  std::set<Sentence> out;
  for (const auto& o : tr.outputs)
    if (o) out.insert(*o);
  return out;
}

}  // namespace

TEST_CASE("monitor examples") {
  ArithScenario sc = bare(MachineKind::G0);
  auto h = run_h(sc, 20);
  CHECK(std::all_of(h.begin(), h.end(), [](WorldId w) { return w == 0; }));
  CHECK(run_h_prime(sc, 20) == h);

  sc.events = {{4, negS(2)}};
  h = run_h(sc, 12);
  CHECK(h[4] == 0);
  CHECK(h[5] == 2);
  CHECK(h[12] == 2);
  CHECK(check_monitor(h).pass);

  // 0=1 is an atom of the I-translation; only a propositional clash fires.
  sc.events = {{1, Sentence::falsum()}};
  CHECK(run_h(sc, 3)[2] == 0);
  sc.events = {{1, Sentence::falsum()}, {2, Sentence::neg(Sentence::falsum())}};
  CHECK(run_h(sc, 4)[3] == 1);
}

TEST_CASE("h' fires on the phi trigger") {
  ArithScenario sc = gen::ladder_scenario(1, 2, 2);
  sc.events.clear();
  Formula b = F("q");
  sc.events = {{3, Sentence::forall_phi(b)}, {5, phi_trigger(b, 1)}};
  auto h = run_h_prime(sc, 10);
  CHECK(h[5] == 0);
  CHECK(h[6] == 1);
  CHECK(run_h(sc, 10)[6] == 0);
}

TEST_CASE("monitors agree with the truth-table min clause") {
  gen::Rng rng(3);
  int compared = 0;
  for (int i = 0; i < 60; ++i) {
    MonitorKind kind = i % 2 ? MonitorKind::H : MonitorKind::HPrime;
    ArithScenario sc = gen::monitor_scenario(kind, rng);
    auto h = run_monitor(sc, kind, 35);
    for (std::uint64_t s = 0; s < 35 && h[s] == 0; ++s) {
      try {
        CHECK(h[s + 1] == brute_value(sc, kind, s));
        ++compared;
      } catch (const AtomGuardExceeded&) {
        break;
      }
    }
    CHECK(check_monitor(h).pass);
    if (gen::trigger_free(sc)) CHECK(h.back() == 0);
  }
  CHECK(compared > 500);
}

TEST_CASE("G1 consistent outputs are the proved sentences") {
  ArithScenario sc = bare(MachineKind::G1);
  sc.events = {{2, Sentence::fatom("p")}, {3, Sentence::base("s", true)}, {7, Sentence::prg(Sentence::fatom("q"))}};
  auto tr = run_machine(MachineKind::G1, sc, 6);
  CHECK(output_set(tr) == std::set<Sentence>{Sentence::fatom("p"), Sentence::base("s", true)});
  CHECK(check_consistent_equivalence(tr, sc).pass);
}

TEST_CASE("G1 on the K-axiom countermodel") {
  ArithScenario sc = gen::k_axiom_scenario();
  auto tr = run_machine(sc);
  REQUIRE(tr.switch_info);
  CHECK(tr.switch_info->world == 1);
  auto out = output_set(tr);
  CHECK(out.contains(f_interp(F("p"))));
  CHECK(out.contains(f_interp(F("p -> q"))));
  CHECK_FALSE(out.contains(f_interp(F("q"))));
  CHECK(eval_sentence(tr, sc, f_interp(F("[]p"))));
  CHECK_FALSE(eval_sentence(tr, sc, f_interp(F("[]q"))));
  CHECK(eval_sentence(tr, sc, Sentence::shat(1)));
  CHECK(check_truth_transfer(tr, sc).pass);
  CHECK(check_procedure2(tr, sc).pass);
  CHECK_THROWS_AS(eval_sentence(tr, sc, Sentence::shat(99)), std::out_of_range);
}

TEST_CASE("G0 witness gating") {
  Sentence sig = Sentence::base("sigma", true);
  ArithScenario sc = bare(MachineKind::G0);
  sc.events = {{5, sig}};
  sc.sigma_witness["sigma"] = 2;
  auto tr = run_machine(MachineKind::G0, sc, 30);
  CHECK(tr.first_output.at(sig) == 5);

  sc.sigma_witness["sigma"] = 9;
  sc.repeat = true;
  tr = run_machine(MachineKind::G0, sc, 30);
  CHECK_FALSE(tr.outputs[5]);
  CHECK(tr.first_output.at(sig) == 11);
  CHECK(check_consistent_equivalence(tr, sc).pass);

  sc.sigma_witness.clear();
  tr = run_machine(MachineKind::G0, sc, 30);
  CHECK(output_set(tr).empty());
  CHECK(g0_oracle_outputs(sc, 30).empty());
}

TEST_CASE("G0 prior-output check") {
  Sentence p = Sentence::fatom("p");
  ArithScenario sc = bare(MachineKind::G0);
  sc.repeat = true;
  sc.events = {{3, Sentence::prg(p)}};
  auto tr = run_machine(MachineKind::G0, sc, 40);
  CHECK(output_set(tr).empty());
  CHECK(g0_oracle_outputs(sc, 40).empty());

  sc.events = {{2, Sentence::base("t", false)}, {3, Sentence::prg(Sentence::base("t", false))}};
  tr = run_machine(MachineKind::G0, sc, 40);
  CHECK(tr.first_output.at(Sentence::base("t", false)) == 2);
  CHECK(tr.first_output.at(Sentence::prg(Sentence::base("t", false))) == 3);
  CHECK(check_consistent_equivalence(tr, sc).pass);
}

TEST_CASE("G2 consistent equivalence, five events") {
  ArithScenario sc = bare(MachineKind::G2);
  sc.m = 1;
  sc.n = 2;
  sc.events = {{1, Sentence::fatom("p")},
               {4, Sentence::base("s", true)},
               {9, Sentence::prg(Sentence::fatom("q"))},
               {20, Sentence::forall_phi(F("p"))},
               {33, Sentence::neg(Sentence::base("t", false))}};
  auto tr = run_machine(MachineKind::G2, sc, 50);
  CHECK(output_set(tr).size() == 5);
  CHECK(check_consistent_equivalence(tr, sc).pass);
}

TEST_CASE("random consistent scenarios match for every machine") {
  gen::Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    auto kind = static_cast<MachineKind>(i % 4);
    ArithScenario sc = gen::consistent_scenario(kind, 1, 2, rng);
    auto tr = run_machine(sc);
    CHECK(check_consistent_equivalence(tr, sc).pass);
    if (kind == MachineKind::G0) CHECK(check_acc_closure(tr, sc, 1, 2).pass);
  }
}

TEST_CASE("ill scenarios from registered countermodels") {
  struct Regime {
    MachineKind kind;
    std::size_t m, n;
  };
  gen::Rng rng(8);
  for (Regime r : {Regime{MachineKind::G0, 1, 2}, Regime{MachineKind::G1, 2, 1}, Regime{MachineKind::G2, 1, 2},
                   Regime{MachineKind::G3, 1, 0}, Regime{MachineKind::G3, 2, 0}}) {
    auto reg = gen::registered_countermodels(r.m, r.n, 4, 100 + r.m * 10 + r.n);
    REQUIRE(reg.size() == 4);
    for (int i = 0; i < 4; ++i) {
      auto fam = gen::make_family({reg[i], reg[(i + 1) % 4]});
      ArithScenario sc = gen::ill_scenario(r.kind, r.m, r.n, fam, rng);
      auto tr = run_machine(sc);
      REQUIRE(tr.switch_info);
      CHECK(check_truth_transfer(tr, sc).pass);
      CHECK(check_acc_closure(tr, sc, r.m, r.n).pass);
      CHECK(check_procedure2(tr, sc).pass);
      auto bad = corrupt_procedure2(tr, sc);
      if (bad) {
        ClaimResult c = check_truth_transfer(*bad, sc);
        CHECK_FALSE(c.pass);
        CHECK(c.witness);
      }
    }
  }
}

TEST_CASE("decompose_qr") {
  CHECK(decompose_qr(5, 1, 3) == std::pair<std::size_t, std::size_t>{2, 0});
  CHECK(decompose_qr(3, 1, 3) == std::pair<std::size_t, std::size_t>{1, 0});
  CHECK(decompose_qr(6, 1, 3) == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK_THROWS_AS(decompose_qr(2, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(decompose_qr(5, 3, 3), std::invalid_argument);
}

TEST_CASE("G2 ladder") {
  ArithScenario sc = gen::ladder_scenario(1, 3, 6);
  auto tr = run_machine(sc);
  REQUIRE(tr.switch_info);
  CHECK(g2_ladder(F("[][][][][][]p"), 1, 3).size() == 3);
  ClaimResult c = check_g2_ladder(tr, sc);
  CHECK(c.pass);
  // Box^6 p, Box^5 p, Box^4 p and Box^3 p give ladders of 3, 3, 2 and 2.
  CHECK(c.detail == "10 ladder sentences");
  CHECK(check_g2_gating(tr, sc).pass);
  CHECK(check_truth_transfer(tr, sc).pass);
}

TEST_CASE("scenario validation") {
  ArithScenario sc = gen::k_axiom_scenario();
  ArithScenario no_trigger = sc;
  no_trigger.events.pop_back();
  CHECK_THROWS_AS(run_machine(no_trigger), ScenarioError);
  ArithScenario short_h = sc;
  short_h.horizon = 2;
  CHECK_THROWS_AS(run_machine(short_h), ScenarioError);
  ArithScenario big = bare(MachineKind::G0);
  big.events = {{2, negS(3)}};
  CHECK_THROWS_AS(validate_scenario(big), ScenarioError);
  ArithScenario order = bare(MachineKind::G0);
  order.events = {{4, Sentence::fatom("p")}, {4, Sentence::fatom("q")}};
  CHECK_THROWS_AS(validate_scenario(order), ScenarioError);
}

TEST_CASE("relevant set order and report selection") {
  ArithScenario sc = gen::k_axiom_scenario();
  auto tr = run_machine(sc);
  CHECK(check_relevant_order(tr.relevant).pass);
  TraceReport all = run_report(tr, sc, "all");
  CHECK(all.all_pass());
  CHECK(all.auto_horizon);
  CHECK_FALSE(run_report(tr, sc, "equiv").all_pass());
  CHECK_THROWS_AS(run_report(tr, sc, "bogus"), std::invalid_argument);
}
