#include <random>

#include "doctest.h"
#include "nalab/decide.hpp"
#include "nalab/gen.hpp"
#include "nalab/io.hpp"
#include "test_helpers.hpp"

using namespace nalab;
using nalab::testing::F;

namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("model json round trip") {
  std::mt19937 rng(3);
  std::vector<Formula> uni = {F("p"), F("[]p"), F("q -> p")};
  for (int i = 0; i < 100; ++i) {
    NModel m = nalab::testing::random_model(rng, 1 + i % 4, uni);
    Json j = model_to_json(m);
    CHECK(model_from_json(j) == m);
    CHECK(model_to_json(model_from_json(Json::parse(j.dump()))).dump() == j.dump());
  }
}

TEST_CASE("model json errors carry a path") {
  Json j = Json::parse(R"({"worlds":[1,2],"relations":{"p":[[1,7]]}})");
  std::string e = error_of([&] { model_from_json(j); });
  CHECK(e.find("unknown world 7") != std::string::npos);
  CHECK(e.starts_with("$"));
  CHECK(error_of([&] { model_from_json(Json::parse(R"({"worlds":[0]})")); }).starts_with("$.worlds[0]"));
  CHECK(error_of([&] { model_from_json(Json::parse(R"({"worlds":[1],"relations":{"p ->":[]}})")); }) != "");
  CHECK(error_of([&] { model_from_json(Json::parse(R"({"worlds":[1],"valuation":{"x":["p"]}})")); }) != "");
  CHECK(error_of([&] { model_from_json(Json::parse(R"({"relations":{}})")); }).find("missing key 'worlds'") !=
        std::string::npos);
}

TEST_CASE("proof json round trip and reference checks") {
  Decision d = decide(F("[][]p -> []p"), 1, 2);
  REQUIRE(d.proof);
  Json j = proof_to_json(*d.proof);
  Proof back = proof_from_json(Json::parse(j.dump()));
  CHECK(proof_to_json(back).dump() == j.dump());
  CHECK(check_proof(back).accepted);

  Json bad = Json::parse(R"({"system":{"m":1,"n":1},"steps":[{"formula":"p","rule":{"nec":9}}]})");
  CHECK(error_of([&] { proof_from_json(bad); }).find("step 0 cites missing step 9") != std::string::npos);
  Json fwd = Json::parse(
      R"({"system":{"m":1,"n":1},"steps":[{"formula":"p","rule":{"mp":[0,1]}},{"formula":"p","rule":"taut"}]})");
  CHECK(error_of([&] { proof_from_json(fwd); }).find("which is not earlier") != std::string::npos);
  Json unk = Json::parse(R"({"system":{"m":1,"n":1},"steps":[{"formula":"p","rule":"guess"}]})");
  CHECK(error_of([&] { proof_from_json(unk); }).find("unknown rule") != std::string::npos);
}

TEST_CASE("scenario json round trip over generated scenarios") {
  gen::Rng rng(21);
  std::vector<ArithScenario> all;
  for (int i = 0; i < 10; ++i) all.push_back(gen::consistent_scenario(MachineKind::G1, 1, 2, rng));
  for (int i = 0; i < 10; ++i) all.push_back(gen::monitor_scenario(i % 2 ? MonitorKind::H : MonitorKind::HPrime, rng));
  ModelFamily fam = gen::make_family(gen::registered_countermodels(1, 2, 3, 5));
  for (int i = 0; i < 10; ++i) all.push_back(gen::ill_scenario(i % 2 ? MachineKind::G2 : MachineKind::G0, 1, 2, fam, rng));
  all.push_back(gen::ladder_scenario(1, 3, 6));
  all.push_back(gen::k_axiom_scenario());
  for (const auto& sc : all) {
    Json j = scenario_to_json(sc);
    ArithScenario back = scenario_from_json(Json::parse(j.dump()));
    CHECK(scenario_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("scenario json rejects bad documents with a path") {
  ArithScenario sc = gen::k_axiom_scenario();
  Json j = scenario_to_json(sc);
  Json a = j;
  a["events"][1]["code"] = a["events"][0]["code"];
  CHECK(error_of([&] { scenario_from_json(a); }).find("events[1]") != std::string::npos);
  Json b = j;
  b["machine"] = "g9";
  CHECK(error_of([&] { scenario_from_json(b); }).starts_with("$.machine"));
  Json c = j;
  c["branch"]["ill_at"]["world"] = 99;
  CHECK(error_of([&] { scenario_from_json(c); }).find("ill_at") != std::string::npos);
  Json d = j;
  d["events"][0]["sentence"] = Json{{"op", "shat"}, {"i", 0}};
  CHECK(error_of([&] { scenario_from_json(d); }).starts_with("$.events[0].sentence"));
  Json e = j;
  e["horizon"] = "soon";
  CHECK(error_of([&] { scenario_from_json(e); }).starts_with("$.horizon"));
}

TEST_CASE("mutated scenario files fail cleanly") {
  std::string text = scenario_to_json(gen::k_axiom_scenario()).dump();
  std::mt19937 rng(8);
  const std::string alphabet = "{}[],:\"0123456789-abz ";
  int rejected = 0;
  for (int i = 0; i < 400; ++i) {
    std::string t = text;
    for (int k = 0; k < 1 + i % 3; ++k) t[rng() % t.size()] = alphabet[rng() % alphabet.size()];
    try {
      scenario_from_json(Json::parse(t));
    } catch (const InputError&) {
      ++rejected;
    } catch (const Json::exception&) {
      ++rejected;
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("sentence json covers every op") {
  Sentence s = Sentence::conj(Sentence::disj(Sentence::base("s", true), Sentence::falsum()),
                              Sentence::imp(Sentence::neq_zero(0), Sentence::prg(Sentence::fatom("p"))));
  Sentence t = Sentence::neg(Sentence::conj(Sentence::exists_neg_phi(F("[]p")),
                                            Sentence::conj(Sentence::forall_phi(F("p")), phi_trigger(F("p"), 2))));
  for (Sentence x : {s, t}) CHECK(sentence_from_json(Json::parse(sentence_to_json(x).dump())) == x);
  CHECK(error_of([] { sentence_from_json(Json::parse(R"({"op":"nand"})")); }).find("unknown sentence op") !=
        std::string::npos);
}

TEST_CASE("report json") {
  TraceReport r;
  r.horizon = 7;
  r.auto_horizon = true;
  r.entries.push_back({"monitor", true, std::nullopt, "ok"});
  r.entries.push_back({"truth_transfer", false, std::string("S(1)"), "bad"});
  Json j = report_to_json(r);
  CHECK(j["pass"] == false);
  CHECK(j["horizon_mode"] == "auto");
  CHECK(j["claims"][0]["witness"].is_null());
  CHECK(j["claims"][1]["witness"] == "S(1)");
}
