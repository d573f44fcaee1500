// nalab: command-line front end.
// Exit codes: 0 positive verdict or all checks pass, 1 negative verdict or a
// failed check, 2 Unknown, 64 usage, 65 input.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nalab/checks.hpp"
#include "nalab/corpus.hpp"
#include "nalab/decide.hpp"
#include "nalab/io.hpp"
#include "nalab/parser.hpp"
#include "nalab/sim.hpp"

using namespace nalab;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitInput = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Formula formula_arg(const std::string& text) {
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    throw InputError(std::string("formula: ") + e.what());
  }
}

std::size_t max_worlds_setting(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("NALAB_MAX_WORLDS")) {
    std::string s = env;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || v == 0) throw UsageError("NALAB_MAX_WORLDS must be a positive integer");
    return v;
  }
  return kDefaultMaxWorlds;
}

Json witness_to_json(const AccessWitness& w) {
  return {{"B", render_formula(w.b)}, {"x", w.x}, {"y", w.y}, {"chain", w.chain}};
}

Json verdict_to_json(const ProofVerdict& v) {
  Json j;
  j["accepted"] = v.accepted;
  j["theorem"] = v.theorem ? Json(render_formula(*v.theorem)) : Json(nullptr);
  j["failing_step"] = v.failing_step ? Json(*v.failing_step) : Json(nullptr);
  j["reason"] = v.reason;
  return j;
}

int cmd_parse(const std::string& text) {
  Formula a = formula_arg(text);
  Json subs = Json::array();
  for (Formula b : subformulas(a)) subs.push_back(render_formula(b));
  emit({{"formula", render_formula(a)}, {"subformulas", subs}});
  return 0;
}

int cmd_modelcheck(const std::string& model_path, WorldId w, const std::string& text) {
  NModel model = load_model(model_path);
  Formula a = formula_arg(text);
  if (!model.has_world(w)) throw InputError("--world: unknown world " + std::to_string(w));
  bool f = forces(model, w, a);
  emit({{"forces", f}});
  return f ? 0 : 1;
}

int cmd_accessible(const std::string& model_path, std::size_t m, std::size_t n, const std::string& text) {
  NModel model = load_model(model_path);
  std::vector<Formula> universe =
      text.empty() ? support_universe(model, m, n) : relation_universe(formula_arg(text), m, n);
  AccessReport r = is_mn_accessible(model, m, n, universe);
  Json j{{"accessible", r.accessible}};
  j["witness"] = r.witness ? witness_to_json(*r.witness) : Json(nullptr);
  emit(j);
  return r.accessible ? 0 : 1;
}

int cmd_decide(std::size_t m, std::size_t n, const DecideOptions& opts, const std::string& text) {
  Formula a = formula_arg(text);
  Decision d = decide(a, m, n, opts);
  emit(decision_to_json(d, a, m, n));
  switch (d.verdict) {
    case Verdict::Provable:
      return 0;
    case Verdict::Refuted:
      return 1;
    default:
      return 2;
  }
}

// Accepts a bare proof document or the output of decide.
int cmd_checkproof(const std::string& path, bool allow_ros) {
  Json doc = read_json_file(path);
  CheckOptions opts;
  opts.allow_ros = allow_ros;
  if (doc.is_object() && doc.contains("countermodel")) {
    Formula a = formula_arg(doc.value("formula", std::string()));
    const Json& sys = doc.at("system");
    if (!sys.is_object() || !sys.contains("m") || !sys.contains("n") || !sys["m"].is_number_unsigned() ||
        !sys["n"].is_number_unsigned())
      throw InputError("$.system: expected {\"m\": int, \"n\": int}");
    std::size_t m = sys["m"].get<std::size_t>(), n = sys["n"].get<std::size_t>();
    const Json& cm = doc["countermodel"];
    NModel model = model_from_json(cm.contains("model") ? cm["model"] : Json(nullptr), "$.countermodel.model");
    if (!cm.contains("world") || !cm["world"].is_number_unsigned()) throw InputError("$.countermodel.world: expected a world id");
    WorldId w = cm["world"].get<WorldId>();
    bool ok = model.has_world(w) && verify_countermodel(a, m, n, model, w);
    emit({{"kind", "countermodel"}, {"accepted", ok}, {"formula", render_formula(a)}});
    return ok ? 0 : 1;
  }
  bool wrapped = doc.is_object() && doc.contains("proof");
  Proof pf = proof_from_json(wrapped ? doc["proof"] : doc, wrapped ? "$.proof" : "$");
  ProofVerdict v = check_proof(pf, opts);
  Json j{{"kind", "proof"}};
  j.update(verdict_to_json(v));
  if (wrapped && doc.contains("formula")) {
    Formula a = formula_arg(doc["formula"].is_string() ? doc["formula"].get<std::string>() : "");
    bool matches = v.theorem && *v.theorem == a;
    j["matches_formula"] = matches;
    if (!matches) j["accepted"] = false;
  }
  emit(j);
  return j["accepted"].get<bool>() ? 0 : 1;
}

int cmd_sim(const std::string& path, const std::string& selection, bool with_trace) {
  if (selection != "all" && selection != "truth" && selection != "closure" && selection != "equiv")
    throw UsageError("--report must be one of all, truth, closure, equiv");
  ArithScenario sc = load_scenario(path);
  SimTrace tr;
  try {
    tr = run_machine(sc);
  } catch (const ScenarioError& e) {
    throw InputError(path + ": " + e.what());
  }
  TraceReport r = run_report(tr, sc, selection);
  Json j = report_to_json(r);
  if (with_trace) {
    Json outs = Json::array();
    for (const auto& o : tr.outputs) outs.push_back(o ? Json(render_sentence(*o)) : Json(nullptr));
    Json t{{"machine", machine_name(tr.kind)}, {"h", tr.h_values}, {"outputs", outs}};
    t["switch"] = tr.switch_info ? Json{{"stage", tr.switch_info->stage}, {"world", tr.switch_info->world}} : Json(nullptr);
    j["trace"] = t;
  }
  emit(j);
  return r.all_pass() ? 0 : 1;
}

int cmd_corpus(const DecideOptions& opts) {
  std::vector<CorpusRow> rows = run_corpus(opts);
  Json out = Json::array();
  bool all = true;
  for (const auto& r : rows) {
    all = all && r.pass;
    out.push_back({{"label", r.item.label},
                   {"formula", r.item.formula},
                   {"system", {{"m", r.item.m}, {"n", r.item.n}}},
                   {"expected", verdict_name(r.item.expected)},
                   {"verdict", verdict_name(r.verdict)},
                   {"certificate_ok", r.certificate_ok},
                   {"pass", r.pass}});
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.item.label << " (" << r.item.m << "," << r.item.n << ") "
              << r.item.formula << " -> " << verdict_name(r.verdict) << "\n";
  }
  emit({{"pass", all}, {"rows", out}});
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedure, proof checker and simulator for logics of necessitation", "nalab"};
  app.require_subcommand(1);

  std::string formula, model_path, proof_path, scenario_path, report = "all";
  std::size_t m = 1, n = 1;
  WorldId world = 1;
  std::optional<std::size_t> max_worlds;
  std::uint64_t conflict_budget = kDefaultConflictBudget;
  bool no_ros = false, with_trace = false;

  auto* parse = app.add_subcommand("parse", "Parse and render a formula");
  parse->add_option("formula", formula)->required();

  auto* modelcheck = app.add_subcommand("modelcheck", "Evaluate a formula at a world of a model");
  modelcheck->add_option("--model", model_path)->required();
  modelcheck->add_option("--world", world)->required();
  modelcheck->add_option("formula", formula)->required();

  auto* accessible = app.add_subcommand("accessible", "Check (m,n)-accessibility of a model");
  accessible->add_option("--model", model_path)->required();
  accessible->add_option("-m", m)->required();
  accessible->add_option("-n", n)->required();
  accessible->add_option("--formula", formula, "Use this formula's relation universe");

  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--max-worlds", max_worlds, "Largest countermodel size (default NALAB_MAX_WORLDS or 4)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--conflict-budget", conflict_budget);
  };

  auto* decide_cmd = app.add_subcommand("decide", "Decide provability at (m,n)");
  decide_cmd->add_option("-m", m)->required();
  decide_cmd->add_option("-n", n)->required();
  add_search(decide_cmd);
  decide_cmd->add_option("formula", formula)->required();

  auto* checkproof = app.add_subcommand("checkproof", "Check a proof or a decide certificate");
  checkproof->add_option("file", proof_path, "JSON file, or - for stdin")->required();
  checkproof->add_flag("--no-ros", no_ros, "Reject steps using the Ros rule");

  auto* sim = app.add_subcommand("sim", "Run a scenario and report trace checks");
  sim->add_option("--scenario", scenario_path)->required();
  sim->add_option("--report", report);
  sim->add_flag("--trace", with_trace, "Include monitor values and outputs");

  auto* corpus = app.add_subcommand("corpus", "Run the curated formula corpus");
  add_search(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    DecideOptions opts;
    opts.max_worlds = max_worlds_setting(max_worlds);
    opts.conflict_budget = conflict_budget;
    if (*parse) return cmd_parse(formula);
    if (*modelcheck) return cmd_modelcheck(model_path, world, formula);
    if (*accessible) return cmd_accessible(model_path, m, n, formula);
    if (*decide_cmd) return cmd_decide(m, n, opts, formula);
    if (*checkproof) return cmd_checkproof(proof_path, !no_ros);
    if (*sim) return cmd_sim(scenario_path, report, with_trace);
    if (*corpus) return cmd_corpus(opts);
  } catch (const UsageError& e) {
    std::cerr << "nalab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "nalab: " << e.what() << "\n";
    return kExitInput;
  } catch (const Json::exception& e) {
    std::cerr << "nalab: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "nalab: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
