#include "nalab/io.hpp"

#include <fstream>
#include <iostream>

#include "nalab/parser.hpp"

namespace nalab {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

std::string sub(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

const Json* optional_field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t as_uint(const Json& j, const std::string& path) {
  std::int64_t v = as_int(j, path);
  if (v < 0) fail(path, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

std::size_t as_index(const Json& j, const std::string& path) { return static_cast<std::size_t>(as_uint(j, path)); }

WorldId as_world(const Json& j, const std::string& path) {
  std::int64_t v = as_int(j, path);
  if (v <= 0 || v > std::numeric_limits<WorldId>::max()) fail(path, "world ids are positive integers");
  return static_cast<WorldId>(v);
}

const std::string& as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

Formula as_formula(const Json& j, const std::string& path) {
  const std::string& s = as_string(j, path);
  try {
    return parse_formula(s);
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

Json rule_to_json(const ProofStep& st) {
  switch (st.rule) {
    case Rule::Taut:
      return "taut";
    case Rule::Acc:
      return Json{{"acc", true}};
    case Rule::MP:
      return Json{{"mp", {st.i, st.j}}};
    case Rule::Nec:
      return Json{{"nec", st.i}};
    case Rule::Ros:
      return Json{{"ros", st.i}};
  }
  return nullptr;
}

}  // namespace

Json model_to_json(const NModel& m) {
  Json j;
  j["worlds"] = Json::array();
  for (WorldId w : m.worlds()) j["worlds"].push_back(w);
  j["relations"] = Json::object();
  for (const auto& [b, r] : m.relations()) {
    Json edges = Json::array();
    for (auto [x, y] : r) edges.push_back({x, y});
    j["relations"][render_formula(b)] = edges;
  }
  j["valuation"] = Json::object();
  for (const auto& [w, vs] : m.valuation()) j["valuation"][std::to_string(w)] = vs;
  return j;
}

NModel model_from_json(const Json& j, const std::string& path) {
  std::set<WorldId> worlds;
  std::string wp = sub(path, "worlds");
  const Json& ws = as_array(field(j, "worlds", path), wp);
  for (std::size_t i = 0; i < ws.size(); ++i) worlds.insert(as_world(ws[i], at(wp, i)));

  std::map<Formula, Relation> rel;
  if (const Json* rs = optional_field(j, "relations", path)) {
    std::string rp = sub(path, "relations");
    if (!rs->is_object()) fail(rp, "expected an object");
    for (const auto& [key, edges] : rs->items()) {
      std::string kp = rp + "[\"" + key + "\"]";
      Formula b = as_formula(Json(key), kp);
      as_array(edges, kp);
      for (std::size_t i = 0; i < edges.size(); ++i) {
        const Json& e = edges[i];
        if (!e.is_array() || e.size() != 2) fail(at(kp, i), "expected a [from, to] pair");
        rel[b].insert({as_world(e[0], at(kp, i)), as_world(e[1], at(kp, i))});
      }
    }
  }

  std::map<WorldId, std::set<std::string>> val;
  if (const Json* vs = optional_field(j, "valuation", path)) {
    std::string vp = sub(path, "valuation");
    if (!vs->is_object()) fail(vp, "expected an object");
    for (const auto& [key, vars] : vs->items()) {
      std::string kp = vp + "[\"" + key + "\"]";
      WorldId w = 0;
      try {
        std::size_t used = 0;
        long v = std::stol(key, &used);
        if (used != key.size() || v <= 0 || v > std::numeric_limits<WorldId>::max()) throw std::invalid_argument(key);
        w = static_cast<WorldId>(v);
      } catch (const std::exception&) {
        fail(kp, "valuation keys are positive world ids");
      }
      as_array(vars, kp);
      for (std::size_t i = 0; i < vars.size(); ++i) {
        Formula v = as_formula(vars[i], at(kp, i));
        if (!v.is(Op::Var)) fail(at(kp, i), "expected a variable name");
        val[w].insert(v.name());
      }
    }
  }

  try {
    return NModel(worlds, rel, val);
  } catch (const ModelError& e) {
    fail(path, e.what());
  }
}

Json proof_to_json(const Proof& p) {
  Json j;
  j["system"] = {{"m", p.m}, {"n", p.n}};
  j["steps"] = Json::array();
  for (const auto& st : p.steps) j["steps"].push_back({{"formula", render_formula(st.formula)}, {"rule", rule_to_json(st)}});
  return j;
}

Proof proof_from_json(const Json& j, const std::string& path) {
  Proof p;
  std::string sp = sub(path, "system");
  const Json& sys = field(j, "system", path);
  p.m = as_index(field(sys, "m", sp), sub(sp, "m"));
  p.n = as_index(field(sys, "n", sp), sub(sp, "n"));
  std::string stp = sub(path, "steps");
  const Json& steps = as_array(field(j, "steps", path), stp);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    std::string kp = at(stp, k);
    ProofStep st;
    st.formula = as_formula(field(steps[k], "formula", kp), sub(kp, "formula"));
    const Json& r = field(steps[k], "rule", kp);
    std::string rp = sub(kp, "rule");
    auto cite = [&](const Json& x, const std::string& xp) {
      std::size_t idx = as_index(x, xp);
      if (idx >= steps.size())
        fail(xp, "step " + std::to_string(k) + " cites missing step " + std::to_string(idx));
      if (idx >= k) fail(xp, "step " + std::to_string(k) + " cites step " + std::to_string(idx) + ", which is not earlier");
      return idx;
    };
    if (r.is_string()) {
      if (r.get<std::string>() != "taut") fail(rp, "unknown rule '" + r.get<std::string>() + "'");
      st.rule = Rule::Taut;
    } else if (r.is_object() && r.size() == 1) {
      const std::string& name = r.begin().key();
      const Json& arg = r.begin().value();
      std::string ap = sub(rp, name);
      if (name == "acc") {
        if (!as_bool(arg, ap)) fail(ap, "expected true");
        st.rule = Rule::Acc;
      } else if (name == "mp") {
        if (!arg.is_array() || arg.size() != 2) fail(ap, "expected [minor, major]");
        st.rule = Rule::MP;
        st.i = cite(arg[0], at(ap, 0));
        st.j = cite(arg[1], at(ap, 1));
      } else if (name == "nec" || name == "ros") {
        st.rule = name == "nec" ? Rule::Nec : Rule::Ros;
        st.i = cite(arg, ap);
      } else {
        fail(rp, "unknown rule '" + name + "'");
      }
    } else {
      fail(rp, "expected \"taut\" or a one-key rule object");
    }
    p.steps.push_back(st);
  }
  return p;
}

Json sentence_to_json(Sentence s) {
  switch (s.kind()) {
    case SKind::Base:
      return {{"op", "base"}, {"name", s.name()}, {"sigma1", s.sigma1_flag()}};
    case SKind::Falsum:
      return {{"op", "falsum"}};
    case SKind::SHat:
      return {{"op", "shat"}, {"i", s.num()}};
    case SKind::FAtom:
      return {{"op", "fatom"}, {"var", s.name()}};
    case SKind::PRg:
      return {{"op", "prg"}, {"arg", sentence_to_json(s.child())}};
    case SKind::NeqZero:
      return {{"op", "neq_zero"}, {"i", s.num()}};
    case SKind::Refutes:
      return {{"op", "refutes"}, {"B", render_formula(s.formula())}, {"i", s.num()}};
    case SKind::ForAllPhi:
      return {{"op", "forall_phi"}, {"B", render_formula(s.formula())}};
    case SKind::ExistsNegPhi:
      return {{"op", "exists_neg_phi"}, {"B", render_formula(s.formula())}};
    case SKind::Neg:
      return {{"op", "neg"}, {"arg", sentence_to_json(s.child())}};
    case SKind::And:
    case SKind::Or:
    case SKind::Imp: {
      const char* op = s.is(SKind::And) ? "and" : s.is(SKind::Or) ? "or" : "imp";
      return {{"op", op}, {"lhs", sentence_to_json(s.lhs())}, {"rhs", sentence_to_json(s.rhs())}};
    }
  }
  return nullptr;
}

Sentence sentence_from_json(const Json& j, const std::string& path) {
  const std::string& op = as_string(field(j, "op", path), sub(path, "op"));
  auto kid = [&](const char* key) { return sentence_from_json(field(j, key, path), sub(path, key)); };
  auto num = [&] { return as_uint(field(j, "i", path), sub(path, "i")); };
  auto formula = [&] { return as_formula(field(j, "B", path), sub(path, "B")); };
  try {
    if (op == "base")
      return Sentence::base(as_string(field(j, "name", path), sub(path, "name")),
                            as_bool(field(j, "sigma1", path), sub(path, "sigma1")));
    if (op == "falsum") return Sentence::falsum();
    if (op == "shat") return Sentence::shat(num());
    if (op == "fatom") return Sentence::fatom(as_string(field(j, "var", path), sub(path, "var")));
    if (op == "prg") return Sentence::prg(kid("arg"));
    if (op == "neq_zero") return Sentence::neq_zero(num());
    if (op == "refutes") return Sentence::refutes(formula(), num());
    if (op == "forall_phi") return Sentence::forall_phi(formula());
    if (op == "exists_neg_phi") return Sentence::exists_neg_phi(formula());
    if (op == "neg") return Sentence::neg(kid("arg"));
    if (op == "and") return Sentence::conj(kid("lhs"), kid("rhs"));
    if (op == "or") return Sentence::disj(kid("lhs"), kid("rhs"));
    if (op == "imp") return Sentence::imp(kid("lhs"), kid("rhs"));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(sub(path, "op"), "unknown sentence op '" + op + "'");
}

Json scenario_to_json(const ArithScenario& sc) {
  Json j;
  j["machine"] = machine_name(sc.machine);
  j["m"] = sc.m;
  j["n"] = sc.n;
  j["family"] = Json::array();
  for (const auto& e : sc.family.entries)
    j["family"].push_back({{"A", render_formula(e.a)}, {"model", model_to_json(e.model)}, {"refuting_world", e.refuting_world}});
  j["events"] = Json::array();
  for (const auto& ev : sc.events) j["events"].push_back({{"code", ev.code}, {"sentence", sentence_to_json(ev.sentence)}});
  j["repeat"] = sc.repeat;
  j["sigma_witness"] = Json::object();
  for (const auto& [name, w] : sc.sigma_witness) j["sigma_witness"][name] = w;
  if (sc.branch.consistent) {
    j["branch"] = "consistent";
  } else {
    Json via = "neg_s";
    if (sc.branch.via == Via::PhiTrigger)
      via = {{"phi_trigger", {{"k", sc.branch.k}, {"B", render_formula(sc.branch.b)}}}};
    j["branch"] = {{"ill_at", {{"world", sc.branch.target}, {"via", via}}}};
  }
  if (sc.horizon)
    j["horizon"] = *sc.horizon;
  else
    j["horizon"] = "auto";
  return j;
}

ArithScenario scenario_from_json(const Json& j, const std::string& path) {
  ArithScenario sc;
  try {
    sc.machine = parse_machine(as_string(field(j, "machine", path), sub(path, "machine")));
  } catch (const ScenarioError& e) {
    fail(sub(path, "machine"), e.what());
  }
  sc.m = as_index(field(j, "m", path), sub(path, "m"));
  sc.n = as_index(field(j, "n", path), sub(path, "n"));

  if (const Json* fam = optional_field(j, "family", path)) {
    std::string fp = sub(path, "family");
    as_array(*fam, fp);
    for (std::size_t k = 0; k < fam->size(); ++k) {
      std::string ep = at(fp, k);
      const Json& e = (*fam)[k];
      FamilyEntry fe;
      fe.a = as_formula(field(e, "A", ep), sub(ep, "A"));
      fe.model = model_from_json(field(e, "model", ep), sub(ep, "model"));
      fe.refuting_world = as_world(field(e, "refuting_world", ep), sub(ep, "refuting_world"));
      sc.family.entries.push_back(std::move(fe));
    }
  }

  std::string evp = sub(path, "events");
  const Json& evs = as_array(field(j, "events", path), evp);
  for (std::size_t i = 0; i < evs.size(); ++i) {
    std::string ep = at(evp, i);
    ProofEvent ev;
    ev.code = as_uint(field(evs[i], "code", ep), sub(ep, "code"));
    ev.sentence = sentence_from_json(field(evs[i], "sentence", ep), sub(ep, "sentence"));
    sc.events.push_back(ev);
  }

  if (const Json* r = optional_field(j, "repeat", path)) sc.repeat = as_bool(*r, sub(path, "repeat"));
  if (const Json* sw = optional_field(j, "sigma_witness", path)) {
    std::string wp = sub(path, "sigma_witness");
    if (!sw->is_object()) fail(wp, "expected an object");
    for (const auto& [name, w] : sw->items()) sc.sigma_witness[name] = as_uint(w, wp + "[\"" + name + "\"]");
  }

  if (const Json* b = optional_field(j, "branch", path)) {
    std::string bp = sub(path, "branch");
    if (b->is_string()) {
      if (b->get<std::string>() != "consistent") fail(bp, "expected \"consistent\" or {\"ill_at\": ...}");
    } else {
      std::string ip = sub(bp, "ill_at");
      const Json& ill = field(*b, "ill_at", bp);
      sc.branch.consistent = false;
      sc.branch.target = as_world(field(ill, "world", ip), sub(ip, "world"));
      const Json& via = field(ill, "via", ip);
      std::string vp = sub(ip, "via");
      if (via.is_string()) {
        if (via.get<std::string>() != "neg_s") fail(vp, "expected \"neg_s\" or {\"phi_trigger\": ...}");
        sc.branch.via = Via::DirectNegS;
      } else {
        std::string pp = sub(vp, "phi_trigger");
        const Json& pt = field(via, "phi_trigger", vp);
        sc.branch.via = Via::PhiTrigger;
        sc.branch.k = as_index(field(pt, "k", pp), sub(pp, "k"));
        sc.branch.b = as_formula(field(pt, "B", pp), sub(pp, "B"));
      }
    }
  }

  if (const Json* h = optional_field(j, "horizon", path)) {
    std::string hp = sub(path, "horizon");
    if (h->is_string()) {
      if (h->get<std::string>() != "auto") fail(hp, "expected an integer or \"auto\"");
    } else {
      sc.horizon = as_uint(*h, hp);
    }
  }

  try {
    validate_scenario(sc);
  } catch (const ScenarioError& e) {
    fail(path, e.what());
  }
  return sc;
}

Json report_to_json(const TraceReport& r) {
  Json j;
  j["pass"] = r.all_pass();
  j["horizon"] = r.horizon;
  j["horizon_mode"] = r.auto_horizon ? "auto" : "explicit";
  j["claims"] = Json::array();
  for (const auto& c : r.entries) {
    Json e;
    e["claim"] = c.claim;
    e["pass"] = c.pass;
    e["witness"] = c.witness ? Json(*c.witness) : Json(nullptr);
    e["detail"] = c.detail;
    j["claims"].push_back(e);
  }
  return j;
}

Json budget_to_json(const BudgetReport& b) {
  return {{"max_worlds", b.max_worlds},
          {"conflict_budget", b.conflict_budget},
          {"sizes_exhausted", b.sizes_exhausted},
          {"sizes_unknown", b.sizes_unknown},
          {"conflicts", b.conflicts}};
}

Json decision_to_json(const Decision& d, Formula a, std::size_t m, std::size_t n) {
  Json j;
  j["formula"] = render_formula(a);
  j["system"] = {{"m", m}, {"n", n}};
  j["verdict"] = verdict_name(d.verdict);
  if (d.proof) j["proof"] = proof_to_json(*d.proof);
  if (d.countermodel) j["countermodel"] = {{"model", model_to_json(d.countermodel->model)}, {"world", d.countermodel->world}};
  j["budget"] = budget_to_json(d.report);
  return j;
}

Json read_json_file(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

NModel load_model(const std::string& path) { return model_from_json(read_json_file(path)); }
Proof load_proof(const std::string& path) { return proof_from_json(read_json_file(path)); }
ArithScenario load_scenario(const std::string& path) { return scenario_from_json(read_json_file(path)); }

}  // namespace nalab
