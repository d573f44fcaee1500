#include "nalab/gen.hpp"

#include <algorithm>
#include <set>

#include "nalab/decide.hpp"
#include "nalab/hilbert.hpp"
#include "nalab/parser.hpp"

namespace nalab::gen {

namespace {

template <class T>
T pick(Rng& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

const std::vector<std::string> kVars = {"p", "q", "r"};

bool satisfiable(const std::vector<ProofEvent>& evs) {
  SatEntailment sat;
  AtomMap atoms;
  for (const auto& e : evs) sat.add_premise(i_translate(e.sentence, atoms));
  return sat.premises_consistent();
}

Sentence leaf(Rng& rng) {
  switch (below(rng, 8)) {
    case 0:
    case 1:
      return Sentence::base("s" + std::to_string(below(rng, 3)), true);
    case 2:
      return Sentence::base("t" + std::to_string(below(rng, 2)), false);
    case 3:
    case 4:
      return Sentence::fatom(kVars[below(rng, 2)]);
    case 5:
      return Sentence::forall_phi(Formula::var(kVars[below(rng, 2)]));
    case 6:
      return Sentence::exists_neg_phi(Formula::var(kVars[below(rng, 2)]));
    default:
      return Sentence::neq_zero(1);
  }
}

Sentence random_sentence(Rng& rng, std::size_t depth) {
  if (depth == 0 || coin(rng, 0.3)) return leaf(rng);
  switch (below(rng, 6)) {
    case 0:
    case 1:
      return Sentence::prg(random_sentence(rng, depth - 1));
    case 2:
      return Sentence::neg(random_sentence(rng, depth - 1));
    case 3:
      return Sentence::conj(random_sentence(rng, depth - 1), random_sentence(rng, depth - 1));
    case 4:
      return Sentence::disj(random_sentence(rng, depth - 1), random_sentence(rng, depth - 1));
    default:
      return Sentence::imp(random_sentence(rng, depth - 1), random_sentence(rng, depth - 1));
  }
}

std::map<std::string, std::uint64_t> random_witnesses(Rng& rng) {
  std::map<std::string, std::uint64_t> w;
  for (int i = 0; i < 3; ++i)
    if (coin(rng, 0.7)) w["s" + std::to_string(i)] = below(rng, 41);
  for (int i = 0; i < 2; ++i)
    if (coin(rng)) w["t" + std::to_string(i)] = 0;
  return w;
}

std::vector<std::uint64_t> random_codes(Rng& rng, std::size_t count, std::uint64_t first, std::uint64_t span) {
  std::set<std::uint64_t> codes;
  while (codes.size() < count) codes.insert(first + below(rng, span));
  return {codes.begin(), codes.end()};
}

NModel renumber(const NModel& m, const std::map<WorldId, WorldId>& ren) {
  std::set<WorldId> worlds;
  for (WorldId w : m.worlds()) worlds.insert(ren.at(w));
  std::map<Formula, Relation> rel;
  for (const auto& [b, r] : m.relations())
    for (auto [x, y] : r) rel[b].insert({ren.at(x), ren.at(y)});
  std::map<WorldId, std::set<std::string>> val;
  for (const auto& [w, vs] : m.valuation()) val[ren.at(w)] = vs;
  return NModel(worlds, rel, val);
}

}  // namespace

Formula random_formula(Rng& rng, std::size_t depth, std::size_t nvars) {
  if (depth == 0 || coin(rng, 0.25)) {
    if (coin(rng, 0.08)) return Formula::bot();
    return Formula::var(kVars[below(rng, std::min(nvars, kVars.size()))]);
  }
  switch (below(rng, 6)) {
    case 0:
      return Formula::neg(random_formula(rng, depth - 1, nvars));
    case 1:
      return Formula::conj(random_formula(rng, depth - 1, nvars), random_formula(rng, depth - 1, nvars));
    case 2:
      return Formula::disj(random_formula(rng, depth - 1, nvars), random_formula(rng, depth - 1, nvars));
    case 3:
      return Formula::imp(random_formula(rng, depth - 1, nvars), random_formula(rng, depth - 1, nvars));
    default:
      return Formula::box(random_formula(rng, depth - 1, nvars));
  }
}

std::vector<FamilyEntry> registered_countermodels(std::size_t m, std::size_t n, std::size_t count,
                                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FamilyEntry> out;
  std::set<Formula> seen;
  for (int attempt = 0; attempt < 20000 && out.size() < count; ++attempt) {
    Formula a = random_formula(rng, 3);
    if (a.modal_depth() == 0 || !seen.insert(a).second) continue;
    SearchOutcome s = search_countermodel(a, m, n, 3, 20000);
    if (!s.found || !verify_countermodel(a, m, n, s.found->model, s.found->world)) continue;
    out.push_back({a, s.found->model, s.found->world});
  }
  return out;
}

ModelFamily make_family(const std::vector<FamilyEntry>& entries) {
  ModelFamily fam;
  WorldId next = 1;
  for (const auto& e : entries) {
    std::map<WorldId, WorldId> ren;
    for (WorldId w : e.model.worlds()) ren[w] = next++;
    fam.entries.push_back({e.a, renumber(e.model, ren), ren.at(e.refuting_world)});
  }
  return fam;
}

std::vector<ProofEvent> lemma_events(const ModelFamily& family, MonitorKind kind, std::uint64_t first_code) {
  std::vector<Sentence> lemmas;
  std::set<Sentence> seen;
  auto add = [&](Sentence s) {
    if (seen.insert(s).second) lemmas.push_back(s);
  };
  for (const auto& e : family.entries) {
    for (Formula c : subformulas(e.a)) {
      Sentence fc = f_interp(c);
      if (kind == MonitorKind::HPrime) {
        add(Sentence::imp(Sentence::exists_neg_phi(c), Sentence::neg(fc)));
        add(Sentence::imp(Sentence::neg(Sentence::exists_neg_phi(c)), Sentence::forall_phi(c)));
      }
      for (WorldId j : e.model.worlds()) {
        if (forces(e.model, j, c)) continue;
        auto uj = static_cast<std::uint64_t>(j);
        if (kind == MonitorKind::H)
          add(Sentence::imp(Sentence::shat(uj), Sentence::neg(fc)));
        else
          add(phi_trigger(c, uj));
      }
    }
  }
  std::vector<ProofEvent> out;
  std::uint64_t code = first_code;
  for (Sentence s : lemmas) out.push_back({code++, s});
  return out;
}

ArithScenario consistent_scenario(MachineKind kind, std::size_t m, std::size_t n, Rng& rng) {
  for (;;) {
    ArithScenario sc;
    sc.machine = kind;
    sc.m = m;
    sc.n = n;
    sc.repeat = coin(rng);
    sc.sigma_witness = random_witnesses(rng);
    std::size_t count = 3 + below(rng, 6);
    std::vector<Sentence> sents;
    while (sents.size() < count) {
      if (coin(rng, 0.3)) {
        // A PR ladder over one core, in shuffled order.
        Sentence core = random_sentence(rng, 1);
        std::size_t r = 1 + below(rng, 3);
        std::vector<Sentence> rung;
        for (std::size_t i = 0; i <= r; ++i) rung.push_back(pr_power(core, i));
        std::shuffle(rung.begin(), rung.end(), rng);
        sents.insert(sents.end(), rung.begin(), rung.end());
      } else {
        sents.push_back(random_sentence(rng, 3));
      }
    }
    auto codes = random_codes(rng, sents.size(), 1, 10 + 3 * sents.size());
    for (std::size_t i = 0; i < sents.size(); ++i) sc.events.push_back({codes[i], sents[i]});
    if (satisfiable(sc.events)) return sc;
  }
}

ArithScenario ill_scenario(MachineKind kind, std::size_t m, std::size_t n, const ModelFamily& family, Rng& rng) {
  ArithScenario sc;
  sc.machine = kind;
  sc.m = m;
  sc.n = n;
  sc.family = family;
  sc.repeat = coin(rng);
  sc.sigma_witness = random_witnesses(rng);
  MonitorKind mon = monitor_for(kind);
  auto worlds = family.all_worlds();
  auto code = static_cast<std::uint64_t>(worlds.back());
  sc.events = lemma_events(family, mon, code);
  code += sc.events.size();
  for (std::size_t i = 0, k = below(rng, 4); i < k; ++i) {
    code += below(rng, 3);
    Sentence s = coin(rng) ? Sentence::base("s" + std::to_string(below(rng, 3)), true)
                           : Sentence::base("t" + std::to_string(below(rng, 2)), false);
    sc.events.push_back({code++, s});
  }
  WorldId target = pick(rng, worlds);
  std::size_t k = *family.family_of(target);
  sc.branch.consistent = false;
  sc.branch.target = target;
  code += below(rng, 3);
  if (mon == MonitorKind::HPrime && coin(rng)) {
    sc.branch.via = Via::PhiTrigger;
    sc.branch.k = k;
    sc.branch.b = pick(rng, subformulas(family.entries[k].a));
    sc.events.push_back({code++, Sentence::forall_phi(sc.branch.b)});
    sc.events.push_back({code++, phi_trigger(sc.branch.b, static_cast<std::uint64_t>(target))});
  } else {
    sc.branch.via = Via::DirectNegS;
    sc.events.push_back({code++, Sentence::neg(Sentence::shat(static_cast<std::uint64_t>(target)))});
  }
  return sc;
}

ArithScenario monitor_scenario(MonitorKind kind, Rng& rng) {
  static const ModelFamily fam = make_family(registered_countermodels(1, 2, 3, 7));
  ArithScenario sc;
  sc.machine = kind == MonitorKind::H ? MachineKind::G0 : MachineKind::G2;
  sc.m = 1;
  sc.n = 2;
  sc.family = fam;
  sc.repeat = coin(rng);
  sc.sigma_witness = random_witnesses(rng);
  auto worlds = fam.all_worlds();
  bool quiet = coin(rng);
  std::size_t count = 2 + below(rng, 8);
  auto codes = random_codes(rng, count, 1, 30);
  for (std::uint64_t c : codes) {
    Sentence s = random_sentence(rng, 2);
    if (!quiet && coin(rng, 0.6)) {
      auto j = [&] { return 1 + below(rng, std::min<std::uint64_t>(c, 8)); };
      switch (below(rng, 7)) {
        case 0:
          s = Sentence::neg(Sentence::shat(j()));
          break;
        case 1:
          s = Sentence::imp(Sentence::shat(j()), random_sentence(rng, 1));
          break;
        case 2:
          s = Sentence::disj(Sentence::neg(Sentence::shat(j())), Sentence::neg(Sentence::shat(j())));
          break;
        case 3:
          s = Sentence::neg(Sentence::conj(Sentence::shat(j()), leaf(rng)));
          break;
        case 4:
          s = coin(rng, 0.2) ? Sentence::falsum() : Sentence::imp(leaf(rng), Sentence::shat(j()));
          break;
        default: {
          WorldId w = pick(rng, worlds);
          if (static_cast<std::uint64_t>(w) > c) break;
          Formula b = pick(rng, subformulas(fam.entries[*fam.family_of(w)].a));
          s = coin(rng) ? Sentence::forall_phi(b) : phi_trigger(b, static_cast<std::uint64_t>(w));
          break;
        }
      }
    }
    sc.events.push_back({c, s});
  }
  return sc;
}

bool trigger_free(const ArithScenario& sc) {
  for (const auto& e : sc.events)
    if (mentions_shat(e.sentence)) return false;
  return satisfiable(sc.events);
}

ArithScenario ladder_scenario(std::size_t m, std::size_t n, std::size_t m_prime) {
  Formula a = Formula::imp(Formula::box(Formula::var("p"), m_prime), Formula::var("q"));
  NModel model({1}, {}, {{1, {"p"}}});
  ArithScenario sc;
  sc.machine = MachineKind::G2;
  sc.m = m;
  sc.n = n;
  sc.family = make_family({{a, model, 1}});
  sc.events = lemma_events(sc.family, MonitorKind::HPrime, 1);
  sc.events.push_back({sc.events.back().code + 1, Sentence::neg(Sentence::shat(1))});
  sc.branch.consistent = false;
  sc.branch.target = 1;
  return sc;
}

ArithScenario k_axiom_scenario() {
  Formula a = parse_formula("[](p -> q) -> ([]p -> []q)");
  NModel model({1, 2}, {{Formula::var("q"), {{1, 2}}}}, {});
  ArithScenario sc;
  sc.machine = MachineKind::G1;
  sc.m = 1;
  sc.n = 1;
  sc.family = make_family({{a, model, 1}});
  sc.events = lemma_events(sc.family, MonitorKind::H, 2);
  sc.events.push_back({sc.events.back().code + 1, Sentence::neg(Sentence::shat(1))});
  sc.branch.consistent = false;
  sc.branch.target = 1;
  return sc;
}

}  // namespace nalab::gen
