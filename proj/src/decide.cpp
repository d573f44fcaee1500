#include "nalab/decide.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <stdexcept>

#include "nalab/sat.hpp"

namespace nalab {

namespace {

using sat::Lit;

class Encoding {
 public:
  Encoding(Formula a, std::size_t m, std::size_t n, int worlds)
      : a_(a), m_(m), n_(n), w_(worlds), universe_(relation_universe(a, m, n)) {
    for (const auto& v : variables(a))
      for (int x = 0; x < w_; ++x) val_[{v, x}] = cnf_.fresh();
    for (Formula c : universe_)
      for (int x = 0; x < w_; ++x)
        for (int y = 0; y < w_; ++y) edge_[{c, x, y}] = cnf_.fresh();

    for (Formula d : subformulas(a))
      for (int x = 0; x < w_; ++x) force_[{d, x}] = gate(d, x);
    cnf_.require(~force_.at({a, 0}));

    for (Formula b : universe_)
      for (int x = 0; x < w_; ++x)
        for (int y = 0; y < w_; ++y) cnf_.clause({~chain(b, m_, x, y), chain(b, n_, x, y)});
  }

  sat::Result solve(std::uint64_t budget) { return cnf_.solver().solve(budget); }
  std::uint64_t conflicts() { return cnf_.solver().conflicts(); }

  Countermodel extract() {
    std::set<WorldId> worlds;
    for (int x = 0; x < w_; ++x) worlds.insert(x + 1);
    std::map<Formula, Relation> rel;
    for (const auto& [k, l] : edge_)
      if (cnf_.solver().value(l)) rel[std::get<0>(k)].insert({std::get<1>(k) + 1, std::get<2>(k) + 1});
    std::map<WorldId, std::set<std::string>> val;
    for (const auto& [k, l] : val_)
      if (cnf_.solver().value(l)) val[k.second + 1].insert(k.first);
    return {NModel(worlds, rel, val), 1};
  }

 private:
  Lit edge(Formula c, int x, int y) {
    auto it = edge_.find({c, x, y});
    return it == edge_.end() ? cnf_.constant(false) : it->second;
  }

  Lit gate(Formula d, int x) {
    switch (d.op()) {
      case Op::Var:
        return val_.at({d.name(), x});
      case Op::Bot:
        return cnf_.constant(false);
      case Op::Neg:
        return ~force_.at({d.child(), x});
      case Op::And:
        return cnf_.and2(force_.at({d.lhs(), x}), force_.at({d.rhs(), x}));
      case Op::Or:
        return cnf_.or2(force_.at({d.lhs(), x}), force_.at({d.rhs(), x}));
      case Op::Imp:
        return cnf_.imp(force_.at({d.lhs(), x}), force_.at({d.rhs(), x}));
      case Op::Box: {
        std::vector<Lit> all;
        for (int y = 0; y < w_; ++y) all.push_back(cnf_.imp(edge(d.child(), x, y), force_.at({d.child(), y})));
        return cnf_.and_of(all);
      }
    }
    return cnf_.constant(false);
  }

  // x ≺_b^k y as a literal, memoised.
  Lit chain(Formula b, std::size_t k, int x, int y) {
    if (k == 0) return cnf_.constant(x == y);
    auto key = std::make_tuple(b, k, x, y);
    if (auto it = chain_.find(key); it != chain_.end()) return it->second;
    std::vector<Lit> ways;
    Formula via = Formula::box(b, k - 1);
    for (int w = 0; w < w_; ++w) ways.push_back(cnf_.and2(edge(via, x, w), chain(b, k - 1, w, y)));
    Lit l = cnf_.or_of(ways);
    chain_.emplace(key, l);
    return l;
  }

  Formula a_;
  std::size_t m_, n_;
  int w_;
  std::vector<Formula> universe_;
  sat::CnfBuilder cnf_;
  std::map<std::pair<std::string, int>, Lit> val_;
  std::map<std::tuple<Formula, int, int>, Lit> edge_;
  std::map<std::pair<Formula, int>, Lit> force_;
  std::map<std::tuple<Formula, std::size_t, int, int>, Lit> chain_;
};

}  // namespace

SearchOutcome search_countermodel(Formula a, std::size_t m, std::size_t n, std::size_t max_worlds,
                                  std::uint64_t conflict_budget) {
  if (max_worlds < 1) throw std::invalid_argument("max_worlds must be at least 1");
  SearchOutcome out;
  out.report.max_worlds = max_worlds;
  out.report.conflict_budget = conflict_budget;
  // m = 0 asks x ≺_B^n x for every B; no finitely supported model meets that.
  if (m == 0 && n >= 1) {
    for (std::size_t size = 1; size <= max_worlds; ++size) out.report.sizes_unknown.push_back(size);
    return out;
  }
  for (std::size_t size = 1; size <= max_worlds; ++size) {
    Encoding enc(a, m, n, static_cast<int>(size));
    sat::Result r = enc.solve(conflict_budget);
    out.report.conflicts += enc.conflicts();
    if (r == sat::Result::Sat) {
      out.found = enc.extract();
      return out;
    }
    (r == sat::Result::Unsat ? out.report.sizes_exhausted : out.report.sizes_unknown).push_back(size);
  }
  return out;
}

bool verify_countermodel(Formula a, std::size_t m, std::size_t n, const NModel& model, WorldId w) {
  if (!model.has_world(w)) return false;
  // Relations placed outside the closure of a are covered by the support universe.
  std::set<Formula> u;
  for (Formula b : relation_universe(a, m, n)) u.insert(b);
  for (Formula b : support_universe(model, m, n)) u.insert(b);
  if (!is_mn_accessible(model, m, n, {u.begin(), u.end()}).accessible) return false;
  return !forces(model, w, a);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Provable:
      return "provable";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

Decision decide(Formula a, std::size_t m, std::size_t n, const DecideOptions& opts) {
  Decision d;
  d.report.max_worlds = opts.max_worlds;
  d.report.conflict_budget = opts.conflict_budget;
  if (auto pf = prove_axiom_instance(a, m, n, opts.atom_guard)) {
    CheckOptions co;
    co.atom_guard = opts.atom_guard;
    if (!check_proof(*pf, co).accepted) throw std::logic_error("generated proof failed to check");
    d.verdict = Verdict::Provable;
    d.proof = std::move(pf);
    return d;
  }
  SearchOutcome s = search_countermodel(a, m, n, opts.max_worlds, opts.conflict_budget);
  d.report = s.report;
  if (s.found) {
    if (!verify_countermodel(a, m, n, s.found->model, s.found->world))
      throw std::logic_error("countermodel failed re-verification");
    d.verdict = Verdict::Refuted;
    d.countermodel = std::move(s.found);
  }
  return d;
}

}  // namespace nalab
