#include "nalab/semantics.hpp"

#include <algorithm>
#include <set>

namespace nalab {

NModel::NModel(std::set<WorldId> worlds, std::map<Formula, Relation> relations,
               std::map<WorldId, std::set<std::string>> valuation)
    : worlds_(std::move(worlds)), relations_(std::move(relations)), valuation_(std::move(valuation)) {
  if (worlds_.empty()) throw ModelError("model has no worlds");
  for (WorldId w : worlds_)
    if (w <= 0) throw ModelError("world ids must be positive, got " + std::to_string(w));
  auto check = [&](WorldId w) {
    if (!worlds_.contains(w)) throw ModelError("unknown world " + std::to_string(w));
  };
  for (auto it = relations_.begin(); it != relations_.end();) {
    for (const auto& [x, y] : it->second) {
      check(x);
      check(y);
    }
    // Empty entries carry no information; dropping them keeps equality structural.
    it = it->second.empty() ? relations_.erase(it) : std::next(it);
  }
  for (auto it = valuation_.begin(); it != valuation_.end();) {
    check(it->first);
    it = it->second.empty() ? valuation_.erase(it) : std::next(it);
  }
}

bool NModel::related(Formula b, WorldId x, WorldId y) const {
  auto it = relations_.find(b);
  return it != relations_.end() && it->second.contains({x, y});
}

std::vector<WorldId> NModel::successors(Formula b, WorldId x) const {
  std::vector<WorldId> out;
  auto it = relations_.find(b);
  if (it == relations_.end()) return out;
  for (auto e = it->second.lower_bound({x, 0}); e != it->second.end() && e->first == x; ++e)
    out.push_back(e->second);
  return out;
}

bool NModel::holds(WorldId w, const std::string& var) const {
  auto it = valuation_.find(w);
  return it != valuation_.end() && it->second.contains(var);
}

std::vector<Formula> NModel::support() const {
  std::vector<Formula> out;
  for (const auto& [b, r] : relations_)
    if (!r.empty()) out.push_back(b);
  return out;
}

namespace {

void require_world(const NModel& model, WorldId w) {
  if (!model.has_world(w)) throw ModelError("unknown world " + std::to_string(w));
}

bool eval(const NModel& model, WorldId w, Formula a) {
  switch (a.op()) {
    case Op::Var:
      return model.holds(w, a.name());
    case Op::Bot:
      return false;
    case Op::Neg:
      return !eval(model, w, a.child());
    case Op::And:
      return eval(model, w, a.lhs()) && eval(model, w, a.rhs());
    case Op::Or:
      return eval(model, w, a.lhs()) || eval(model, w, a.rhs());
    case Op::Imp:
      return !eval(model, w, a.lhs()) || eval(model, w, a.rhs());
    case Op::Box:
      for (WorldId y : model.successors(a.child(), w))
        if (!eval(model, y, a.child())) return false;
      return true;
  }
  return false;
}

// Worlds x with x ≺_b^k y, built backwards from y one relation at a time.
std::set<WorldId> chain_sources(const NModel& model, Formula b, std::size_t k, WorldId y) {
  std::set<WorldId> cur{y};
  for (std::size_t i = 1; i <= k && !cur.empty(); ++i) {
    std::set<WorldId> next;
    auto it = model.relations().find(Formula::box(b, i - 1));
    if (it != model.relations().end())
      for (const auto& [x, w] : it->second)
        if (cur.contains(w)) next.insert(x);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

bool forces(const NModel& model, WorldId w, Formula a) {
  require_world(model, w);
  return eval(model, w, a);
}

bool valid_in_model(const NModel& model, Formula a) {
  return std::all_of(model.worlds().begin(), model.worlds().end(),
                     [&](WorldId w) { return eval(model, w, a); });
}

bool chain(const NModel& model, Formula b, std::size_t k, WorldId x, WorldId y) {
  require_world(model, x);
  require_world(model, y);
  return chain_sources(model, b, k, y).contains(x);
}

std::optional<std::vector<WorldId>> chain_path(const NModel& model, Formula b, std::size_t k,
                                               WorldId x, WorldId y) {
  require_world(model, x);
  require_world(model, y);
  std::vector<WorldId> path{x};
  WorldId cur = x;
  // Greedy forward walk: at step i pick any successor that still reaches y in k-i steps.
  for (std::size_t i = k; i >= 1; --i) {
    bool moved = false;
    for (WorldId w : model.successors(Formula::box(b, i - 1), cur)) {
      if (chain_sources(model, b, i - 1, y).contains(w)) {
        path.push_back(w);
        cur = w;
        moved = true;
        break;
      }
    }
    if (!moved) return std::nullopt;
  }
  if (cur != y) return std::nullopt;
  return path;
}

AccessReport is_mn_accessible(const NModel& model, std::size_t m, std::size_t n,
                              const std::vector<Formula>& universe) {
  for (Formula b : universe) {
    for (WorldId y : model.worlds()) {
      auto from_m = chain_sources(model, b, m, y);
      if (from_m.empty()) continue;
      auto from_n = chain_sources(model, b, n, y);
      for (WorldId x : from_m) {
        if (from_n.contains(x)) continue;
        AccessWitness w{b, x, y, *chain_path(model, b, m, x, y)};
        return {false, std::move(w)};
      }
    }
  }
  return {true, std::nullopt};
}

std::vector<Formula> relation_universe(Formula a, std::size_t m, std::size_t n) {
  std::set<Formula> out;
  std::size_t top = std::max(m, n);
  for (Formula b : subformulas(a))
    for (std::size_t j = 0; j <= top; ++j) out.insert(Formula::box(b, j));
  return {out.begin(), out.end()};
}

std::vector<Formula> support_universe(const NModel& model, std::size_t m, std::size_t n) {
  std::set<Formula> out;
  for (Formula s : model.support())
    for (Formula b : relation_universe(s, m, n)) out.insert(b);
  return {out.begin(), out.end()};
}

DisjointUnion disjoint_union(const std::vector<NModel>& models) {
  std::set<WorldId> seen;
  bool overlap = false;
  for (const auto& mdl : models)
    for (WorldId w : mdl.worlds())
      if (!seen.insert(w).second) overlap = true;

  DisjointUnion out;
  std::set<WorldId> worlds;
  std::map<Formula, Relation> rel;
  std::map<WorldId, std::set<std::string>> val;
  WorldId next = 1;
  for (const auto& mdl : models) {
    std::map<WorldId, WorldId> ren;
    for (WorldId w : mdl.worlds()) ren[w] = overlap ? next++ : w;
    for (const auto& [w, nw] : ren) worlds.insert(nw);
    for (const auto& [b, r] : mdl.relations())
      for (const auto& [x, y] : r) rel[b].insert({ren[x], ren[y]});
    for (const auto& [w, vars] : mdl.valuation()) val[ren[w]] = vars;
    out.renaming.push_back(std::move(ren));
  }
  out.model = NModel(std::move(worlds), std::move(rel), std::move(val));
  return out;
}

}  // namespace nalab
