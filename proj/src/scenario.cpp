#include "nalab/scenario.hpp"

#include <algorithm>
#include <set>

#include "nalab/parser.hpp"

namespace nalab {

std::string machine_name(MachineKind k) {
  switch (k) {
    case MachineKind::G0:
      return "g0";
    case MachineKind::G1:
      return "g1";
    case MachineKind::G2:
      return "g2";
    case MachineKind::G3:
      return "g3";
  }
  return "?";
}

MachineKind parse_machine(const std::string& s) {
  if (s == "g0") return MachineKind::G0;
  if (s == "g1") return MachineKind::G1;
  if (s == "g2") return MachineKind::G2;
  if (s == "g3") return MachineKind::G3;
  throw ScenarioError("unknown machine '" + s + "'");
}

MonitorKind monitor_for(MachineKind k) {
  return k == MachineKind::G0 || k == MachineKind::G1 ? MonitorKind::H : MonitorKind::HPrime;
}

std::optional<std::size_t> ModelFamily::family_of(WorldId w) const {
  for (std::size_t k = 0; k < entries.size(); ++k)
    if (entries[k].model.has_world(w)) return k;
  return std::nullopt;
}

bool ModelFamily::refutes(Formula b, WorldId i) const {
  auto k = family_of(i);
  if (!k) return false;
  const FamilyEntry& e = entries[*k];
  return is_subformula(b, e.a) && !forces(e.model, i, b);
}

std::vector<WorldId> ModelFamily::all_worlds() const {
  std::vector<WorldId> out;
  for (const auto& e : entries) out.insert(out.end(), e.model.worlds().begin(), e.model.worlds().end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool has_event(const ArithScenario& sc, Sentence s) {
  return std::any_of(sc.events.begin(), sc.events.end(), [&](const ProofEvent& e) { return e.sentence == s; });
}

}  // namespace

void validate_scenario(const ArithScenario& sc) {
  std::set<WorldId> seen;
  for (std::size_t k = 0; k < sc.family.entries.size(); ++k) {
    const FamilyEntry& e = sc.family.entries[k];
    std::string where = "family[" + std::to_string(k) + "]";
    for (WorldId w : e.model.worlds())
      if (!seen.insert(w).second) throw ScenarioError(where + ": world " + std::to_string(w) + " reused");
    if (!e.model.has_world(e.refuting_world))
      throw ScenarioError(where + ": unknown world " + std::to_string(e.refuting_world));
    AccessReport acc = is_mn_accessible(e.model, sc.m, sc.n, relation_universe(e.a, sc.m, sc.n));
    if (!acc.accessible) throw ScenarioError(where + ": model is not (m,n)-accessible");
    if (forces(e.model, e.refuting_world, e.a))
      throw ScenarioError(where + ": world " + std::to_string(e.refuting_world) + " forces " + render_formula(e.a));
  }

  std::uint64_t prev = 0;
  for (std::size_t i = 0; i < sc.events.size(); ++i) {
    const ProofEvent& ev = sc.events[i];
    std::string where = "events[" + std::to_string(i) + "]";
    if (ev.code == 0) throw ScenarioError(where + ": codes are positive");
    if (i > 0 && ev.code <= prev) throw ScenarioError(where + ": codes must strictly increase");
    prev = ev.code;
    if (max_numeral(ev.sentence) > ev.code)
      throw ScenarioError(where + ": numeral " + std::to_string(max_numeral(ev.sentence)) + " exceeds code " +
                          std::to_string(ev.code));
  }

  if (sc.horizon && *sc.horizon == 0) throw ScenarioError("horizon must be at least 1");

  if (!sc.branch.consistent) {
    WorldId i = sc.branch.target;
    auto k = sc.family.family_of(i);
    if (!k) throw ScenarioError("ill_at: world " + std::to_string(i) + " is in no family range");
    if (sc.branch.via == Via::DirectNegS) {
      if (!has_event(sc, Sentence::neg(Sentence::shat(static_cast<std::uint64_t>(i)))))
        throw ScenarioError("ill_at: trigger event ~S(" + std::to_string(i) + ") is absent");
    } else {
      if (monitor_for(sc.machine) != MonitorKind::HPrime)
        throw ScenarioError("ill_at: phi_trigger needs a g2 or g3 scenario");
      if (sc.branch.k != *k) throw ScenarioError("ill_at: world " + std::to_string(i) + " is not in W_k");
      if (!is_subformula(sc.branch.b, sc.family.entries[*k].a))
        throw ScenarioError("ill_at: " + render_formula(sc.branch.b) + " is not in Sub(A_k)");
      if (!has_event(sc, Sentence::forall_phi(sc.branch.b)) ||
          !has_event(sc, phi_trigger(sc.branch.b, static_cast<std::uint64_t>(i))))
        throw ScenarioError("ill_at: phi trigger events are absent");
    }
  }
}

ProofStream::ProofStream(const ArithScenario& sc) : repeat_(sc.repeat) {
  for (const auto& e : sc.events) {
    base_.emplace(e.code, e.sentence);
    first_.emplace(e.sentence, e.code);
  }
  if (!base_.empty()) period_ = base_.rbegin()->first + 1;
}

std::optional<Sentence> ProofStream::at(std::uint64_t code) const {
  std::uint64_t c = code < period_ ? code : (repeat_ ? code % period_ : code);
  auto it = base_.find(c);
  if (it == base_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint64_t> ProofStream::codes_of(Sentence s, std::uint64_t limit) const {
  std::vector<std::uint64_t> out;
  for (const auto& [c, t] : base_) {
    if (t != s) continue;
    for (std::uint64_t x = c; x < limit; x += period_) {
      out.push_back(x);
      if (!repeat_) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nalab
