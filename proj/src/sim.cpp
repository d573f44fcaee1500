#include "nalab/sim.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "nalab/hilbert.hpp"

namespace nalab {

namespace {

constexpr std::size_t kNoFamily = std::numeric_limits<std::size_t>::max();

void collect_shat(Sentence s, std::set<std::uint64_t>& out) {
  switch (s.kind()) {
    case SKind::SHat:
      out.insert(s.num());
      return;
    case SKind::PRg:
    case SKind::Neg:
      collect_shat(s.child(), out);
      return;
    case SKind::And:
    case SKind::Or:
    case SKind::Imp:
      collect_shat(s.lhs(), out);
      collect_shat(s.rhs(), out);
      return;
    default:
      return;
  }
}

std::size_t prg_depth(Sentence s) {
  switch (s.kind()) {
    case SKind::PRg:
      return 1 + prg_depth(s.child());
    case SKind::Neg:
      return prg_depth(s.child());
    case SKind::And:
    case SKind::Or:
    case SKind::Imp:
      return std::max(prg_depth(s.lhs()), prg_depth(s.rhs()));
    default:
      return 0;
  }
}

// Least triggered j in 1..bound for the current proved set, or 0.
class Trigger {
 public:
  Trigger(const ArithScenario& sc, MonitorKind kind) : sc_(sc), kind_(kind) {}

  void prove(Sentence s) {
    sat_.add_premise(i_translate(s, atoms_));
    collect_shat(s, mentioned_);
  }

  WorldId least(std::uint64_t bound) {
    if (!sat_.premises_consistent()) return 1;
    std::set<std::uint64_t> cand;
    for (std::uint64_t j : mentioned_)
      if (j <= bound) cand.insert(j);

    // φ-trigger clause: B whose ∀x φ_B(x) is already a t.c.
    std::vector<std::vector<Formula>> live(sc_.family.entries.size());
    if (kind_ == MonitorKind::HPrime) {
      for (std::size_t k = 0; k < sc_.family.entries.size(); ++k) {
        const FamilyEntry& e = sc_.family.entries[k];
        for (Formula b : subformulas(e.a))
          if (entails(Sentence::forall_phi(b))) live[k].push_back(b);
        if (live[k].empty()) continue;
        for (WorldId w : e.model.worlds())
          if (static_cast<std::uint64_t>(w) <= bound) cand.insert(static_cast<std::uint64_t>(w));
      }
    }

    for (std::uint64_t j : cand) {
      if (entails(Sentence::neg(Sentence::shat(j)))) return static_cast<WorldId>(j);
      if (kind_ != MonitorKind::HPrime) continue;
      auto k = sc_.family.family_of(static_cast<WorldId>(j));
      if (!k) continue;
      for (Formula b : live[*k])
        if (entails(phi_trigger(b, j))) return static_cast<WorldId>(j);
    }
    return 0;
  }

 private:
  bool entails(Sentence s) { return sat_.entails(i_translate(s, atoms_)); }

  const ArithScenario& sc_;
  MonitorKind kind_;
  SatEntailment sat_;
  AtomMap atoms_;
  std::set<std::uint64_t> mentioned_;
};

// Operational truth at stage l. `final` reads σ1 atoms by witness presence
// and PRg over the whole trace.
struct Truth {
  const ArithScenario& sc;
  const std::vector<WorldId>& h;
  const std::unordered_map<Sentence, std::uint64_t>& first;
  std::uint64_t l;
  bool final;

  WorldId reached() const { return h[std::min<std::size_t>(l, h.size() - 1)]; }

  bool operator()(Sentence s) const {
    switch (s.kind()) {
      case SKind::Base: {
        auto it = sc.sigma_witness.find(s.name());
        if (it == sc.sigma_witness.end()) return false;
        return !s.sigma1_flag() || final || it->second <= l;
      }
      case SKind::Falsum:
        return false;
      case SKind::SHat:
        return static_cast<std::uint64_t>(reached()) == s.num();
      case SKind::FAtom: {
        WorldId w = reached();
        if (w == 0) return false;
        auto k = sc.family.family_of(w);
        return k && sc.family.entries[*k].model.holds(w, s.name());
      }
      case SKind::PRg: {
        auto it = first.find(s.child());
        return it != first.end() && it->second < l;
      }
      case SKind::NeqZero:
        return s.num() != 0;
      case SKind::Refutes:
        return sc.family.refutes(s.formula(), static_cast<WorldId>(s.num()));
      case SKind::ForAllPhi: {
        WorldId w = reached();
        return !(w != 0 && sc.family.refutes(s.formula(), w));
      }
      case SKind::ExistsNegPhi: {
        WorldId w = reached();
        return w != 0 && sc.family.refutes(s.formula(), w);
      }
      case SKind::Neg:
        return !(*this)(s.child());
      case SKind::And:
        return (*this)(s.lhs()) && (*this)(s.rhs());
      case SKind::Or:
        return (*this)(s.lhs()) || (*this)(s.rhs());
      case SKind::Imp:
        return !(*this)(s.lhs()) || (*this)(s.rhs());
    }
    return false;
  }
};

class Machine {
 public:
  Machine(MachineKind kind, const ArithScenario& sc, SimTrace& tr)
      : kind_(kind), sc_(sc), tr_(tr), stream_(sc) {
    if (tr_.switch_info) {
      const FamilyEntry& e = sc_.family.entries[tr_.switch_info->family_index];
      for (Formula b : subformulas(e.a)) sub_.insert(b);
    }
  }

  void run() {
    for (std::uint64_t s = 0; s < tr_.horizon; ++s) {
      const auto& sw = tr_.switch_info;
      if (!sw || s < sw->stage) {
        auto e = stream_.at(s);
        if (e && procedure1(*e, s)) emit(s, *e);
      } else {
        std::uint64_t t = s - sw->stage;
        if (t < tr_.relevant.size())
          if (auto o = procedure2(tr_.relevant[t], s, t)) emit(s, *o);
      }
    }
  }

 private:
  void emit(std::uint64_t s, Sentence x) {
    tr_.outputs[s] = x;
    tr_.first_output.emplace(x, s);
  }

  bool output_before(Sentence x, std::uint64_t limit, std::uint64_t current) const {
    if (limit > current) throw std::logic_error("machine read a slot that is not strictly earlier");
    auto it = tr_.first_output.find(x);
    return it != tr_.first_output.end() && it->second < limit;
  }

  bool procedure1(Sentence phi, std::uint64_t s) const {
    if (kind_ != MachineKind::G0) return true;
    if (!is_sigma1(phi)) return true;
    if (phi.is(SKind::PRg)) {
      auto [r, core] = pr_strip(phi);
      for (std::size_t i = 0; i < r; ++i)
        if (!output_before(pr_power(core, i), s, s)) return false;
      return true;
    }
    if (s == 0) return false;
    return Truth{sc_, tr_.h_values, tr_.first_output, s - 1, false}(phi);
  }

  // i ⊩_k □B when xi = f(B) with □B ∈ Sub(A_k); nullopt if xi has no such shape.
  std::optional<bool> boxed(Sentence xi) const {
    auto b = f_inverse(xi);
    if (!b) return std::nullopt;
    Formula bb = Formula::box(*b);
    if (!sub_.contains(bb)) return std::nullopt;
    const auto& sw = *tr_.switch_info;
    return forces(sc_.family.entries[sw.family_index].model, sw.world, bb);
  }

  std::optional<Sentence> procedure2(Sentence xi, std::uint64_t s, std::uint64_t t) const {
    std::optional<bool> f = boxed(xi);
    switch (kind_) {
      case MachineKind::G0:
        if (f && *f) return xi;
        return std::nullopt;
      case MachineKind::G1: {
        if (f && *f) return xi;
        Sentence phi;
        if (sc_.m >= 1 && sc_.n >= 1 && pr_unstrip(xi, sc_.m - 1, phi) &&
            output_before(pr_power(phi, sc_.n - 1), s, s))
          return xi;
        return std::nullopt;
      }
      case MachineKind::G2: {
        if (f && !*f) return std::nullopt;
        Sentence psi;
        if (sc_.m >= 1 && sc_.n >= 1 && pr_unstrip(xi, sc_.n - 1, psi) && f_inverse(psi)) {
          std::size_t u = sentence_index(pr_power(psi, sc_.m - 1), tr_.relevant);
          if (u < t) {
            std::uint64_t slot = tr_.switch_info->stage + u;
            if (slot >= s) throw std::logic_error("machine read a slot that is not strictly earlier");
            if (!tr_.outputs[slot]) return std::nullopt;
          }
        }
        return xi;
      }
      case MachineKind::G3:
        if (f && !*f) return std::nullopt;
        return xi;
    }
    return std::nullopt;
  }

  MachineKind kind_;
  const ArithScenario& sc_;
  SimTrace& tr_;
  ProofStream stream_;
  std::set<Formula> sub_;
};

}  // namespace

std::vector<WorldId> run_monitor(const ArithScenario& sc, MonitorKind kind, std::uint64_t horizon) {
  if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");
  ProofStream stream(sc);
  Trigger trig(sc, kind);
  std::set<Sentence> proved;
  std::vector<WorldId> h(horizon + 1, 0);
  WorldId fire = 0;
  bool dirty = false;
  for (std::uint64_t s = 0; s < horizon; ++s) {
    if (h[s] != 0) {
      h[s + 1] = h[s];
      continue;
    }
    if (auto e = stream.at(s); e && proved.insert(*e).second) {
      trig.prove(*e);
      dirty = true;
    }
    // Candidates above the mentioned numerals never fire, so the result
    // only changes when the proved set does.
    if (dirty) {
      fire = trig.least(s + 1);
      dirty = false;
    }
    h[s + 1] = fire;
  }
  return h;
}

std::vector<WorldId> run_h(const ArithScenario& sc, std::uint64_t horizon) {
  return run_monitor(sc, MonitorKind::H, horizon);
}

std::vector<WorldId> run_h_prime(const ArithScenario& sc, std::uint64_t horizon) {
  return run_monitor(sc, MonitorKind::HPrime, horizon);
}

std::optional<SwitchInfo> find_switch(const std::vector<WorldId>& h, const ModelFamily& family) {
  for (std::size_t s = 0; s + 1 < h.size(); ++s) {
    if (h[s] == 0 && h[s + 1] != 0) {
      auto k = family.family_of(h[s + 1]);
      return SwitchInfo{s, h[s + 1], k ? *k : kNoFamily};
    }
  }
  return std::nullopt;
}

std::vector<Sentence> relevant_sentences(const ArithScenario& sc) {
  std::set<Sentence> base;
  auto add = [&](Sentence s) {
    for (Sentence t : subsentences(s)) base.insert(t);
  };
  std::size_t depth = 0;
  for (const auto& e : sc.family.entries) {
    depth = std::max(depth, e.a.modal_depth());
    for (Formula b : subformulas(e.a)) add(f_interp(b));
  }
  for (const auto& ev : sc.events) add(ev.sentence);
  for (WorldId w : sc.family.all_worlds()) add(Sentence::neg(Sentence::shat(static_cast<std::uint64_t>(w))));
  if (monitor_for(sc.machine) == MonitorKind::HPrime) {
    for (const auto& e : sc.family.entries) {
      for (Formula b : subformulas(e.a)) {
        add(Sentence::forall_phi(b));
        for (WorldId w : e.model.worlds()) add(phi_trigger(b, static_cast<std::uint64_t>(w)));
      }
    }
  }
  std::size_t rmax = std::max(sc.m, sc.n) + depth;
  std::set<Sentence> out;
  for (Sentence s : base) {
    Sentence x = s;
    for (std::size_t r = 0; r <= rmax; ++r) {
      out.insert(x);
      x = Sentence::prg(x);
    }
  }
  return {out.begin(), out.end()};
}

std::uint64_t auto_horizon(const ArithScenario& sc) {
  ProofStream stream(sc);
  auto h = run_monitor(sc, monitor_for(sc.machine), stream.max_base_code() + 2);
  if (auto sw = find_switch(h, sc.family)) return sw->stage + 1 + relevant_sentences(sc).size();
  std::uint64_t period = stream.period();
  std::uint64_t witness = 0;
  for (const auto& [name, w] : sc.sigma_witness) witness = std::max(witness, w);
  std::size_t depth = 0;
  for (const auto& ev : sc.events) depth = std::max(depth, prg_depth(ev.sentence));
  return period * (2 + (witness + period - 1) / period + depth);
}

SimTrace run_machine(MachineKind kind, const ArithScenario& sc, std::optional<std::uint64_t> horizon) {
  validate_scenario(sc);
  ProofStream stream(sc);
  MonitorKind mon = monitor_for(kind);
  auto probe = find_switch(run_monitor(sc, mon, stream.max_base_code() + 2), sc.family);
  if (!sc.branch.consistent && !probe) throw ScenarioError("ill_at: the monitor never fires");

  SimTrace tr;
  tr.kind = kind;
  tr.horizon = horizon ? *horizon : (sc.horizon ? *sc.horizon : auto_horizon(sc));
  if (tr.horizon == 0) throw ScenarioError("horizon must be at least 1");
  if (!sc.branch.consistent && tr.horizon <= probe->stage)
    throw ScenarioError("horizon " + std::to_string(tr.horizon) + " is smaller than the switch stage " +
                        std::to_string(probe->stage));
  tr.h_values = run_monitor(sc, mon, tr.horizon);
  tr.switch_info = find_switch(tr.h_values, sc.family);
  if (tr.switch_info && tr.switch_info->family_index == kNoFamily)
    throw ScenarioError("monitor switched to world " + std::to_string(tr.switch_info->world) +
                        ", which is in no family range");
  tr.relevant = relevant_sentences(sc);
  tr.outputs.assign(tr.horizon, std::nullopt);
  Machine(kind, sc, tr).run();
  return tr;
}

SimTrace run_machine(const ArithScenario& sc) { return run_machine(sc.machine, sc, sc.horizon); }

bool eval_sentence(const SimTrace& tr, const ArithScenario& sc, Sentence s) {
  if (!std::binary_search(tr.relevant.begin(), tr.relevant.end(), s))
    throw std::out_of_range("sentence " + render_sentence(s) + " is outside the relevant set");
  return Truth{sc, tr.h_values, tr.first_output, tr.horizon, true}(s);
}

std::optional<std::uint64_t> procedure2_slot(const SimTrace& tr, Sentence xi) {
  if (!tr.switch_info) return std::nullopt;
  std::uint64_t slot = tr.switch_info->stage + sentence_index(xi, tr.relevant);
  if (slot >= tr.horizon) return std::nullopt;
  return slot;
}

}  // namespace nalab
