#include "nalab/checks.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "nalab/parser.hpp"

namespace nalab {

bool TraceReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ClaimResult& c) { return c.pass; });
}

namespace {

ClaimResult ok(std::string claim, std::string detail) { return {std::move(claim), true, std::nullopt, std::move(detail)}; }

ClaimResult bad(std::string claim, std::string witness, std::string detail) {
  return {std::move(claim), false, std::move(witness), std::move(detail)};
}

std::string yn(bool b) { return b ? "true" : "false"; }

const FamilyEntry& switch_entry(const SimTrace& tr, const ArithScenario& sc) {
  return sc.family.entries.at(tr.switch_info->family_index);
}

}  // namespace

ClaimResult check_monitor(const std::vector<WorldId>& h) {
  const std::string claim = "monitor";
  if (h.empty() || h[0] != 0) return bad(claim, "stage 0", "h(0) must be 0");
  for (std::size_t s = 0; s + 1 < h.size(); ++s) {
    if (h[s] != 0 && h[s + 1] != h[s])
      return bad(claim, "stage " + std::to_string(s + 1), "value changed after the first nonzero value");
    if (h[s] == 0 && h[s + 1] != 0 && static_cast<std::uint64_t>(h[s + 1]) > s + 1)
      return bad(claim, "world " + std::to_string(h[s + 1]),
                 "fired at stage " + std::to_string(s) + " above the bound s+1");
  }
  return ok(claim, "freeze and bound hold over " + std::to_string(h.size()) + " stages");
}

ClaimResult check_truth_transfer(const SimTrace& tr, const ArithScenario& sc) {
  const std::string claim = "truth_transfer";
  if (!tr.switch_info) return bad(claim, "none", "trace has no switch");
  const FamilyEntry& e = switch_entry(tr, sc);
  WorldId i = tr.switch_info->world;
  std::size_t count = 0;
  for (Formula b : subformulas(e.a)) {
    bool lhs = forces(e.model, i, b);
    bool rhs = eval_sentence(tr, sc, f_interp(b));
    if (lhs != rhs)
      return bad(claim, render_formula(b),
                 "world " + std::to_string(i) + " forces: " + yn(lhs) + ", eval f(B): " + yn(rhs));
    ++count;
  }
  return ok(claim, std::to_string(count) + " subformulas at world " + std::to_string(i));
}

ClaimResult check_acc_closure(const SimTrace& tr, const ArithScenario& sc, std::size_t m, std::size_t n) {
  const std::string claim = "acc_closure";
  std::unordered_set<Sentence> rel(tr.relevant.begin(), tr.relevant.end());
  std::size_t big = std::max(m, n), count = 0;
  for (Sentence phi : tr.relevant) {
    if (!rel.contains(pr_power(phi, big))) continue;
    ++count;
    if (eval_sentence(tr, sc, pr_power(phi, n)) && !eval_sentence(tr, sc, pr_power(phi, m)))
      return bad(claim, render_sentence(phi),
                 "Pr^" + std::to_string(n) + " holds but Pr^" + std::to_string(m) + " does not");
  }
  return ok(claim, std::to_string(count) + " sentences");
}

namespace {

class G0Oracle {
 public:
  G0Oracle(const ArithScenario& sc, std::uint64_t horizon) : sc_(sc), stream_(sc), horizon_(horizon) {}

  std::optional<std::uint64_t> first_pass(Sentence phi) {
    if (auto it = memo_.find(phi); it != memo_.end()) return it->second;
    std::optional<std::uint64_t> res;
    for (std::uint64_t c : stream_.codes_of(phi, horizon_)) {
      if (passes(phi, c)) {
        res = c;
        break;
      }
    }
    memo_.emplace(phi, res);
    return res;
  }

 private:
  bool passes(Sentence phi, std::uint64_t c) {
    if (!is_sigma1(phi)) return true;
    if (phi.is(SKind::PRg)) {
      auto [r, core] = pr_strip(phi);
      for (std::size_t i = 0; i < r; ++i) {
        auto fp = first_pass(pr_power(core, i));
        if (!fp || *fp >= c) return false;
      }
      return true;
    }
    return c >= 1 && true_at(phi, c - 1);
  }

  // Without a switch: no S(x) holds, so the FAtom and quantified atoms are fixed.
  bool true_at(Sentence s, std::uint64_t l) {
    switch (s.kind()) {
      case SKind::Base: {
        auto it = sc_.sigma_witness.find(s.name());
        if (it == sc_.sigma_witness.end()) return false;
        return !s.sigma1_flag() || it->second <= l;
      }
      case SKind::Falsum:
      case SKind::SHat:
      case SKind::FAtom:
      case SKind::ExistsNegPhi:
        return false;
      case SKind::ForAllPhi:
        return true;
      case SKind::PRg: {
        auto fp = first_pass(s.child());
        return fp && *fp < l;
      }
      case SKind::NeqZero:
        return s.num() != 0;
      case SKind::Refutes:
        return sc_.family.refutes(s.formula(), static_cast<WorldId>(s.num()));
      case SKind::Neg:
        return !true_at(s.child(), l);
      case SKind::And:
        return true_at(s.lhs(), l) && true_at(s.rhs(), l);
      case SKind::Or:
        return true_at(s.lhs(), l) || true_at(s.rhs(), l);
      case SKind::Imp:
        return !true_at(s.lhs(), l) || true_at(s.rhs(), l);
    }
    return false;
  }

  const ArithScenario& sc_;
  ProofStream stream_;
  std::uint64_t horizon_;
  std::map<Sentence, std::optional<std::uint64_t>> memo_;
};

}  // namespace

std::set<Sentence> g0_oracle_outputs(const ArithScenario& sc, std::uint64_t horizon) {
  G0Oracle oracle(sc, horizon);
  std::set<Sentence> out;
  for (const auto& ev : sc.events)
    if (oracle.first_pass(ev.sentence)) out.insert(ev.sentence);
  return out;
}

ClaimResult check_consistent_equivalence(const SimTrace& tr, const ArithScenario& sc) {
  const std::string claim = "consistent_equivalence";
  if (!sc.branch.consistent) throw std::invalid_argument("equivalence needs a consistent branch");
  if (tr.switch_info)
    return bad(claim, "world " + std::to_string(tr.switch_info->world),
               "monitor fired at stage " + std::to_string(tr.switch_info->stage));
  std::set<Sentence> got;
  for (const auto& o : tr.outputs)
    if (o) got.insert(*o);
  std::set<Sentence> want;
  if (tr.kind == MachineKind::G0) {
    want = g0_oracle_outputs(sc, tr.horizon);
  } else {
    ProofStream stream(sc);
    for (std::uint64_t c = 0; c < tr.horizon; ++c)
      if (auto s = stream.at(c)) want.insert(*s);
  }
  for (Sentence s : got)
    if (!want.contains(s)) return bad(claim, render_sentence(s), "output but not expected");
  for (Sentence s : want)
    if (!got.contains(s)) return bad(claim, render_sentence(s), "expected but not output");
  return ok(claim, std::to_string(got.size()) + " sentences match");
}

ClaimResult check_procedure2(const SimTrace& tr, const ArithScenario& sc) {
  const std::string claim = "procedure2";
  if (!tr.switch_info) return bad(claim, "none", "trace has no switch");
  const FamilyEntry& e = switch_entry(tr, sc);
  WorldId i = tr.switch_info->world;
  std::size_t count = 0;
  for (Formula bb : subformulas(e.a)) {
    if (!bb.is(Op::Box)) continue;
    Sentence xi = f_interp(bb.child());
    auto slot = procedure2_slot(tr, xi);
    if (!slot) return bad(claim, render_sentence(xi), "Procedure 2 slot lies past the horizon");
    bool out = tr.outputs[*slot] == xi;
    bool want = forces(e.model, i, bb);
    if (out != want)
      return bad(claim, render_formula(bb), "forced: " + yn(want) + ", output: " + yn(out));
    ++count;
  }
  if (tr.kind == MachineKind::G3) {
    for (std::size_t t = 0; t < tr.relevant.size(); ++t) {
      Sentence xi = tr.relevant[t];
      auto b = f_inverse(xi);
      if (b && is_subformula(Formula::box(*b), e.a)) continue;
      std::uint64_t slot = tr.switch_info->stage + t;
      if (slot >= tr.horizon) break;
      if (tr.outputs[slot] != xi) return bad(claim, render_sentence(xi), "suppressed without a clause");
      ++count;
    }
  }
  return ok(claim, std::to_string(count) + " slots");
}

ClaimResult check_g2_gating(const SimTrace& tr, const ArithScenario& sc) {
  const std::string claim = "g2_gating";
  if (!tr.switch_info) return bad(claim, "none", "trace has no switch");
  if (sc.m < 1 || sc.n <= sc.m) return ok(claim, "not applicable: needs n > m >= 1");
  const FamilyEntry& e = switch_entry(tr, sc);
  WorldId i = tr.switch_info->world;
  std::size_t count = 0;
  for (std::size_t t = 0; t < tr.relevant.size(); ++t) {
    std::uint64_t slot = tr.switch_info->stage + t;
    if (slot >= tr.horizon) break;
    Sentence xi = tr.relevant[t];
    if (tr.outputs[slot]) continue;
    Sentence psi;
    if (!pr_unstrip(xi, sc.n - 1, psi) || !f_inverse(psi)) continue;
    auto b = f_inverse(xi);
    if (b && is_subformula(Formula::box(*b), e.a) && !forces(e.model, i, Formula::box(*b))) continue;
    ++count;
    std::size_t u = sentence_index(pr_power(psi, sc.m - 1), tr.relevant);
    if (u >= t) return bad(claim, render_sentence(xi), "gating slot is not earlier");
    if (tr.outputs[tr.switch_info->stage + u])
      return bad(claim, render_sentence(xi), "suppressed although the gating slot was output");
  }
  return ok(claim, std::to_string(count) + " gated slots");
}

std::pair<std::size_t, std::size_t> decompose_qr(std::size_t m_prime, std::size_t m, std::size_t n) {
  if (!(n > m && m >= 1 && m_prime >= n)) throw std::invalid_argument("decompose_qr needs n > m >= 1 and m' >= n");
  std::size_t d = n - m, x = m_prime - m;
  return {x / d, x % d};
}

std::vector<Sentence> g2_ladder(Formula box_c, std::size_t m, std::size_t n) {
  BoxDecomposition d = box_decompose(box_c);
  auto [q, r] = decompose_qr(d.prefix_len, m, n);
  Formula e = Formula::box(d.core, r);
  std::vector<Sentence> out;
  for (std::size_t j = 0; j <= q; ++j) out.push_back(f_interp(Formula::box(e, j * (n - m) + m - 1)));
  return out;
}

ClaimResult check_g2_ladder(const SimTrace& tr, const ArithScenario& sc) {
  const std::string claim = "g2_ladder";
  if (!tr.switch_info) return bad(claim, "none", "trace has no switch");
  if (sc.m < 1 || sc.n <= sc.m) return ok(claim, "not applicable: needs n > m >= 1");
  const FamilyEntry& e = switch_entry(tr, sc);
  WorldId i = tr.switch_info->world;
  std::size_t count = 0;
  for (Formula bb : subformulas(e.a)) {
    if (!bb.is(Op::Box) || box_decompose(bb).prefix_len < sc.n || !forces(e.model, i, bb)) continue;
    for (Sentence xi : g2_ladder(bb, sc.m, sc.n)) {
      auto slot = procedure2_slot(tr, xi);
      if (!slot) return bad(claim, render_sentence(xi), "ladder slot lies past the horizon");
      if (tr.outputs[*slot] != xi) return bad(claim, render_sentence(xi), "ladder sentence suppressed");
      ++count;
    }
  }
  return ok(claim, std::to_string(count) + " ladder sentences");
}

ClaimResult check_relevant_order(const std::vector<Sentence>& relevant) {
  const std::string claim = "relevant_order";
  std::set<std::string> keys;
  for (std::size_t t = 0; t < relevant.size(); ++t) {
    Sentence s = relevant[t];
    if (t > 0 && !(relevant[t - 1] < s)) return bad(claim, render_sentence(s), "enumeration is not strictly increasing");
    if (!keys.insert(s.key()).second) return bad(claim, render_sentence(s), "duplicate key");
    std::vector<Sentence> kids;
    if (s.is(SKind::PRg) || s.is(SKind::Neg)) kids.push_back(s.child());
    if (s.is_binary()) kids = {s.lhs(), s.rhs()};
    for (Sentence c : kids) {
      auto it = std::lower_bound(relevant.begin(), relevant.end(), c);
      if (it == relevant.end() || *it != c) return bad(claim, render_sentence(c), "subsentence missing");
      if (static_cast<std::size_t>(it - relevant.begin()) >= t)
        return bad(claim, render_sentence(s), "subsentence index not smaller");
    }
  }
  return ok(claim, std::to_string(relevant.size()) + " sentences");
}

std::optional<SimTrace> corrupt_procedure2(const SimTrace& tr, const ArithScenario& sc) {
  if (!tr.switch_info) return std::nullopt;
  const FamilyEntry& e = switch_entry(tr, sc);
  for (Formula bb : subformulas(e.a)) {
    if (!bb.is(Op::Box)) continue;
    Sentence xi = f_interp(bb.child());
    auto slot = procedure2_slot(tr, xi);
    if (!slot) continue;
    bool elsewhere = false;
    for (std::uint64_t s = 0; s < tr.horizon && !elsewhere; ++s) elsewhere = s != *slot && tr.outputs[s] == xi;
    if (elsewhere) continue;
    SimTrace bad = tr;
    if (bad.outputs[*slot])
      bad.outputs[*slot].reset();
    else
      bad.outputs[*slot] = xi;
    bad.first_output.clear();
    for (std::uint64_t s = 0; s < bad.horizon; ++s)
      if (bad.outputs[s]) bad.first_output.emplace(*bad.outputs[s], s);
    return bad;
  }
  return std::nullopt;
}

TraceReport run_report(const SimTrace& tr, const ArithScenario& sc, const std::string& selection) {
  TraceReport rep;
  rep.horizon = tr.horizon;
  rep.auto_horizon = !sc.horizon;
  auto equiv = [&] {
    try {
      rep.entries.push_back(check_consistent_equivalence(tr, sc));
    } catch (const std::invalid_argument& ex) {
      rep.entries.push_back(bad("consistent_equivalence", "branch", ex.what()));
    }
  };
  if (selection == "truth") {
    rep.entries.push_back(check_truth_transfer(tr, sc));
  } else if (selection == "closure") {
    rep.entries.push_back(check_acc_closure(tr, sc, sc.m, sc.n));
  } else if (selection == "equiv") {
    equiv();
  } else if (selection == "all") {
    rep.entries.push_back(check_monitor(tr.h_values));
    rep.entries.push_back(check_relevant_order(tr.relevant));
    if (sc.branch.consistent) {
      equiv();
    } else {
      rep.entries.push_back(check_truth_transfer(tr, sc));
      rep.entries.push_back(check_acc_closure(tr, sc, sc.m, sc.n));
      rep.entries.push_back(check_procedure2(tr, sc));
      if (tr.kind == MachineKind::G2) {
        rep.entries.push_back(check_g2_gating(tr, sc));
        rep.entries.push_back(check_g2_ladder(tr, sc));
      }
    }
  } else {
    throw std::invalid_argument("unknown report selection '" + selection + "'");
  }
  return rep;
}

}  // namespace nalab
