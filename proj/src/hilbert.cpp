#include "nalab/hilbert.hpp"

#include <algorithm>

namespace nalab {

Prop Prop::unary(Kind k, Prop a) {
  Prop p;
  p.kind = k;
  p.kids.push_back(std::move(a));
  return p;
}

Prop Prop::binary(Kind k, Prop a, Prop b) {
  Prop p;
  p.kind = k;
  p.kids.push_back(std::move(a));
  p.kids.push_back(std::move(b));
  return p;
}

int AtomMap::intern(const std::string& key) {
  auto [it, inserted] = ids_.emplace(key, static_cast<int>(labels_.size()));
  if (inserted) labels_.push_back(key);
  return it->second;
}

Prop i_translate(Formula a, AtomMap& atoms) {
  switch (a.op()) {
    case Op::Var:
    case Op::Box:
      return Prop::atom_of(atoms.intern(a.key()));
    case Op::Bot:
      return Prop::constant(false);
    case Op::Neg:
      return Prop::unary(Prop::Kind::Not, i_translate(a.child(), atoms));
    case Op::And:
      return Prop::binary(Prop::Kind::And, i_translate(a.lhs(), atoms), i_translate(a.rhs(), atoms));
    case Op::Or:
      return Prop::binary(Prop::Kind::Or, i_translate(a.lhs(), atoms), i_translate(a.rhs(), atoms));
    case Op::Imp:
      return Prop::binary(Prop::Kind::Imp, i_translate(a.lhs(), atoms), i_translate(a.rhs(), atoms));
  }
  return Prop::constant(false);
}

bool eval_prop(const Prop& p, const std::vector<bool>& v) {
  switch (p.kind) {
    case Prop::Kind::Atom:
      return v[static_cast<std::size_t>(p.atom)];
    case Prop::Kind::Const:
      return p.value;
    case Prop::Kind::Not:
      return !eval_prop(p.kids[0], v);
    case Prop::Kind::And:
      return eval_prop(p.kids[0], v) && eval_prop(p.kids[1], v);
    case Prop::Kind::Or:
      return eval_prop(p.kids[0], v) || eval_prop(p.kids[1], v);
    case Prop::Kind::Imp:
      return !eval_prop(p.kids[0], v) || eval_prop(p.kids[1], v);
  }
  return false;
}

bool prop_is_tc(const std::vector<Prop>& premises, const Prop& target, std::size_t natoms,
                std::size_t guard) {
  if (natoms > guard)
    throw AtomGuardExceeded("truth table needs " + std::to_string(natoms) + " atoms, guard is " +
                            std::to_string(guard));
  std::vector<bool> v(natoms, false);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << natoms); ++mask) {
    for (std::size_t i = 0; i < natoms; ++i) v[i] = (mask >> i) & 1u;
    bool all = std::all_of(premises.begin(), premises.end(), [&](const Prop& p) { return eval_prop(p, v); });
    if (all && !eval_prop(target, v)) return false;
  }
  return true;
}

bool prop_is_tautology(const Prop& p, std::size_t natoms, std::size_t guard) {
  return prop_is_tc({}, p, natoms, guard);
}

bool is_tautology(Formula a, std::size_t guard) {
  AtomMap atoms;
  Prop p = i_translate(a, atoms);
  return prop_is_tautology(p, atoms.size(), guard);
}

bool is_tc(const std::vector<Formula>& premises, Formula target, std::size_t guard) {
  AtomMap atoms;
  std::vector<Prop> ps;
  for (Formula f : premises) ps.push_back(i_translate(f, atoms));
  Prop t = i_translate(target, atoms);
  return prop_is_tc(ps, t, atoms.size(), guard);
}

SatEntailment::SatEntailment() : cnf_(std::make_unique<sat::CnfBuilder>()) {}

sat::Lit SatEntailment::atom_lit(int id) {
  auto it = atom_lits_.find(id);
  if (it != atom_lits_.end()) return it->second;
  sat::Lit l = cnf_->fresh();
  atom_lits_.emplace(id, l);
  return l;
}

sat::Lit SatEntailment::encode(const Prop& p) {
  switch (p.kind) {
    case Prop::Kind::Atom:
      return atom_lit(p.atom);
    case Prop::Kind::Const:
      return cnf_->constant(p.value);
    case Prop::Kind::Not:
      return ~encode(p.kids[0]);
    case Prop::Kind::And:
      return cnf_->and2(encode(p.kids[0]), encode(p.kids[1]));
    case Prop::Kind::Or:
      return cnf_->or2(encode(p.kids[0]), encode(p.kids[1]));
    case Prop::Kind::Imp:
      return cnf_->imp(encode(p.kids[0]), encode(p.kids[1]));
  }
  return cnf_->constant(false);
}

void SatEntailment::add_premise(const Prop& p) { cnf_->require(encode(p)); }

bool SatEntailment::entails(const Prop& target) {
  sat::Lit t = encode(target);
  if (cnf_->is_const(t)) {
    if (cnf_->const_value(t)) return true;
    return !premises_consistent();
  }
  return cnf_->solver().solve({~t}) == sat::Result::Unsat;
}

bool SatEntailment::premises_consistent() { return cnf_->solver().solve() == sat::Result::Sat; }

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Taut:
      return "taut";
    case Rule::Acc:
      return "acc";
    case Rule::MP:
      return "mp";
    case Rule::Nec:
      return "nec";
    case Rule::Ros:
      return "ros";
  }
  return "?";
}

bool is_acc_instance(Formula a, std::size_t m, std::size_t n) {
  if (!a.is(Op::Imp)) return false;
  Formula core;
  if (!unbox(a.rhs(), m, core)) return false;
  return Formula::box(core, n) == a.lhs();
}

ProofVerdict check_proof(const Proof& pf, const CheckOptions& opts) {
  ProofVerdict v;
  if (pf.steps.empty()) {
    v.reason = "proof has no steps";
    return v;
  }
  auto fail = [&](std::size_t k, std::string why) {
    v.failing_step = k;
    v.reason = "step " + std::to_string(k) + ": " + std::move(why);
    return v;
  };
  for (std::size_t k = 0; k < pf.steps.size(); ++k) {
    const ProofStep& st = pf.steps[k];
    auto cites = [&](std::size_t idx) { return idx < k; };
    switch (st.rule) {
      case Rule::Taut: {
        bool ok = false;
        try {
          ok = is_tautology(st.formula, opts.atom_guard);
        } catch (const AtomGuardExceeded& e) {
          return fail(k, e.what());
        }
        if (!ok) return fail(k, "not a tautology");
        break;
      }
      case Rule::Acc:
        if (!is_acc_instance(st.formula, pf.m, pf.n))
          return fail(k, "not an instance of []^" + std::to_string(pf.n) + "A -> []^" +
                             std::to_string(pf.m) + "A");
        break;
      case Rule::MP: {
        if (!cites(st.i) || !cites(st.j)) return fail(k, "mp cites a step that is not earlier");
        Formula minor = pf.steps[st.i].formula, major = pf.steps[st.j].formula;
        if (major != Formula::imp(minor, st.formula))
          return fail(k, "step " + std::to_string(st.j) + " is not step " + std::to_string(st.i) +
                             " -> this formula");
        break;
      }
      case Rule::Nec:
        if (!cites(st.i)) return fail(k, "nec cites a step that is not earlier");
        if (st.formula != Formula::box(pf.steps[st.i].formula))
          return fail(k, "not the box of step " + std::to_string(st.i));
        break;
      case Rule::Ros: {
        if (!opts.allow_ros) return fail(k, "ros disabled");
        if (!cites(st.i)) return fail(k, "ros cites a step that is not earlier");
        Formula prem = pf.steps[st.i].formula;
        if (!prem.is(Op::Neg) || !prem.child().is(Op::Box))
          return fail(k, "ros premise is not of the form ~[]A");
        if (st.formula != Formula::neg(Formula::box(prem.child())))
          return fail(k, "ros conclusion is not ~[][]A for the premise's A");
        break;
      }
    }
  }
  v.accepted = true;
  v.theorem = pf.steps.back().formula;
  return v;
}

std::optional<Proof> prove_axiom_instance(Formula a, std::size_t m, std::size_t n, std::size_t guard) {
  BoxDecomposition d = box_decompose(a);
  // Splits a = Box^k c, fewest Nec steps first.
  for (std::size_t k = 0; k <= d.prefix_len; ++k) {
    Formula c;
    unbox(a, k, c);
    Proof pf{m, n, {}};
    bool taut = false;
    try {
      taut = is_tautology(c, guard);
    } catch (const AtomGuardExceeded&) {
    }
    if (taut) {
      pf.steps.push_back({c, Rule::Taut, 0, 0});
    } else if (is_acc_instance(c, m, n)) {
      pf.steps.push_back({c, Rule::Acc, 0, 0});
    } else {
      continue;
    }
    for (std::size_t j = 0; j < k; ++j) {
      Formula prev = pf.steps.back().formula;
      pf.steps.push_back({Formula::box(prev), Rule::Nec, pf.steps.size() - 1, 0});
    }
    return pf;
  }
  return std::nullopt;
}

}  // namespace nalab
