#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "nalab/formula.hpp"
#include "nalab/sat.hpp"

namespace nalab {

inline constexpr std::size_t kDefaultAtomGuard = 24;

class AtomGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Propositional skeleton produced by the I-translation.
struct Prop {
  enum class Kind : std::uint8_t { Atom, Const, Not, And, Or, Imp };
  Kind kind = Kind::Const;
  int atom = -1;
  bool value = false;
  std::vector<Prop> kids;

  static Prop atom_of(int id) { return {Kind::Atom, id, false, {}}; }
  static Prop constant(bool v) { return {Kind::Const, -1, v, {}}; }
  static Prop unary(Kind k, Prop a);
  static Prop binary(Kind k, Prop a, Prop b);
};

/// Injective map from atomic constituents (by key) to dense atom ids.
class AtomMap {
 public:
  int intern(const std::string& key);
  std::size_t size() const { return labels_.size(); }
  const std::string& label(int id) const { return labels_.at(static_cast<std::size_t>(id)); }

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> labels_;
};

/// Variables and boxed formulas become atoms; bot stays the constant false.
Prop i_translate(Formula a, AtomMap& atoms);

bool eval_prop(const Prop& p, const std::vector<bool>& assignment);

/// Truth table over atoms 0..natoms-1. Throws AtomGuardExceeded above the guard.
bool prop_is_tautology(const Prop& p, std::size_t natoms, std::size_t guard = kDefaultAtomGuard);
bool prop_is_tc(const std::vector<Prop>& premises, const Prop& target, std::size_t natoms,
                std::size_t guard = kDefaultAtomGuard);

bool is_tautology(Formula a, std::size_t guard = kDefaultAtomGuard);
bool is_tc(const std::vector<Formula>& premises, Formula target, std::size_t guard = kDefaultAtomGuard);

/// Incremental consequence checker over a growing premise set, backed by SAT.
/// Agrees with prop_is_tc; used where atom counts outgrow truth tables.
class SatEntailment {
 public:
  SatEntailment();
  void add_premise(const Prop& p);
  bool entails(const Prop& target);
  bool premises_consistent();

 private:
  sat::Lit encode(const Prop& p);
  sat::Lit atom_lit(int id);
  std::unique_ptr<sat::CnfBuilder> cnf_;
  std::unordered_map<int, sat::Lit> atom_lits_;
};

enum class Rule : std::uint8_t { Taut, Acc, MP, Nec, Ros };

/// MP(i, j): step i proves A, step j proves A -> B. Nec and Ros cite i.
struct ProofStep {
  Formula formula;
  Rule rule = Rule::Taut;
  std::size_t i = 0;
  std::size_t j = 0;
};

struct Proof {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<ProofStep> steps;
};

struct CheckOptions {
  std::size_t atom_guard = kDefaultAtomGuard;
  bool allow_ros = true;
};

struct ProofVerdict {
  bool accepted = false;
  std::optional<Formula> theorem;
  std::optional<std::size_t> failing_step;
  std::string reason;
};

bool is_acc_instance(Formula a, std::size_t m, std::size_t n);
ProofVerdict check_proof(const Proof& pf, const CheckOptions& opts = {});
/// Tautology, Acc instance, or Box^k of either.
std::optional<Proof> prove_axiom_instance(Formula a, std::size_t m, std::size_t n,
                                          std::size_t guard = kDefaultAtomGuard);

std::string rule_name(Rule r);

}  // namespace nalab
