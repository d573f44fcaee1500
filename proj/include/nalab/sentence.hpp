#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nalab/formula.hpp"
#include "nalab/hilbert.hpp"

namespace nalab {

enum class SKind : std::uint8_t {
  Base,          // named atom with a Σ1 flag
  Falsum,        // 0 = 1
  SHat,          // S(i), or S'(i) under the h' monitor
  FAtom,         // ∃x(S(x) ∧ x ≠ 0 ∧ x ⊩ p)
  PRg,           // PR_g(⌜ψ⌝)
  NeqZero,       // i ≠ 0
  Refutes,       // ∃y(i ∈ W_y ∧ B ∈ Sub(A_y) ∧ i ⊮_y B)
  ForAllPhi,     // ∀x φ_B(x)
  ExistsNegPhi,  // ∃x ¬φ_B(x)
  Neg,
  And,
  Or,
  Imp,
};

namespace detail {
struct SentenceNode;
}

/// Interned toy-arithmetic sentence; same ordering scheme as Formula.
class Sentence {
 public:
  /// Defaults to Falsum.
  Sentence();
  static Sentence base(std::string_view name, bool sigma1);
  static Sentence falsum();
  static Sentence shat(std::uint64_t i);
  static Sentence fatom(std::string_view var);
  static Sentence prg(Sentence s);
  static Sentence neq_zero(std::uint64_t i);
  static Sentence refutes(Formula b, std::uint64_t i);
  static Sentence forall_phi(Formula b);
  static Sentence exists_neg_phi(Formula b);
  static Sentence neg(Sentence a);
  static Sentence conj(Sentence a, Sentence b);
  static Sentence disj(Sentence a, Sentence b);
  static Sentence imp(Sentence a, Sentence b);

  SKind kind() const;
  bool is(SKind k) const { return kind() == k; }
  bool is_atomic() const;
  bool is_binary() const;
  /// Base name or FAtom variable.
  const std::string& name() const;
  bool sigma1_flag() const;
  std::uint64_t num() const;
  /// The B of Refutes / ForAllPhi / ExistsNegPhi.
  Formula formula() const;
  Sentence lhs() const;
  Sentence rhs() const;
  Sentence child() const { return lhs(); }

  std::size_t size() const;
  const std::string& key() const;
  std::size_t hash() const { return std::hash<const void*>{}(node_); }

  friend bool operator==(Sentence a, Sentence b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(Sentence a, Sentence b);

 private:
  explicit Sentence(const detail::SentenceNode* n) : node_(n) {}
  static Sentence make(SKind k, std::string_view name, bool flag, std::uint64_t num, Formula f,
                       const detail::SentenceNode* a, const detail::SentenceNode* b);
  const detail::SentenceNode* node_;
};

/// Arithmetical interpretation: p ↦ FAtom(p), bot ↦ Falsum, Box ↦ PRg.
Sentence f_interp(Formula a);
std::optional<Formula> f_inverse(Sentence s);

Sentence pr_power(Sentence s, std::size_t k);
/// Maximal r with s = PRg^r(core).
std::pair<std::size_t, Sentence> pr_strip(Sentence s);
/// Strips exactly k PRg layers; false if there are fewer.
bool pr_unstrip(Sentence s, std::size_t k, Sentence& out);

struct SentenceKey {
  std::size_t nodes = 0;
  std::string serial;
  friend auto operator<=>(const SentenceKey&, const SentenceKey&) = default;
};
SentenceKey sentence_key(Sentence s);
/// Dense rank in a sorted finite universe; throws std::out_of_range outside it.
std::size_t sentence_index(Sentence s, const std::vector<Sentence>& sorted_universe);

std::vector<Sentence> subsentences(Sentence s);
bool is_sigma1(Sentence s);
bool is_pi1(Sentence s);

/// φ_B(j) ≡ (j ≠ 0 ∧ Refutes(B, j)) → ¬S(j)
Sentence phi_instance(Formula b, std::uint64_t j);
/// φ_B(j) → ¬S(j)
Sentence phi_trigger(Formula b, std::uint64_t j);

/// Largest numeral occurring anywhere in s (0 if none).
std::uint64_t max_numeral(Sentence s);
/// Whether SHat atoms occur in s.
bool mentions_shat(Sentence s);

std::string render_sentence(Sentence s);

/// Propositionally atomic constituents become atoms.
Prop i_translate(Sentence s, AtomMap& atoms);

}  // namespace nalab

template <>
struct std::hash<nalab::Sentence> {
  std::size_t operator()(nalab::Sentence s) const noexcept { return s.hash(); }
};
