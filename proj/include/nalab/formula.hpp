#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace nalab {

enum class Op : std::uint8_t { Var, Bot, Neg, And, Or, Imp, Box };

namespace detail {
struct FormulaNode;
}

/// Handle to an interned, immutable modal formula.
///
/// Nodes are hash-consed, so two handles are equal exactly when the formulas
/// are syntactically identical. Ordering is the canonical order: node count
/// first, then the lexicographic order of the prefix serialization.
class Formula {
 public:
  /// Defaults to bot.
  Formula();
  static Formula var(std::string_view name);
  static Formula bot();
  static Formula neg(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula box(Formula a);
  /// Box^k a; Box^0 a is a itself.
  static Formula box(Formula a, std::size_t k);

  Op op() const;
  bool is(Op o) const { return op() == o; }
  bool is_binary() const;
  bool is_unary() const;

  /// Variable name; empty for every other node.
  const std::string& name() const;
  /// Only child of Neg/Box, left child of binary nodes.
  Formula lhs() const;
  Formula rhs() const;
  Formula child() const { return lhs(); }

  std::size_t size() const;
  std::size_t modal_depth() const;
  /// Prefix serialization, used as the lexicographic tiebreak.
  const std::string& key() const;

  std::size_t hash() const { return std::hash<const void*>{}(node_); }

  friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(Formula a, Formula b);

 private:
  explicit Formula(const detail::FormulaNode* n) : node_(n) {}
  static Formula make(Op op, std::string_view name, const detail::FormulaNode* a,
                      const detail::FormulaNode* b);
  const detail::FormulaNode* node_;
};

struct BoxDecomposition {
  std::size_t prefix_len = 0;
  Formula core;
};

/// Totally ordered, injective key; proper subformulas always compare smaller.
struct CanonicalKey {
  std::size_t nodes = 0;
  std::string serial;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

/// Sub(a) in canonical order, a included.
std::vector<Formula> subformulas(Formula a);
bool is_subformula(Formula needle, Formula hay);
BoxDecomposition box_decompose(Formula a);
/// Strips exactly k leading boxes; returns false if there are fewer.
bool unbox(Formula a, std::size_t k, Formula& out);
CanonicalKey canonical_key(Formula a);
/// Variable names occurring in a, sorted.
std::vector<std::string> variables(Formula a);

/// Dense rank of every formula of a finite set in canonical order.
/// For a subformula-closed set the rank is monotone on proper subformulas.
std::size_t canonical_index(Formula a, const std::vector<Formula>& sorted_universe);

}  // namespace nalab

template <>
struct std::hash<nalab::Formula> {
  std::size_t operator()(nalab::Formula f) const noexcept { return f.hash(); }
};
