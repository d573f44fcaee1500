#pragma once

#include <cstdint>
#include <vector>

namespace nalab::sat {

/// Literal: variable v >= 0 with sign; encoded as 2v (positive) or 2v+1 (negated).
struct Lit {
  std::uint32_t x = 0;
  static Lit pos(std::uint32_t v) { return {v << 1}; }
  static Lit neg(std::uint32_t v) { return {(v << 1) | 1u}; }
  std::uint32_t var() const { return x >> 1; }
  bool negated() const { return x & 1u; }
  Lit operator~() const { return {x ^ 1u}; }
  friend bool operator==(Lit a, Lit b) = default;
};

enum class Result { Sat, Unsat, Unknown };

/// Small CDCL solver: two watched literals, first-UIP learning, no restarts.
/// Decisions follow variable creation order with the false phase first, so a
/// run is a deterministic function of the clause sequence.
class Solver {
 public:
  std::uint32_t new_var();
  std::uint32_t num_vars() const { return static_cast<std::uint32_t>(assign_.size()); }
  /// Returns false once the clause set is trivially unsatisfiable.
  bool add_clause(std::vector<Lit> clause);
  /// conflict_budget = 0 means unlimited. Unsat under assumptions leaves the
  /// clause set usable for further calls.
  Result solve(std::uint64_t conflict_budget = 0) { return solve({}, conflict_budget); }
  Result solve(const std::vector<Lit>& assumptions, std::uint64_t conflict_budget = 0);
  /// Model value after Sat.
  bool value(std::uint32_t v) const { return assign_[v] == kTrue; }
  bool value(Lit l) const { return value(l.var()) != l.negated(); }
  std::uint64_t conflicts() const { return conflicts_; }

 private:
  static constexpr std::int8_t kUndef = 0, kTrue = 1, kFalse = -1;
  std::int8_t lit_value(Lit l) const {
    std::int8_t v = assign_[l.var()];
    return l.negated() ? static_cast<std::int8_t>(-v) : v;
  }
  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int conflict, std::vector<Lit>& learnt, int& back_level);
  void backtrack(int level);
  int attach(std::vector<Lit> clause);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;  // indexed by literal code
  std::vector<std::int8_t> assign_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::vector<char> seen_;
  std::size_t qhead_ = 0;
  std::uint32_t next_decision_ = 0;
  std::uint64_t conflicts_ = 0;
  bool unsat_ = false;
};

/// Gate-level front end with constant folding over a fixed TRUE literal.
class CnfBuilder {
 public:
  CnfBuilder();
  Solver& solver() { return solver_; }
  Lit fresh() { return Lit::pos(solver_.new_var()); }
  Lit constant(bool b) const { return b ? true_ : ~true_; }
  bool is_const(Lit l) const { return l.var() == true_.var(); }
  bool const_value(Lit l) const { return l == true_; }

  Lit and_of(const std::vector<Lit>& xs);
  Lit or_of(const std::vector<Lit>& xs);
  Lit and2(Lit a, Lit b) { return and_of({a, b}); }
  Lit or2(Lit a, Lit b) { return or_of({a, b}); }
  Lit imp(Lit a, Lit b) { return or_of({~a, b}); }
  Lit iff(Lit a, Lit b);
  void require(Lit l) { clause({l}); }
  void clause(std::vector<Lit> c);

 private:
  Solver solver_;
  Lit true_;
};

}  // namespace nalab::sat
