#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nalab/scenario.hpp"
#include "nalab/sim.hpp"

namespace nalab {

struct ClaimResult {
  std::string claim;
  bool pass = false;
  /// Rendered sentence, formula or world that breaks the claim.
  std::optional<std::string> witness;
  std::string detail;
};

struct TraceReport {
  std::vector<ClaimResult> entries;
  std::uint64_t horizon = 0;
  /// Auto horizons are the artifact's choice of finite fragment.
  bool auto_horizon = false;
  bool all_pass() const;
};

/// Monitor freeze (at most one nonzero value) and the i <= s + 1 bound.
ClaimResult check_monitor(const std::vector<WorldId>& h);
/// (i ⊩_k B) iff eval(f(B)) for every B ∈ Sub(A_k).
ClaimResult check_truth_transfer(const SimTrace& tr, const ArithScenario& sc);
/// eval(PRg^n φ) implies eval(PRg^m φ) over relevant φ whose powers stay relevant.
ClaimResult check_acc_closure(const SimTrace& tr, const ArithScenario& sc, std::size_t m, std::size_t n);
/// Throws std::invalid_argument unless the branch is consistent.
ClaimResult check_consistent_equivalence(const SimTrace& tr, const ArithScenario& sc);
/// Procedure 2 on f(B) with □B ∈ Sub(A_k): output iff i ⊩_k □B.
ClaimResult check_procedure2(const SimTrace& tr, const ArithScenario& sc);
/// G2: a suppressed PRg^{n-1}(f B) slot has a suppressed PRg^{m-1}(f B) slot before it.
ClaimResult check_g2_gating(const SimTrace& tr, const ArithScenario& sc);
/// G2: the q/r ladder below every forced □C ∈ Sub(A_k) with at least n leading boxes is output.
ClaimResult check_g2_ladder(const SimTrace& tr, const ArithScenario& sc);
/// Injective and monotone on proper subsentences.
ClaimResult check_relevant_order(const std::vector<Sentence>& relevant);

/// Independent per-sentence recursion over emission codes below horizon.
std::set<Sentence> g0_oracle_outputs(const ArithScenario& sc, std::uint64_t horizon);

/// m' - m = q(n - m) + r with q >= 1 and 0 <= r < n - m.
std::pair<std::size_t, std::size_t> decompose_qr(std::size_t m_prime, std::size_t m, std::size_t n);
/// f(Box^{j(n-m)} Box^{m-1} E) for 0 <= j <= q, where □C = Box^{m'} D.
std::vector<Sentence> g2_ladder(Formula box_c, std::size_t m, std::size_t n);

/// Flips the Procedure 2 slot of f(C) for the first □C ∈ Sub(A_k) whose
/// f(C) is not output elsewhere; nullopt if there is none.
std::optional<SimTrace> corrupt_procedure2(const SimTrace& tr, const ArithScenario& sc);

/// selection: all | truth | closure | equiv. "all" picks the suite for the branch.
TraceReport run_report(const SimTrace& tr, const ArithScenario& sc, const std::string& selection);

}  // namespace nalab
