#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nalab/formula.hpp"
#include "nalab/hilbert.hpp"
#include "nalab/semantics.hpp"

namespace nalab {

inline constexpr std::size_t kDefaultMaxWorlds = 4;
inline constexpr std::uint64_t kDefaultConflictBudget = 200000;

struct BudgetReport {
  std::size_t max_worlds = 0;
  std::uint64_t conflict_budget = 0;
  /// Sizes whose search space was exhausted without a countermodel.
  std::vector<std::size_t> sizes_exhausted;
  /// Sizes abandoned because the conflict budget ran out.
  std::vector<std::size_t> sizes_unknown;
  std::uint64_t conflicts = 0;
};

struct Countermodel {
  NModel model;
  WorldId world = 0;
};

struct SearchOutcome {
  std::optional<Countermodel> found;
  BudgetReport report;
};

/// Sizes 1..max_worlds in order; the first size with a model wins, and the
/// refuting world is always world 1. Results are deterministic.
SearchOutcome search_countermodel(Formula a, std::size_t m, std::size_t n, std::size_t max_worlds,
                                  std::uint64_t conflict_budget = kDefaultConflictBudget);

bool verify_countermodel(Formula a, std::size_t m, std::size_t n, const NModel& model, WorldId w);

enum class Verdict { Provable, Refuted, Unknown };

std::string verdict_name(Verdict v);

struct DecideOptions {
  std::size_t max_worlds = kDefaultMaxWorlds;
  std::uint64_t conflict_budget = kDefaultConflictBudget;
  std::size_t atom_guard = kDefaultAtomGuard;
};

struct Decision {
  Verdict verdict = Verdict::Unknown;
  std::optional<Proof> proof;
  std::optional<Countermodel> countermodel;
  BudgetReport report;
};

/// Every certificate is re-checked before it is returned.
Decision decide(Formula a, std::size_t m, std::size_t n, const DecideOptions& opts = {});

}  // namespace nalab
