#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nalab/scenario.hpp"

namespace nalab::gen {

using Rng = std::mt19937_64;

Formula random_formula(Rng& rng, std::size_t depth, std::size_t nvars = 2);

/// Distinct refuted formulas with verified countermodels found by search.
std::vector<FamilyEntry> registered_countermodels(std::size_t m, std::size_t n, std::size_t count,
                                                  std::uint64_t seed);

/// Renumbers the entries' worlds into consecutive disjoint ranges from 1.
ModelFamily make_family(const std::vector<FamilyEntry>& entries);

/// Lemma events at consecutive codes from first_code: S(j) -> ~f(C) for j ⊮ C
/// under h; under h' the φ_C(j) -> ~S(j) instances plus the two ∃/∀ lemmas.
std::vector<ProofEvent> lemma_events(const ModelFamily& family, MonitorKind kind, std::uint64_t first_code);

/// Random satisfiable stream without S atoms; empty family.
ArithScenario consistent_scenario(MachineKind kind, std::size_t m, std::size_t n, Rng& rng);
/// Lemmas, noise events and a trigger aimed at a random family world.
ArithScenario ill_scenario(MachineKind kind, std::size_t m, std::size_t n, const ModelFamily& family, Rng& rng);
/// Random stream for the monitor suite; half the draws are trigger-free.
ArithScenario monitor_scenario(MonitorKind kind, Rng& rng);
/// No S atoms and a satisfiable proved set.
bool trigger_free(const ArithScenario& sc);

/// G2 on A = Box^{m'} p -> q with a one-world countermodel.
ArithScenario ladder_scenario(std::size_t m, std::size_t n, std::size_t m_prime);
/// G1 at (1,1) on the K-axiom with its two-world countermodel.
ArithScenario k_axiom_scenario();

}  // namespace nalab::gen
