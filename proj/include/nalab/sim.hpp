#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "nalab/scenario.hpp"
#include "nalab/sentence.hpp"

namespace nalab {

struct SwitchInfo {
  /// h(stage) = 0 and h(stage + 1) = world.
  std::uint64_t stage = 0;
  WorldId world = 0;
  std::size_t family_index = 0;
};

struct SimTrace {
  MachineKind kind = MachineKind::G0;
  std::uint64_t horizon = 0;
  /// Monitor values for stages 0..horizon.
  std::vector<WorldId> h_values;
  std::optional<SwitchInfo> switch_info;
  /// One slot per stage below horizon.
  std::vector<std::optional<Sentence>> outputs;
  /// ξ_0, ξ_1, ... in index order.
  std::vector<Sentence> relevant;
  std::unordered_map<Sentence, std::uint64_t> first_output;
};

std::vector<WorldId> run_monitor(const ArithScenario& sc, MonitorKind kind, std::uint64_t horizon);
std::vector<WorldId> run_h(const ArithScenario& sc, std::uint64_t horizon);
std::vector<WorldId> run_h_prime(const ArithScenario& sc, std::uint64_t horizon);

/// First stage s with h(s) = 0 and h(s + 1) != 0.
std::optional<SwitchInfo> find_switch(const std::vector<WorldId>& h, const ModelFamily& family);

/// Sorted, closed under subsentences.
std::vector<Sentence> relevant_sentences(const ArithScenario& sc);
std::uint64_t auto_horizon(const ArithScenario& sc);

/// Validates sc first. Throws ScenarioError for malformed scenarios and
/// std::logic_error if a machine reads a slot that is not strictly earlier.
SimTrace run_machine(MachineKind kind, const ArithScenario& sc, std::optional<std::uint64_t> horizon = std::nullopt);
/// Uses sc.machine and sc.horizon.
SimTrace run_machine(const ArithScenario& sc);

/// Truth of s at the end of the trace; throws std::out_of_range outside the relevant set.
bool eval_sentence(const SimTrace& tr, const ArithScenario& sc, Sentence s);

/// Procedure 2 slot of ξ_t, or nullopt if no switch or the slot is past the horizon.
std::optional<std::uint64_t> procedure2_slot(const SimTrace& tr, Sentence xi);

}  // namespace nalab
