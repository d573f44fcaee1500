#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nalab/formula.hpp"
#include "nalab/semantics.hpp"
#include "nalab/sentence.hpp"

namespace nalab {

enum class MachineKind { G0, G1, G2, G3 };
enum class MonitorKind { H, HPrime };

std::string machine_name(MachineKind k);
MachineKind parse_machine(const std::string& s);
/// G0/G1 run under h, G2/G3 under h'.
MonitorKind monitor_for(MachineKind k);

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FamilyEntry {
  Formula a;
  NModel model;
  WorldId refuting_world = 0;
};

struct ModelFamily {
  std::vector<FamilyEntry> entries;

  std::optional<std::size_t> family_of(WorldId w) const;
  /// i ∈ W_k, B ∈ Sub(A_k), i ⊮_k B for some k.
  bool refutes(Formula b, WorldId i) const;
  std::vector<WorldId> all_worlds() const;
};

struct ProofEvent {
  std::uint64_t code = 0;
  Sentence sentence;
};

enum class Via { DirectNegS, PhiTrigger };

struct Branch {
  bool consistent = true;
  WorldId target = 0;
  Via via = Via::DirectNegS;
  /// PhiTrigger only: family index (0-based) and formula B.
  std::size_t k = 0;
  Formula b;
};

struct ArithScenario {
  MachineKind machine = MachineKind::G0;
  std::size_t m = 1, n = 1;
  ModelFamily family;
  std::vector<ProofEvent> events;
  bool repeat = false;
  /// Σ1 atoms: witness stage. Non-Σ1 atoms listed here are true.
  std::map<std::string, std::uint64_t> sigma_witness;
  Branch branch;
  /// nullopt means auto.
  std::optional<std::uint64_t> horizon;
};

/// Throws ScenarioError naming the first violated invariant.
void validate_scenario(const ArithScenario& sc);

/// The proved-sentence stream: base events, re-emitted every `period` codes
/// when repeat is set.
class ProofStream {
 public:
  explicit ProofStream(const ArithScenario& sc);

  std::optional<Sentence> at(std::uint64_t code) const;
  /// Distance between re-emissions: max base code + 1.
  std::uint64_t period() const { return period_; }
  std::uint64_t max_base_code() const { return period_ - 1; }
  /// Emission codes of s below limit, ascending.
  std::vector<std::uint64_t> codes_of(Sentence s, std::uint64_t limit) const;

 private:
  std::map<std::uint64_t, Sentence> base_;
  std::map<Sentence, std::uint64_t> first_;
  bool repeat_;
  std::uint64_t period_ = 1;
};

}  // namespace nalab
