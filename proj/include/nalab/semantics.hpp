#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nalab/formula.hpp"

namespace nalab {

/// World ids are positive; 0 is reserved.
using WorldId = int;
using Edge = std::pair<WorldId, WorldId>;
using Relation = std::set<Edge>;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite N-model with a finitely supported, formula-indexed relation family.
/// Relations missing from the map are empty.
class NModel {
 public:
  NModel() = default;
  /// Validates that every endpoint and valuation key is a declared world.
  NModel(std::set<WorldId> worlds, std::map<Formula, Relation> relations,
         std::map<WorldId, std::set<std::string>> valuation);

  const std::set<WorldId>& worlds() const { return worlds_; }
  const std::map<Formula, Relation>& relations() const { return relations_; }
  const std::map<WorldId, std::set<std::string>>& valuation() const { return valuation_; }

  bool has_world(WorldId w) const { return worlds_.contains(w); }
  bool related(Formula b, WorldId x, WorldId y) const;
  std::vector<WorldId> successors(Formula b, WorldId x) const;
  bool holds(WorldId w, const std::string& var) const;
  /// Formulas with a non-empty relation.
  std::vector<Formula> support() const;

  friend bool operator==(const NModel&, const NModel&) = default;

 private:
  std::set<WorldId> worlds_;
  std::map<Formula, Relation> relations_;
  std::map<WorldId, std::set<std::string>> valuation_;
};

struct AccessWitness {
  Formula b;
  WorldId x = 0;
  WorldId y = 0;
  /// x = chain[0], ..., chain[m] = y, realizing x ≺_b^m y.
  std::vector<WorldId> chain;
};

struct AccessReport {
  bool accessible = true;
  std::optional<AccessWitness> witness;
};

bool forces(const NModel& model, WorldId w, Formula a);
bool valid_in_model(const NModel& model, Formula a);

/// x ≺_b^k y: x = y for k = 0, otherwise x ≺_{Box^{k-1} b} w ≺_b^{k-1} y for some w.
bool chain(const NModel& model, Formula b, std::size_t k, WorldId x, WorldId y);
/// A world path realizing x ≺_b^k y, if any.
std::optional<std::vector<WorldId>> chain_path(const NModel& model, Formula b, std::size_t k,
                                               WorldId x, WorldId y);

AccessReport is_mn_accessible(const NModel& model, std::size_t m, std::size_t n,
                              const std::vector<Formula>& universe);

/// { Box^j B : B in Sub(a), 0 <= j <= max(m, n) }, canonical order.
std::vector<Formula> relation_universe(Formula a, std::size_t m, std::size_t n);
/// Union of relation_universe over every formula carrying a non-empty relation.
/// For m >= 1 this covers every B whose m-chains can be realized.
std::vector<Formula> support_universe(const NModel& model, std::size_t m, std::size_t n);

struct DisjointUnion {
  NModel model;
  /// Per component: original world id -> id in the union.
  std::vector<std::map<WorldId, WorldId>> renaming;
};

/// Keeps ids when the components are already disjoint, otherwise renumbers
/// all worlds consecutively from 1 in component order.
DisjointUnion disjoint_union(const std::vector<NModel>& models);

}  // namespace nalab
