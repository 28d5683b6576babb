// Copyright 2026 The dynsetcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Hierarchical set-cover solutions: sets carry levels, each owns a disjoint
// coverage, and every covered element has a level and a passive level.
// All indexes are kept per level so that a prefix of levels can be replaced
// wholesale.

#ifndef DSC_HIERARCHY_HPP_
#define DSC_HIERARCHY_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsc/instance.hpp"
#include "dsc/types.hpp"

namespace dsc {

class StructureError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ElementNode {
  Level lev = 0;
  Level plev = 0;
  SetId owner = -1;

  friend bool operator==(const ElementNode&, const ElementNode&) = default;
};

// Prefix tallies indexed by k: counts over covered elements at level <= k.
struct LevelStats {
  std::vector<std::int64_t> covered;  // |C_k|
  std::vector<std::int64_t> live;     // |L_k|
  std::vector<std::int64_t> active;   // |A_k|: live, plev > k
  std::vector<std::int64_t> passive;  // live with plev <= k
  std::vector<std::int64_t> dormant;  // dormant covered

  friend bool operator==(const LevelStats&, const LevelStats&) = default;
};

class HierarchicalSolution {
 public:
  struct LevelIndex {
    OrderedMap<SetId, std::int64_t> sets;  // set -> coverage size
    OrderedMap<ElementId, ElementNode> live;
    OrderedMap<ElementId, ElementNode> dormant;
    std::vector<std::int64_t> live_by_plev;  // live elements by plev
  };

  struct Located {
    ElementNode node;
    bool live = false;
  };

  HierarchicalSolution() = default;
  explicit HierarchicalSolution(Level num_levels, OpCounts* ops = nullptr);

  Level num_levels() const { return static_cast<Level>(levels_.size()); }
  void set_counter(OpCounts* ops) { ops_ = ops; }
  // Enables cross-level duplicate checks on every mutation.
  void set_validate(bool v) { validate_ = v; }

  void AddSet(SetId s, Level lev);
  std::optional<Level> SetLevel(SetId s) const;
  bool ContainsSet(SetId s) const { return SetLevel(s).has_value(); }
  std::int64_t CoverageSize(SetId s, Level lev) const;

  void Assign(ElementId e, SetId s, Level lev, Level plev);
  void MarkDormant(ElementId e);
  // Variants for callers that already know the element's level.
  void MarkDormantAt(ElementId e, Level lev);
  // Turns a dormant covered element live again with plev = lev.
  void Revive(ElementId e, Level lev);

  std::optional<Located> Find(ElementId e) const;
  std::optional<Located> FindAt(ElementId e, Level lev) const;

  // Among sets of this solution that contain e: the highest level, ties to
  // the smaller id.
  std::optional<SetId> HighestCoveringSet(const SetSystem& sys,
                                          ElementId e) const;

  const LevelIndex& level(Level l) const { return levels_[l]; }

  std::int64_t SubUniverseSize(Level k) const;  // |L_k|
  std::int64_t NumSets() const;
  std::vector<SetId> Sets() const;  // ascending
  LevelStats Stats() const;
  // Tallies recomputed from the element indexes (test oracle).
  LevelStats RecomputeStats() const;

  // Canonical text listing for golden tests.
  std::string Dump() const;

  // Replaces target's levels <= k by source's and merges source's level k+1
  // into target's. Returns target's former levels 0..k. Source is left with
  // empty levels.
  friend std::vector<LevelIndex> SpliceLevels(HierarchicalSolution& target,
                                              HierarchicalSolution& source,
                                              Level k, bool validate);

 private:
  void Count(std::uint64_t n = 1) const {
    if (ops_ != nullptr) ops_->ordered += n;
  }
  LevelIndex& mut_level(Level l);

  std::vector<LevelIndex> levels_;
  OpCounts* ops_ = nullptr;
  bool validate_ = false;
};

std::vector<HierarchicalSolution::LevelIndex> SpliceLevels(
    HierarchicalSolution& target, HierarchicalSolution& source, Level k,
    bool validate = true);

struct HierarchyAuditOptions {
  // Live flags per element; null skips feasibility and liveness checks.
  const std::vector<bool>* live = nullptr;
  bool check_feasibility = true;
  std::optional<Ratio> tidy;  // passive + dormant <= theta * active
  bool check_stable = true;
  // Highest k checked by tidy/stable; negative selects num_levels - 2.
  Level max_check_level = -1;
};

AuditReport AuditHierarchy(const SetSystem& sys, const HierarchicalSolution& sol,
                           const HierarchyAuditOptions& opts);

}  // namespace dsc

#endif  // DSC_HIERARCHY_HPP_
