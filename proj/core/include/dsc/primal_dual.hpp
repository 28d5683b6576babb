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


// Hierarchical primal-dual solutions: tight sets with levels, covered
// elements with exact dual values, and per-level incident dual sums so that
// the total dual of a set above any level is available without a scan.

#ifndef DSC_PRIMAL_DUAL_HPP_
#define DSC_PRIMAL_DUAL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsc/dual_value.hpp"
#include "dsc/hierarchy.hpp"
#include "dsc/instance.hpp"
#include "dsc/types.hpp"

namespace dsc {

struct DualNode {
  Dual w = 0;
  SetId owner = -1;

  friend bool operator==(const DualNode&, const DualNode&) = default;
};

// Prefix tallies indexed by k over covered elements at level <= k.
struct DualLevelStats {
  std::vector<std::int64_t> live;     // |L_k|
  std::vector<std::int64_t> active;   // |A_k|: live, w = (2/3)^lev
  std::vector<std::int64_t> passive;  // |P_k|: live, w < (2/3)^lev
  std::vector<std::int64_t> dormant;  // |D_k|

  friend bool operator==(const DualLevelStats&, const DualLevelStats&) = default;
};

class PrimalDualSolution {
 public:
  struct LevelIndex {
    OrderedSet<SetId> sets;
    OrderedMap<ElementId, DualNode> live;
    OrderedMap<ElementId, DualNode> dormant;
    OrderedMap<SetId, Dual> incident;  // set -> dual mass of its elements here
    std::int64_t active = 0;
  };

  struct Located {
    Level lev = 0;
    DualNode node;
    bool live = false;
  };

  PrimalDualSolution() = default;
  PrimalDualSolution(Level num_levels, const DualScale* scale,
                     OpCounts* ops = nullptr);

  Level num_levels() const { return static_cast<Level>(levels_.size()); }
  const DualScale& scale() const { return *scale_; }
  void set_counter(OpCounts* ops) { ops_ = ops; }

  void AddSet(SetId s, Level lev);
  std::optional<Level> SetLevel(SetId s) const;

  // Covers e at lev with dual w and charges w to every set containing e.
  void Cover(const SetSystem& sys, ElementId e, SetId owner, Level lev, Dual w);
  void MarkDormantAt(ElementId e, Level lev);
  void ReviveAt(ElementId e, Level lev);
  std::optional<Located> Find(ElementId e) const;

  // Dual mass of s's covered elements at levels >= from.
  Dual SetDual(SetId s, Level from = 0) const;
  // Highest solution set containing e, ties to the smaller id.
  std::optional<std::pair<SetId, Level>> HighestSet(const SetSystem& sys,
                                                    ElementId e) const;
  bool IsActive(Dual w, Level lev) const { return w == scale_->Pow23(lev); }

  const LevelIndex& level(Level l) const { return levels_[l]; }
  std::int64_t SubUniverseSize(Level k) const;  // |L_k|
  std::int64_t NumSets() const;
  std::vector<SetId> Sets() const;
  DualLevelStats Stats() const;
  DualLevelStats RecomputeStats() const;

  // Replaces target's levels <= k by source's and merges level k+1, adding
  // incident sums. Returns target's former levels 0..k.
  friend std::vector<LevelIndex> SplicePrimalDual(PrimalDualSolution& target,
                                                  PrimalDualSolution& source,
                                                  Level k, bool validate);

 private:
  void Count(std::uint64_t n = 1) const {
    if (ops_ != nullptr) ops_->ordered += n;
  }
  void CountDual(std::uint64_t n = 1) const {
    if (ops_ != nullptr) ops_->dual += n;
  }
  LevelIndex& mut_level(Level l);

  std::vector<LevelIndex> levels_;
  const DualScale* scale_ = nullptr;
  OpCounts* ops_ = nullptr;
};

std::vector<PrimalDualSolution::LevelIndex> SplicePrimalDual(
    PrimalDualSolution& target, PrimalDualSolution& source, Level k,
    bool validate = true);

struct PrimalDualAuditOptions {
  const std::vector<bool>* live = nullptr;
  bool check_feasibility = true;
  // |D_k| + |P_k| <= theta * (|A_k| + exposed)
  std::optional<Ratio> tidy;
  std::int64_t exposed = 0;
  Level max_check_level = -1;  // negative selects num_levels - 2
};

// Exact from-scratch checks: dual feasibility, tight sets, level and
// highest-level invariants, incident sums, tallies, tidiness.
AuditReport AuditPrimalDual(const SetSystem& sys, const PrimalDualSolution& sol,
                            const PrimalDualAuditOptions& opts);

}  // namespace dsc

#endif  // DSC_PRIMAL_DUAL_HPP_
