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


// Dynamic O(f)-approximate set cover with worst-case recourse.
//
// The foreground F is a primal-dual solution over exact duals with
// epsilon = 1/2. Background thread T_k rebuilds F's levels <= k by lazily
// raising the duals of exposed elements to (2/3)^p_k and adding every set
// that becomes tight, then swaps the result in through the same buffer and
// scheduler machinery as the log n engine.

#ifndef DSC_ENGINE_F_HPP_
#define DSC_ENGINE_F_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dsc/deamortizer.hpp"
#include "dsc/dual_value.hpp"
#include "dsc/engine.hpp"
#include "dsc/instance.hpp"
#include "dsc/primal_dual.hpp"

namespace dsc {

struct FConfig {
  std::int64_t c_spd = 128;
  bool deamortize = true;
  // Approximation constant in the garbage rate; negative selects 4 f.
  double gc_alpha = -1;
  bool validate = false;
};

struct FAuditOptions {
  std::optional<Ratio> tidy = Ratio{1, 2};
  bool schedule_bounds = true;
  bool threads = true;
};

class FEngine final : public DynamicSetCover {
 public:
  explicit FEngine(std::shared_ptr<const SetSystem> sys, FConfig cfg = {});
  FEngine(const FEngine&) = delete;
  FEngine& operator=(const FEngine&) = delete;

  const char* name() const override { return "f"; }
  StepReport Step(const Update& u) override;
  std::vector<SetId> OutputSets() const override { return tracker_.OutputSets(); }
  std::int64_t OutputSize() const override { return tracker_.output_size(); }
  AuditReport Audit() const override { return AuditStep(FAuditOptions{}); }
  AuditReport AuditStep(const FAuditOptions& opts) const;
  bool Quiescent() const override;
  const std::vector<bool>& live() const override { return live_; }
  std::int64_t time() const override { return t_; }
  std::int64_t insertion_recourse_bound() const override;
  std::int64_t gc_rate() const override { return tracker_.gc_rate(); }
  const ScheduleMonitor& monitor() const override { return monitor_; }
  std::vector<ThreadSummary> Threads() const override;

  const SetSystem& system() const { return *sys_; }
  const PrimalDualSolution& foreground() const { return fg_; }
  const DualScale& scale() const { return *scale_; }
  Level max_level() const { return max_level_; }
  std::int64_t c_spd() const { return cfg_.c_spd; }
  const OpCounts& ops() const { return ops_; }

  // Clones T_k and runs preparation and rebuild to completion with no
  // further updates; returns the completed partial solution S*(B_k).
  struct Extension {
    PrimalDualSolution solution;
    Phase phase_at_clone = Phase::kPreparation;
  };
  std::optional<Extension> ExtendThread(Level k) const;

 private:
  enum class Advance { kOutOfBudget, kSetCompleted, kExhausted };
  enum class Outcome { kRunning, kTerminated, kAborted };

  // Q_k key: target value num/den, then set id.
  struct Target {
    Dual num = 0;
    std::int64_t den = 1;
    SetId set = -1;
  };
  struct TargetLess {
    bool operator()(const Target& a, const Target& b) const {
      const int c = CompareFractions(a.num, a.den, b.num, b.den);
      return c != 0 ? c < 0 : a.set < b.set;
    }
  };

  static constexpr Level kOutside = -2;
  static constexpr Level kExposed = -1;

  struct Thread {
    Level k = 0;
    Phase phase = Phase::kPreparation;
    ThreadClock clock;
    PrimalDualSolution sol;              // S*(B_k) and C*(B_k)
    std::vector<Level> set_level;        // level in S*(B_k), else -1
    std::vector<SetId> order;            // S*(B_k) in insertion order
    OrderedSet<SetId> buffer;            // R_k
    std::size_t copy_cursor = 0;
    std::vector<Level> where;            // kOutside, kExposed or level in C*
    std::int64_t num_exposed = 0;
    std::vector<OrderedSet<ElementId>> exposed_by_set;
    // Settled dual mass per set: F above k plus C*(B_k); valid once ready.
    std::vector<Dual> settled;
    std::vector<char> settled_ready;
    // Entries may be stale on the high side; Rebuild repairs the front.
    absl::btree_set<Target, TargetLess> queue;
    SetId queued_upto = 0;               // queue covers sets below this id
    Level pointer = 0;                   // p_k
    SetId current = -1;
    int prep_pass = 1;                   // 3 once the queue is being built
    ElementId cursor = -1;
    OrderedSet<ElementId> late;          // inserted during the first pass
  };

  void Foreground(const Update& u);
  Thread MakeThread(Level k) const;
  Outcome RunThread(Thread& th);
  void DeliverDelta(Thread& th, const Update& u);

  Dual& Settled(Thread& th, SetId s) const;
  Target KeyOf(const Thread& th, SetId s) const;
  std::optional<Target> Unqueue(const Thread& th, SetId s) const;
  void Requeue(Thread& th, SetId s, const std::optional<Target>& before) const;
  bool BuildQueue(Thread& th, std::int64_t budget) const;
  Dual BackgroundDual(Thread& th, SetId s) const;  // w_s(B_k)

  void Expose(Thread& th, ElementId e) const;
  void Unexpose(Thread& th, ElementId e) const;
  void Settle(Thread& th, ElementId e, SetId owner) const;
  void CoverDirect(Thread& th, ElementId e, SetId owner, Level lev, Dual w) const;
  std::optional<std::pair<SetId, Level>> HighestStarSet(const Thread& th,
                                                        ElementId e) const;
  void AddStarSet(Thread& th, SetId s, Level lev, bool mirror);
  void InsertElement(Thread& th, ElementId e, bool mirror);
  void DeleteElement(Thread& th, ElementId e);

  // Returns true once both preparation passes are complete.
  bool Prepare(Thread& th, std::int64_t budget, bool mirror);
  Advance Rebuild(Thread& th, std::int64_t& budget, bool mirror);
  void FinishRebuild(Thread& th, bool mirror);
  void AddToBuffer(Thread& th, SetId s);

  void Switch(Level k);
  void EndThread(Level k, bool normal);

  std::shared_ptr<const SetSystem> sys_;
  FConfig cfg_;
  Level max_level_;
  Level num_levels_;
  std::unique_ptr<DualScale> scale_;
  mutable OpCounts ops_;
  OutputTracker tracker_;
  ScheduleMonitor monitor_;
  CopyAdmission admission_;
  PrimalDualSolution fg_;
  std::vector<std::optional<Thread>> threads_;
  std::vector<bool> live_;
  std::int64_t t_ = 0;
  Level delta_level_ = -1;
};

}  // namespace dsc

#endif  // DSC_ENGINE_F_HPP_
