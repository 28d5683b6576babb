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

// Dynamic O(log n)-approximate set cover with worst-case recourse.
//
// A foreground hierarchical solution F answers each update lazily. For every
// level k a cooperative background thread T_k rebuilds the sub-universe
// L_k (live elements of F at levels <= k) with a greedy run B_k, mirrors it
// into a buffer R_k that is part of the output, and finally swaps it into
// F's levels <= k.

#ifndef DSC_ENGINE_LOGN_HPP_
#define DSC_ENGINE_LOGN_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dsc/deamortizer.hpp"
#include "dsc/engine.hpp"
#include "dsc/hierarchy.hpp"
#include "dsc/instance.hpp"

namespace dsc {

struct LogNConfig {
  std::int64_t c_spd = 128;
  bool deamortize = true;
  // Approximation constant in the garbage rate; negative selects
  // 4 ln(n_cap).
  double gc_alpha = -1;
  // Cross-level duplicate checks on every structural mutation.
  bool validate = false;
};

struct CompletedRun {
  Level k = 0;
  std::int64_t t_start = 0;
  std::int64_t t_end = 0;
  std::vector<GreedyPick> picks;
};

struct LogNAuditOptions {
  std::optional<Ratio> tidy = Ratio{1, 2};
  bool stable = true;
  bool schedule_bounds = true;
  bool threads = true;  // background-thread structure checks
};

class LogNEngine final : public DynamicSetCover {
 public:
  explicit LogNEngine(std::shared_ptr<const SetSystem> sys, LogNConfig cfg = {});
  LogNEngine(const LogNEngine&) = delete;
  LogNEngine& operator=(const LogNEngine&) = delete;

  const char* name() const override { return "logn"; }
  StepReport Step(const Update& u) override;
  std::vector<SetId> OutputSets() const override { return tracker_.OutputSets(); }
  std::int64_t OutputSize() const override { return tracker_.output_size(); }
  AuditReport Audit() const override { return AuditStep(LogNAuditOptions{}); }
  AuditReport AuditStep(const LogNAuditOptions& opts) const;
  bool Quiescent() const override;
  const std::vector<bool>& live() const override { return live_; }
  std::int64_t time() const override { return t_; }
  std::int64_t insertion_recourse_bound() const override;
  std::int64_t gc_rate() const override { return tracker_.gc_rate(); }
  const ScheduleMonitor& monitor() const override { return monitor_; }
  std::vector<ThreadSummary> Threads() const override;

  const SetSystem& system() const { return *sys_; }
  const HierarchicalSolution& foreground() const { return fg_; }
  Level max_level() const { return max_level_; }
  std::int64_t c_spd() const { return cfg_.c_spd; }
  const OpCounts& ops() const { return ops_; }

  // Most recent normally terminated run of T_k, if any.
  const CompletedRun* LastCompletedRun(Level k) const;

  // Clones T_k and runs its greedy to completion with no further updates.
  // Returns the completed background solution and the clone's picks.
  struct Extension {
    HierarchicalSolution solution;
    std::vector<GreedyPick> picks;
    Phase phase_at_clone = Phase::kPreparation;
  };
  std::optional<Extension> ExtendThread(Level k) const;

 private:
  enum class Advance { kOutOfBudget, kSetCompleted, kExhausted };
  enum class Outcome { kRunning, kTerminated, kAborted };

  struct Thread {
    Level k = 0;
    Phase phase = Phase::kPreparation;
    ThreadClock clock;
    HierarchicalSolution sol;            // B_k
    OrderedSet<SetId> buffer;            // R_k
    std::vector<SetId> order;            // B_k's sets in insertion order
    std::size_t copy_cursor = 0;
    std::vector<Level> unc_plev;         // plev of uncovered elements, else -1
    std::int64_t num_uncovered = 0;
    std::vector<OrderedSet<ElementId>> unc_by_set;  // set -> its uncovered
    // (-key, set). Keys may be stale on the high side; the greedy fixes
    // them when they reach the front.
    OrderedSet<std::pair<std::int64_t, SetId>> queue;
    SetId queued_upto = 0;               // queue covers sets below this id
    bool scanned = false;
    Level pointer = 0;                   // p_k
    SetId current = -1;
    Level current_level = 0;
    ElementId cursor = -1;               // preparation scan position
    std::vector<GreedyPick> picks;
  };

  void Foreground(const Update& u);
  Thread MakeThread(Level k) const;
  Outcome RunThread(Thread& th);
  void DeliverDelta(Thread& th, const Update& u);

  void AddUncovered(Thread& th, ElementId e, Level plev) const;
  void RemoveUncovered(Thread& th, ElementId e) const;
  void CoverFromCurrent(Thread& th, ElementId e) const;
  // Returns true once the sub-universe is fully scanned.
  bool Scan(Thread& th, std::int64_t budget) const;
  // Enters sets into Q_k after the scan; returns true when done.
  bool BuildQueue(Thread& th, std::int64_t budget) const;
  Advance Greedy(Thread& th, std::int64_t& budget, bool mirror);
  void FinishGreedy(Thread& th, bool mirror);
  void AddToBuffer(Thread& th, SetId s);

  void Switch(Level k);
  void EndThread(Level k, bool normal);

  std::shared_ptr<const SetSystem> sys_;
  LogNConfig cfg_;
  Level max_level_;
  Level num_levels_;
  mutable OpCounts ops_;
  OutputTracker tracker_;
  ScheduleMonitor monitor_;
  CopyAdmission admission_;
  HierarchicalSolution fg_;
  std::vector<std::optional<Thread>> threads_;
  std::vector<std::optional<CompletedRun>> completed_;
  std::vector<bool> live_;
  std::int64_t t_ = 0;
  // Foreground level of the current update's element.
  Level delta_level_ = -1;
};

}  // namespace dsc

#endif  // DSC_ENGINE_LOGN_HPP_
