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

// Pieces shared by the two dynamic engines: the background-thread phase
// model, scheduler bookkeeping and the common engine interface.

#ifndef DSC_ENGINE_HPP_
#define DSC_ENGINE_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dsc/metrics.hpp"
#include "dsc/types.hpp"

namespace dsc {

enum class Phase : std::uint8_t {
  kPreparation,
  kComputation,
  kSuspension,
  kCopy,
  kTail,
};

const char* PhaseName(Phase p);

struct ThreadClock {
  std::int64_t t_start = 0;
  std::int64_t t_sus = -1;
  std::int64_t tau_sus = 0;  // |B_k| on entering suspension
  std::int64_t min_sub = std::numeric_limits<std::int64_t>::max();
  bool base = false;
};

struct ThreadSummary {
  Level k = 0;
  Phase phase = Phase::kPreparation;
  bool base = false;
  std::int64_t t_start = 0;
  std::int64_t tau_sus = 0;
  std::int64_t solution_sets = 0;
  std::int64_t buffer_sets = 0;
  std::int64_t residual = 0;  // uncovered or exposed elements
  Level pointer = 0;
};

// Running threshold of the suspension -> copy admission rule. tau is kept
// as twice its value so that halving stays exact.
class CopyAdmission {
 public:
  static constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max();

  // Starts a step from the snapshots of threads already in copy or tail.
  void Reset(std::int64_t min_tau_sus_copying) { twice_tau_ = min_tau_sus_copying; }
  bool Admits(std::int64_t tau_sus) const {
    return twice_tau_ == kInfinite || 2 * tau_sus <= twice_tau_;
  }
  void Enter(std::int64_t tau_sus) { twice_tau_ = tau_sus; }

 private:
  std::int64_t twice_tau_ = kInfinite;
};

// Tracks the lifetime and suspension-wait bounds.
class ScheduleMonitor {
 public:
  ScheduleMonitor() = default;
  explicit ScheduleMonitor(Ratio lifetime_bound, Ratio wait_bound = {1, 10})
      : lifetime_bound_(lifetime_bound), wait_bound_(wait_bound) {}

  void OnThreadEnd(Level k, const ThreadClock& c, std::int64_t t_end, bool normal);
  void OnCopyEntry(Level k, const ThreadClock& c, std::int64_t t);
  void OnSuspensionAbort(Level k, const ThreadClock& c, std::int64_t t);

  // Cumulative verdicts plus the age of currently running threads.
  void Report(const std::vector<std::pair<Level, ThreadClock>>& running,
              std::int64_t now, AuditReport* rep) const;

  std::int64_t threads_ended() const { return threads_ended_; }
  std::int64_t normal_terminations() const { return normal_; }
  std::int64_t copy_entries() const { return copy_entries_; }
  std::int64_t suspension_aborts() const { return suspension_aborts_; }
  std::int64_t lifetime_violations() const { return lifetime_violations_; }
  std::int64_t wait_violations() const { return wait_violations_; }
  std::int64_t max_lifetime() const { return max_lifetime_; }
  // Largest observed lifetime / min |L_k| and wait / tau_sus.
  double max_lifetime_fraction() const { return max_lifetime_fraction_; }
  double max_wait_fraction() const { return max_wait_fraction_; }
  const std::string& first_violation() const { return first_violation_; }

 private:
  void LifetimeViolation(std::string what);
  void WaitViolation(std::string what);

  Ratio lifetime_bound_{1, 5};
  Ratio wait_bound_{1, 10};
  std::int64_t threads_ended_ = 0;
  std::int64_t normal_ = 0;
  std::int64_t copy_entries_ = 0;
  std::int64_t suspension_aborts_ = 0;
  std::int64_t lifetime_violations_ = 0;
  std::int64_t wait_violations_ = 0;
  std::int64_t max_lifetime_ = 0;
  double max_lifetime_fraction_ = 0;
  double max_wait_fraction_ = 0;
  std::string first_violation_;
  std::string first_lifetime_violation_;
  std::string first_wait_violation_;
};

class DynamicSetCover {
 public:
  virtual ~DynamicSetCover() = default;

  virtual const char* name() const = 0;
  // Applies one update (or an idle step) and advances every thread.
  virtual StepReport Step(const Update& u) = 0;
  virtual std::vector<SetId> OutputSets() const = 0;
  virtual std::int64_t OutputSize() const = 0;
  // End-of-step invariant audit at the proven thresholds.
  virtual AuditReport Audit() const = 0;
  // No buffer holds sets and the garbage is empty: output == foreground.
  virtual bool Quiescent() const = 0;
  virtual const std::vector<bool>& live() const = 0;
  virtual std::int64_t time() const = 0;
  virtual std::int64_t insertion_recourse_bound() const = 0;
  virtual std::int64_t gc_rate() const = 0;
  virtual const ScheduleMonitor& monitor() const = 0;
  virtual std::vector<ThreadSummary> Threads() const = 0;
};

}  // namespace dsc

#endif  // DSC_ENGINE_HPP_
