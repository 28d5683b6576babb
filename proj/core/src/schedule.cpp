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

#include <algorithm>
#include <string>

#include "dsc/engine.hpp"

namespace dsc {

const char* PhaseName(Phase p) {
  switch (p) {
    case Phase::kPreparation:
      return "preparation";
    case Phase::kComputation:
      return "computation";
    case Phase::kSuspension:
      return "suspension";
    case Phase::kCopy:
      return "copy";
    case Phase::kTail:
      return "tail";
  }
  return "?";
}

void ScheduleMonitor::LifetimeViolation(std::string what) {
  if (first_lifetime_violation_.empty()) first_lifetime_violation_ = what;
  if (first_violation_.empty()) first_violation_ = std::move(what);
}

void ScheduleMonitor::WaitViolation(std::string what) {
  if (first_wait_violation_.empty()) first_wait_violation_ = what;
  if (first_violation_.empty()) first_violation_ = std::move(what);
}

void ScheduleMonitor::OnThreadEnd(Level k, const ThreadClock& c,
                                  std::int64_t t_end, bool normal) {
  ++threads_ended_;
  if (normal) ++normal_;
  const std::int64_t life = t_end - c.t_start;
  max_lifetime_ = std::max(max_lifetime_, life);
  if (c.min_sub > 0) {
    max_lifetime_fraction_ = std::max(
        max_lifetime_fraction_, static_cast<double>(life) / static_cast<double>(c.min_sub));
  }
  if (!lifetime_bound_.AtMostTimes(life, c.min_sub)) {
    ++lifetime_violations_;
    LifetimeViolation("thread " + std::to_string(k) + " lived " + std::to_string(life) +
              " steps with min sub-universe " + std::to_string(c.min_sub));
  }
}

void ScheduleMonitor::OnCopyEntry(Level k, const ThreadClock& c, std::int64_t t) {
  ++copy_entries_;
  const std::int64_t wait = t - c.t_sus;
  if (c.tau_sus > 0) {
    max_wait_fraction_ = std::max(
        max_wait_fraction_, static_cast<double>(wait) / static_cast<double>(c.tau_sus));
  }
  // Strict: wait < bound * tau_sus.
  if (static_cast<Int128>(wait) * wait_bound_.den >=
      static_cast<Int128>(wait_bound_.num) * c.tau_sus) {
    ++wait_violations_;
    WaitViolation("thread " + std::to_string(k) + " waited " + std::to_string(wait) +
              " steps in suspension with tau_sus " + std::to_string(c.tau_sus));
  }
}

void ScheduleMonitor::OnSuspensionAbort(Level k, const ThreadClock& c, std::int64_t t) {
  ++suspension_aborts_;
  ++wait_violations_;
  WaitViolation("thread " + std::to_string(k) + " aborted after " +
            std::to_string(t - c.t_sus) + " steps in suspension with tau_sus " +
            std::to_string(c.tau_sus));
}

void ScheduleMonitor::Report(
    const std::vector<std::pair<Level, ThreadClock>>& running, std::int64_t now,
    AuditReport* rep) const {
  bool ages_ok = true;
  std::string w;
  for (const auto& [k, c] : running) {
    const std::int64_t age = now - c.t_start;
    if (!lifetime_bound_.AtMostTimes(age, c.min_sub)) {
      ages_ok = false;
      w = "thread " + std::to_string(k) + " age " + std::to_string(age) +
          " with min sub-universe " + std::to_string(c.min_sub);
      break;
    }
  }
  rep->Add("thread_lifetime", ages_ok && lifetime_violations_ == 0,
           lifetime_violations_ > 0 ? first_lifetime_violation_ : w);
  rep->Add("suspension_wait", wait_violations_ == 0, first_wait_violation_);
}

}  // namespace dsc
