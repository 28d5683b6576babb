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

// Per-step measurements and their aggregation.

#ifndef DSC_METRICS_HPP_
#define DSC_METRICS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dsc/types.hpp"

namespace dsc {

struct StepReport {
  std::int64_t t = 0;
  Op op = Op::kIdle;
  ElementId element = -1;
  std::int64_t insertion_recourse = 0;
  std::int64_t deletion_recourse = 0;
  std::int64_t output_size = 0;
  OpCounts ds_ops;
  std::optional<std::int64_t> opt;
  std::optional<double> ratio;  // output_size / opt
  std::optional<AuditReport> audit;
  // Output changes behind the recourse counts.
  std::vector<SetId> added;
  std::vector<SetId> removed;

  std::int64_t total_recourse() const {
    return insertion_recourse + deletion_recourse;
  }
};

// Recourse between two output snapshots (sorted, duplicate-free).
struct SnapshotRecourse {
  std::int64_t insertion = 0;
  std::int64_t deletion = 0;
};
SnapshotRecourse DiffSnapshots(std::span<const SetId> before,
                               std::span<const SetId> after);

void SetOpt(StepReport& report, std::int64_t opt);

struct Summary {
  std::int64_t steps = 0;
  std::int64_t max_insertion_recourse = 0;
  std::int64_t max_deletion_recourse = 0;
  std::int64_t max_total_recourse = 0;
  double mean_insertion_recourse = 0;
  double mean_deletion_recourse = 0;
  double mean_total_recourse = 0;
  std::uint64_t max_ds_ops = 0;
  double mean_ds_ops = 0;
  std::int64_t max_output_size = 0;
  std::optional<double> max_ratio;
  std::int64_t audited_steps = 0;
  std::int64_t violations = 0;  // audited steps with a failing check
  std::string first_violation;
};

Summary Summarize(std::span<const StepReport> reports);

// Incremental form of Summarize for runs that do not keep their reports.
class SummaryBuilder {
 public:
  void Add(const StepReport& r);
  Summary Get() const;

 private:
  Summary s_;
  double ins_ = 0, del_ = 0, ops_ = 0;
};

void WriteCsvHeader(std::ostream& out);
void WriteCsvRow(std::ostream& out, const StepReport& r);
std::string SummaryToJson(const Summary& s);

}  // namespace dsc

#endif  // DSC_METRICS_HPP_
