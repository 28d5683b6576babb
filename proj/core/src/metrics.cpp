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

#include "dsc/metrics.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>

#include "json.hpp"

namespace dsc {

SnapshotRecourse DiffSnapshots(std::span<const SetId> before,
                               std::span<const SetId> after) {
  SnapshotRecourse r;
  std::size_t i = 0, j = 0;
  while (i < before.size() || j < after.size()) {
    if (j == after.size() || (i < before.size() && before[i] < after[j])) {
      ++r.deletion;
      ++i;
    } else if (i == before.size() || after[j] < before[i]) {
      ++r.insertion;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return r;
}

void SetOpt(StepReport& report, std::int64_t opt) {
  report.opt = opt;
  if (opt > 0) {
    report.ratio = static_cast<double>(report.output_size) / static_cast<double>(opt);
  } else {
    report.ratio.reset();
  }
}

void SummaryBuilder::Add(const StepReport& r) {
  Summary& s = s_;
  ++s.steps;
  s.max_insertion_recourse = std::max(s.max_insertion_recourse, r.insertion_recourse);
  s.max_deletion_recourse = std::max(s.max_deletion_recourse, r.deletion_recourse);
  s.max_total_recourse = std::max(s.max_total_recourse, r.total_recourse());
  s.max_ds_ops = std::max(s.max_ds_ops, r.ds_ops.total());
  s.max_output_size = std::max(s.max_output_size, r.output_size);
  ins_ += static_cast<double>(r.insertion_recourse);
  del_ += static_cast<double>(r.deletion_recourse);
  ops_ += static_cast<double>(r.ds_ops.total());
  if (r.ratio.has_value()) {
    s.max_ratio = std::max(s.max_ratio.value_or(0.0), *r.ratio);
  }
  if (r.audit.has_value()) {
    ++s.audited_steps;
    if (const CheckResult* f = r.audit->FirstFailure()) {
      if (s.violations++ == 0) {
        s.first_violation = "t=" + std::to_string(r.t) + " " + f->name +
                            (f->witness.empty() ? "" : ": " + f->witness);
      }
    }
  }
}

Summary SummaryBuilder::Get() const {
  Summary s = s_;
  if (s.steps > 0) {
    const double n = static_cast<double>(s.steps);
    s.mean_insertion_recourse = ins_ / n;
    s.mean_deletion_recourse = del_ / n;
    s.mean_total_recourse = (ins_ + del_) / n;
    s.mean_ds_ops = ops_ / n;
  }
  return s;
}

Summary Summarize(std::span<const StepReport> reports) {
  SummaryBuilder b;
  for (const StepReport& r : reports) b.Add(r);
  return b.Get();
}

void WriteCsvHeader(std::ostream& out) {
  out << "t,op,e,ins_rec,del_rec,out_size,ds_ops_total,opt,ratio\n";
}

void WriteCsvRow(std::ostream& out, const StepReport& r) {
  char ratio[64] = "";
  if (r.ratio.has_value()) std::snprintf(ratio, sizeof(ratio), "%.6f", *r.ratio);
  out << r.t << ',' << OpSymbol(r.op) << ',' << r.element << ','
      << r.insertion_recourse << ',' << r.deletion_recourse << ','
      << r.output_size << ',' << r.ds_ops.total() << ',';
  if (r.opt.has_value()) out << *r.opt;
  out << ',' << ratio << '\n';
}

std::string SummaryToJson(const Summary& s) {
  nlohmann::ordered_json j;
  j["steps"] = s.steps;
  j["max_insertion_recourse"] = s.max_insertion_recourse;
  j["max_deletion_recourse"] = s.max_deletion_recourse;
  j["max_total_recourse"] = s.max_total_recourse;
  j["mean_insertion_recourse"] = s.mean_insertion_recourse;
  j["mean_deletion_recourse"] = s.mean_deletion_recourse;
  j["mean_total_recourse"] = s.mean_total_recourse;
  j["max_ds_ops"] = s.max_ds_ops;
  j["mean_ds_ops"] = s.mean_ds_ops;
  j["max_output_size"] = s.max_output_size;
  if (s.max_ratio.has_value()) {
    j["max_ratio"] = *s.max_ratio;
  } else {
    j["max_ratio"] = nullptr;
  }
  j["audited_steps"] = s.audited_steps;
  j["violations"] = s.violations;
  j["first_violation"] = s.first_violation;
  return j.dump(2) + "\n";
}

}  // namespace dsc
