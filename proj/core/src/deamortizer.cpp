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

#include "dsc/deamortizer.hpp"

#include <cmath>
#include <stdexcept>

namespace dsc {

std::int64_t InsertionRecourseBound(Level max_level, std::int64_t c_spd) {
  return 1 + static_cast<std::int64_t>(max_level + 1) * (2 * c_spd + 1);
}

std::int64_t GcRate(std::int64_t beta, double alpha, std::int64_t delta) {
  return beta + static_cast<std::int64_t>(std::ceil(static_cast<double>(delta) * alpha));
}

void GarbageSet::Absorb(std::span<const SetId> removed) {
  if (removed.empty()) return;
  if (ops_ != nullptr) ++ops_->ordered;
  sets_.insert(removed.begin(), removed.end());
}

bool GarbageSet::Erase(SetId s) {
  if (ops_ != nullptr) ++ops_->ordered;
  return sets_.erase(s) > 0;
}

std::vector<SetId> GarbageSet::Collect() {
  std::vector<SetId> out;
  std::int64_t budget = gc_rate_ > 0 ? gc_rate_ : size();
  while (budget-- > 0 && !sets_.empty()) {
    if (ops_ != nullptr) ++ops_->ordered;
    out.push_back(*sets_.begin());
    sets_.erase(sets_.begin());
  }
  return out;
}

OutputTracker::OutputTracker(std::int32_t num_sets, std::int64_t gc_rate,
                             bool deamortize, OpCounts* ops)
    : refs_(num_sets, 0),
      in_garbage_(num_sets, 0),
      start_status_(num_sets, 0),
      touched_at_(num_sets, -1),
      deamortize_(deamortize),
      garbage_(deamortize ? gc_rate : 0, ops),
      ops_(ops) {}

void OutputTracker::set_counter(OpCounts* ops) {
  ops_ = ops;
  garbage_.set_counter(ops);
}

void OutputTracker::Touch(SetId s) {
  if (touched_at_[s] == step_) return;
  touched_at_[s] = step_;
  start_status_[s] = InOutput(s);
  touched_.push_back(s);
}

void OutputTracker::AddRef(SetId s) {
  Touch(s);
  if (refs_[s]++ == 0) {
    if (in_garbage_[s]) {
      in_garbage_[s] = 0;
      garbage_.Erase(s);
    } else {
      ++output_size_;
    }
  }
}

void OutputTracker::Drop(SetId s, std::vector<SetId>* to_garbage) {
  Touch(s);
  if (refs_[s] <= 0) throw std::logic_error("release of unreferenced set");
  if (--refs_[s] > 0) return;
  if (deamortize_ && start_status_[s]) {
    in_garbage_[s] = 1;
    to_garbage->push_back(s);
  } else {
    --output_size_;
  }
}

void OutputTracker::Release(SetId s) {
  std::vector<SetId> to_garbage;
  Drop(s, &to_garbage);
  garbage_.Absorb(to_garbage);
}

void OutputTracker::ReleaseBatch(std::span<const SetId> sets) {
  std::vector<SetId> to_garbage;
  for (SetId s : sets) Drop(s, &to_garbage);
  garbage_.Absorb(to_garbage);
}

StepRecourse OutputTracker::EndStep() {
  for (SetId s : garbage_.Collect()) {
    Touch(s);
    in_garbage_[s] = 0;
    --output_size_;
  }
  StepRecourse rec;
  for (SetId s : touched_) {
    const bool now = InOutput(s);
    if (now && !start_status_[s]) {
      ++rec.insertion;
      rec.added.push_back(s);
    } else if (!now && start_status_[s]) {
      ++rec.deletion;
      rec.removed.push_back(s);
    }
  }
  touched_.clear();
  ++step_;
  return rec;
}

std::vector<SetId> OutputTracker::OutputSets() const {
  std::vector<SetId> out;
  for (SetId s = 0; s < static_cast<SetId>(refs_.size()); ++s) {
    if (InOutput(s)) out.push_back(s);
  }
  return out;
}

}  // namespace dsc
