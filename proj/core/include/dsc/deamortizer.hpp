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

// Deferred set removal. Sets an engine drops from its solutions stay in the
// output as garbage and are drained at a fixed rate per step, which turns a
// worst-case insertion-recourse bound into a worst-case total bound.

#ifndef DSC_DEAMORTIZER_HPP_
#define DSC_DEAMORTIZER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "dsc/types.hpp"

namespace dsc {

// 1 + (max_level + 1) * (2 * c_spd + 1).
std::int64_t InsertionRecourseBound(Level max_level, std::int64_t c_spd);

// beta + ceil(delta * alpha).
std::int64_t GcRate(std::int64_t beta, double alpha, std::int64_t delta = 1);

class GarbageSet {
 public:
  // gc_rate <= 0 drains everything on each collection.
  explicit GarbageSet(std::int64_t gc_rate = 0, OpCounts* ops = nullptr)
      : gc_rate_(gc_rate), ops_(ops) {}

  void set_counter(OpCounts* ops) { ops_ = ops; }

  void Absorb(std::span<const SetId> removed);
  // Drops s without charging recourse (it re-entered the engine output).
  bool Erase(SetId s);
  bool Contains(SetId s) const { return sets_.contains(s); }
  // Removes min(gc_rate, size) sets, smallest ids first.
  std::vector<SetId> Collect();

  std::int64_t size() const { return static_cast<std::int64_t>(sets_.size()); }
  std::int64_t gc_rate() const { return gc_rate_; }
  const OrderedSet<SetId>& sets() const { return sets_; }

 private:
  OrderedSet<SetId> sets_;
  std::int64_t gc_rate_;
  OpCounts* ops_;
};

struct StepRecourse {
  std::int64_t insertion = 0;
  std::int64_t deletion = 0;
  std::vector<SetId> added;    // entered the output this step
  std::vector<SetId> removed;  // left the output this step
};

// Output = sets referenced by some engine structure, plus garbage. Engine
// structures (foreground, buffers) report references; a set losing its last
// reference goes to garbage if it was visible at the start of the step and
// is dropped silently otherwise.
class OutputTracker {
 public:
  OutputTracker() = default;
  OutputTracker(std::int32_t num_sets, std::int64_t gc_rate, bool deamortize,
                OpCounts* ops);

  void set_counter(OpCounts* ops);

  void AddRef(SetId s);
  void Release(SetId s);
  // Releases a batch evicted together; charged as one merge into garbage.
  void ReleaseBatch(std::span<const SetId> sets);

  // Collects garbage and returns the step's net output change.
  StepRecourse EndStep();

  bool InOutput(SetId s) const { return refs_[s] > 0 || in_garbage_[s]; }
  std::int32_t refs(SetId s) const { return refs_[s]; }
  std::int64_t output_size() const { return output_size_; }
  std::vector<SetId> OutputSets() const;
  const GarbageSet& garbage() const { return garbage_; }
  std::int64_t gc_rate() const { return garbage_.gc_rate(); }

 private:
  void Touch(SetId s);
  void Drop(SetId s, std::vector<SetId>* to_garbage);

  std::vector<std::int32_t> refs_;
  std::vector<char> in_garbage_;
  std::vector<char> start_status_;
  std::vector<std::int64_t> touched_at_;
  std::vector<SetId> touched_;
  std::int64_t step_ = 0;
  std::int64_t output_size_ = 0;
  bool deamortize_ = true;
  GarbageSet garbage_;
  OpCounts* ops_ = nullptr;
};

}  // namespace dsc

#endif  // DSC_DEAMORTIZER_HPP_
