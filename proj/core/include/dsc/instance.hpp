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

// Set systems, update streams, the `.dsc` text format and workload
// generation.

#ifndef DSC_INSTANCE_HPP_
#define DSC_INSTANCE_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsc/types.hpp"

namespace dsc {

class InstanceError : public std::runtime_error {
 public:
  // line == 0 means the error is not tied to an input line.
  InstanceError(const std::string& message, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

// Immutable universe [0, U), set family and element -> incident sets index.
class SetSystem {
 public:
  SetSystem() = default;
  // Sorts and deduplicates every set. n_cap <= 0 selects universe_size.
  // Throws InstanceError if an element id is out of range or some element
  // belongs to no set.
  SetSystem(std::int32_t universe_size,
            std::vector<std::vector<ElementId>> sets, std::int64_t n_cap = 0);

  std::int32_t universe_size() const { return universe_size_; }
  std::int32_t num_sets() const { return static_cast<std::int32_t>(sets_.size()); }
  std::int32_t f_max() const { return f_max_; }
  std::int64_t n_cap() const { return n_cap_; }
  // Highest level any structure may use below the k+1 merge slot.
  Level max_level() const { return max_level_; }

  std::span<const ElementId> set(SetId s) const { return sets_[s]; }
  std::span<const SetId> incident(ElementId e) const { return incident_[e]; }
  bool Contains(SetId s, ElementId e) const;

  friend bool operator==(const SetSystem& a, const SetSystem& b) {
    return a.universe_size_ == b.universe_size_ && a.sets_ == b.sets_ &&
           a.n_cap_ == b.n_cap_;
  }

 private:
  std::int32_t universe_size_ = 0;
  std::int64_t n_cap_ = 0;
  std::int32_t f_max_ = 0;
  Level max_level_ = 1;
  std::vector<std::vector<ElementId>> sets_;
  std::vector<std::vector<SetId>> incident_;
};

using UpdateStream = std::vector<Update>;

struct Instance {
  SetSystem system;
  UpdateStream stream;
  std::vector<std::string> warnings;
};

// Replays the stream from the empty live set. Throws InstanceError naming
// the offending 1-based step on a discipline or n_cap violation.
void ValidateStream(const SetSystem& sys, const UpdateStream& stream);

// Parses the `.dsc` text format. n_cap <= 0 selects the universe size.
Instance ParseInstance(std::string_view text, std::int64_t n_cap = 0);
Instance ReadInstanceFile(const std::string& path, std::int64_t n_cap = 0);

std::string SerializeInstance(const SetSystem& sys, const UpdateStream& stream);

enum class Pattern { kInsertOnly, kSlidingWindow, kRandomChurn };

const char* PatternName(Pattern p);
Pattern ParsePattern(std::string_view name);

struct WorkloadParams {
  std::int32_t universe_size = 100;
  std::int32_t num_sets = 30;
  std::int32_t freq = 3;
  std::int64_t steps = 100;
  Pattern pattern = Pattern::kRandomChurn;
  std::uint64_t seed = 1;
  // Sliding-window width; <= 0 selects max(1, U/2).
  std::int32_t window = 0;
};

// InsertOnly: min(steps, U) distinct inserts in random order.
// SlidingWindow: `window` inserts, then alternating delete-oldest and insert
// of a uniform dormant element.
// RandomChurn: each step toggles a uniform random element, i.e. inserts a
// uniform dormant element with probability |dormant|/U and otherwise deletes
// a uniform live element.
Instance GenerateWorkload(const WorkloadParams& params);

}  // namespace dsc

#endif  // DSC_INSTANCE_HPP_
