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

#ifndef DSC_TYPES_HPP_
#define DSC_TYPES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/container/btree_map.h"
#include "absl/container/btree_set.h"

namespace dsc {

// 128-bit integers for exact cross-multiplied comparisons.
__extension__ using Int128 = __int128;
__extension__ using UInt128 = unsigned __int128;

using ElementId = std::int32_t;
using SetId = std::int32_t;
using Level = std::int32_t;

// Balanced search trees used for every ordered index.
template <typename K>
using OrderedSet = absl::btree_set<K>;
template <typename K, typename V>
using OrderedMap = absl::btree_map<K, V>;
template <typename K, typename V>
using OrderedMultimap = absl::btree_multimap<K, V>;

enum class Op : std::uint8_t { kInsert, kDelete, kIdle };

struct Update {
  Op op = Op::kInsert;
  ElementId element = 0;

  friend bool operator==(const Update&, const Update&) = default;
};

char OpSymbol(Op op);

// One step of a greedy run: the chosen set, the elements it newly covered
// and the level it was placed at.
struct GreedyPick {
  SetId set = -1;
  std::vector<ElementId> coverage;
  Level level = 0;

  friend bool operator==(const GreedyPick&, const GreedyPick&) = default;
};

// Exact nonnegative ratio num/den, used for tidy thresholds.
struct Ratio {
  std::int64_t num = 1;
  std::int64_t den = 2;

  // Returns lhs <= (num/den) * rhs without rounding.
  bool AtMostTimes(std::int64_t lhs, std::int64_t rhs) const {
    return static_cast<Int128>(lhs) * den <=
           static_cast<Int128>(num) * rhs;
  }
  std::string ToString() const;
};

// Logical data-structure operation counts.
struct OpCounts {
  std::uint64_t ordered = 0;
  std::uint64_t priority = 0;
  std::uint64_t dual = 0;

  std::uint64_t total() const { return ordered + priority + dual; }
  OpCounts& operator+=(const OpCounts& o) {
    ordered += o.ordered;
    priority += o.priority;
    dual += o.dual;
    return *this;
  }
  friend OpCounts operator-(OpCounts a, const OpCounts& b) {
    a.ordered -= b.ordered;
    a.priority -= b.priority;
    a.dual -= b.dual;
    return a;
  }
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string witness;  // first failing witness, empty on pass
};

class AuditReport {
 public:
  // Records a check; repeated names keep the first failure.
  void Add(const std::string& name, bool passed, std::string witness = {});
  void Merge(const AuditReport& other, const std::string& prefix = {});

  bool ok() const;
  const CheckResult* FirstFailure() const;
  const CheckResult* Find(const std::string& name) const;
  const std::vector<CheckResult>& checks() const { return checks_; }
  std::string ToString() const;

 private:
  std::vector<CheckResult> checks_;
};

}  // namespace dsc

#endif  // DSC_TYPES_HPP_
