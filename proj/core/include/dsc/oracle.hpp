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


// Reference solvers used to check the engines: an exact minimum cover for
// small instances, the offline greedy with level assignment, and an audit
// of a background thread run to completion.

#ifndef DSC_ORACLE_HPP_
#define DSC_ORACLE_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dsc/engine_f.hpp"
#include "dsc/engine_logn.hpp"
#include "dsc/instance.hpp"
#include "dsc/types.hpp"

namespace dsc {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultOracleCap = 40;

struct ExactCover {
  std::int64_t size = 0;
  std::vector<SetId> witness;  // ascending
};

// Minimum-cardinality cover of `live` by branch and bound. Throws
// OracleError if |live| exceeds cap or some element has no set.
ExactCover ExactOpt(const SetSystem& sys, std::span<const ElementId> live,
                    std::int64_t cap = kDefaultOracleCap);

// Greedy by largest marginal coverage, ties to the smaller set id. Levels
// follow lev = min(p, floor(log_1.5 |cov|)) with p starting at max_level+1
// and dropping to each assigned level.
std::vector<GreedyPick> OfflineGreedy(const SetSystem& sys,
                                      std::span<const ElementId> live,
                                      Level max_level);

// Live element ids in ascending order.
std::vector<ElementId> LiveElements(const std::vector<bool>& live);

// Runs a clone of thread k to completion and checks the result is tidy at
// levels <= k: 1/5 for the greedy engine, 1/10 for the primal-dual one.
AuditReport ExtendedAudit(const LogNEngine& engine, Level k);
AuditReport ExtendedAudit(const FEngine& engine, Level k);

}  // namespace dsc

#endif  // DSC_ORACLE_HPP_
