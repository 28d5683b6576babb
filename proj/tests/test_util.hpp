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


#ifndef DSC_TESTS_TEST_UTIL_HPP_
#define DSC_TESTS_TEST_UTIL_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "dsc/instance.hpp"

namespace dsc::testing {

// Four elements on a 4-cycle: s0={0,1}, s1={1,2}, s2={2,3}, s3={0,3}.
inline SetSystem CycleSystem() { return SetSystem(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

inline UpdateStream Inserts(std::vector<ElementId> es) {
  UpdateStream out;
  for (ElementId e : es) out.push_back({Op::kInsert, e});
  return out;
}

inline Instance Churn(std::int32_t universe, std::int32_t sets, std::int32_t freq,
                      std::int64_t steps, std::uint64_t seed) {
  WorkloadParams p;
  p.universe_size = universe;
  p.num_sets = sets;
  p.freq = freq;
  p.steps = steps;
  p.pattern = Pattern::kRandomChurn;
  p.seed = seed;
  return GenerateWorkload(p);
}

inline std::shared_ptr<const SetSystem> Share(const SetSystem& sys) {
  return std::make_shared<const SetSystem>(sys);
}

// Size of a minimum cover of `live` by trying every subset of sets.
inline std::int64_t BruteForceOpt(const SetSystem& sys, const std::vector<ElementId>& live) {
  const int m = sys.num_sets();
  std::int64_t best = m + 1;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size >= best) continue;
    bool ok = true;
    for (ElementId e : live) {
      bool hit = false;
      for (SetId s : sys.incident(e)) hit = hit || ((mask >> s) & 1u);
      if (!hit) {
        ok = false;
        break;
      }
    }
    if (ok) best = size;
  }
  return best;
}

}  // namespace dsc::testing

#endif  // DSC_TESTS_TEST_UTIL_HPP_
