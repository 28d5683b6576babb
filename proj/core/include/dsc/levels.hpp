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

// Integer-exact powers of 1.5 (epsilon = 1/2).

#ifndef DSC_LEVELS_HPP_
#define DSC_LEVELS_HPP_

#include <cstdint>

#include "dsc/types.hpp"

namespace dsc {

// True iff 1.5^exp <= c, i.e. 3^exp <= c * 2^exp. Counts are clamped to
// 2^40, far above any set or universe size handled here.
inline bool Pow15AtMost(Level exp, std::int64_t c) {
  if (c <= 0) return false;
  if (c > (std::int64_t{1} << 40)) c = std::int64_t{1} << 40;
  UInt128 three = 1;
  UInt128 rhs = static_cast<UInt128>(c);
  for (Level i = 0; i < exp; ++i) {
    three *= 3;
    rhs *= 2;
    if (three > rhs) return false;  // 3^i outgrows c * 2^i from here on
  }
  return true;
}

// floor(log_{1.5} c) for c >= 1.
inline Level FloorLog15(std::int64_t c) {
  Level l = 0;
  while (Pow15AtMost(l + 1, c)) ++l;
  return l;
}

// ceil(log_{1.5} n) for n >= 1: the smallest l with 1.5^l >= n.
inline Level CeilLog15(std::int64_t n) {
  const Level f = FloorLog15(n);
  // 1.5^f == n only for n == 1 (f == 0), since 3^f/2^f is not an integer
  // otherwise.
  return n <= 1 ? 0 : f + 1;
}

// True iff count < 1.5^exp.
inline bool BelowPow15(std::int64_t count, Level exp) {
  return !Pow15AtMost(exp, count);
}

// Top level index: ceil(log_{1.5} n_cap) + 1.
inline Level MaxLevelFor(std::int64_t n_cap) {
  return CeilLog15(n_cap < 1 ? 1 : n_cap) + 1;
}

}  // namespace dsc

#endif  // DSC_LEVELS_HPP_
