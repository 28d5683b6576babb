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

// Exact dual values: integer numerators over the fixed denominator 3^L, so
// that every (2/3)^p with 0 <= p <= L is an integer 2^p * 3^(L-p).

#ifndef DSC_DUAL_VALUE_HPP_
#define DSC_DUAL_VALUE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dsc/types.hpp"

namespace dsc {

using Dual = Int128;

class DualScale {
 public:
  // Largest supported exponent; keeps products of a numerator with an
  // element count inside 127 bits.
  static constexpr Level kMaxExponent = 45;

  DualScale() : DualScale(1) {}
  explicit DualScale(Level exponent);

  Level exponent() const { return exponent_; }
  Dual one() const { return pow23_[0]; }
  Dual two_thirds() const { return pow23_[1]; }
  // (2/3)^p scaled by the denominator.
  Dual Pow23(Level p) const { return pow23_[p]; }

  std::string ToString(Dual v) const;  // "num/den"

 private:
  Level exponent_ = 1;
  std::vector<Dual> pow23_;
};

std::string DualToString(Dual v);

// a/b <=> c/d for b, d > 0, exactly.
inline int CompareFractions(Dual a, std::int64_t b, Dual c, std::int64_t d) {
  const Dual lhs = a * d;
  const Dual rhs = c * b;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace dsc

#endif  // DSC_DUAL_VALUE_HPP_
