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

#include "dsc/dual_value.hpp"

#include <algorithm>
#include <stdexcept>

namespace dsc {

DualScale::DualScale(Level exponent) : exponent_(exponent) {
  if (exponent < 1 || exponent > kMaxExponent) {
    throw std::invalid_argument("dual exponent " + std::to_string(exponent) +
                                " outside [1, " + std::to_string(kMaxExponent) +
                                "]");
  }
  pow23_.assign(exponent + 1, 0);
  Dual three = 1;
  for (Level i = 0; i < exponent; ++i) three *= 3;
  // p = 0: 3^L; each step multiplies by 2/3 exactly.
  pow23_[0] = three;
  for (Level p = 1; p <= exponent; ++p) pow23_[p] = pow23_[p - 1] / 3 * 2;
}

std::string DualToString(Dual v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  UInt128 u = neg ? static_cast<UInt128>(-(v + 1)) + 1
                            : static_cast<UInt128>(v);
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::string DualScale::ToString(Dual v) const {
  return DualToString(v) + "/" + DualToString(one());
}

}  // namespace dsc
