// Copyright 2026 The pivotlab Authors
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

#pragma once

#include <cstdint>

#include "pivotlab/errors.hpp"

namespace pivotlab {

// Bit positions are 1-based: x = sum_i x_i 2^{i-1}.

inline bool bit_at(std::int64_t x, int i) { return i >= 1 && i <= 62 && ((x >> (i - 1)) & 1) != 0; }

/// Least significant set bit.
inline int bit_ell1(std::int64_t x) {
  if (x <= 0) throw DomainError("bit_ell1 requires x >= 1");
  int i = 1;
  while (!bit_at(x, i)) ++i;
  return i;
}

/// Most significant set bit.
inline int bit_m(std::int64_t x) {
  if (x <= 0) throw DomainError("bit_m requires x >= 1");
  int i = 1;
  for (int j = 1; j <= 62; ++j)
    if (bit_at(x, j)) i = j;
  return i;
}

/// max{j in [i-2] : x_j = 1 or j = 1}, defined for i >= 3.
inline int bit_L(int i, std::int64_t x) {
  if (i < 3) throw DomainError("bit_L requires i >= 3");
  int best = 1;
  for (int j = 1; j <= i - 2; ++j)
    if (bit_at(x, j)) best = j;
  return best;
}

/// Least index i with x_i = 0.
inline int bit_ell0(std::int64_t x) {
  if (x <= 0) throw DomainError("bit_ell0 requires x >= 1");
  int i = 1;
  while (bit_at(x, i)) ++i;
  return i;
}

}  // namespace pivotlab
