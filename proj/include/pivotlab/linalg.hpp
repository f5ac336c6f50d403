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

#include <vector>

#include "pivotlab/rational.hpp"

namespace pivotlab {

using RatMatrix = std::vector<std::vector<Rational>>;
using RatVector = std::vector<Rational>;

/// Solves A x = b by exact Gaussian elimination (pivot = first nonzero entry
/// in the column). A and b are consumed. Returns false when A is singular.
inline bool gaussian_solve(RatMatrix a, RatVector b, RatVector& x) {
  const size_t n = a.size();
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;

  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a[perm[pivot]][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(perm[col], perm[pivot]);
    const size_t pr = perm[col];
    for (size_t row = col + 1; row < n; ++row) {
      const size_t r = perm[row];
      if (a[r][col] == 0) continue;
      Rational factor = a[r][col] / a[pr][col];
      a[r][col] = 0;
      for (size_t j = col + 1; j < n; ++j) a[r][j] -= factor * a[pr][j];
      b[r] -= factor * b[pr];
    }
  }
  x.assign(n, Rational(0));
  for (size_t col = n; col-- > 0;) {
    const size_t r = perm[col];
    Rational acc = b[r];
    for (size_t j = col + 1; j < n; ++j) acc -= a[r][j] * x[j];
    x[col] = acc / a[r][col];
  }
  return true;
}

/// Exact inverse via Gauss-Jordan. Returns false when m is singular.
inline bool invert(const RatMatrix& m, RatMatrix& inv) {
  const size_t n = m.size();
  RatMatrix a = m;
  inv.assign(n, RatVector(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;

  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    Rational d = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational factor = a[row][col];
      for (size_t j = 0; j < n; ++j) {
        a[row][j] -= factor * a[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return true;
}

}  // namespace pivotlab
