/* Copyright 2026 The modcast Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "modcast/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace modcast {

namespace {

// Shortest augmenting path Hungarian on an n x n matrix (1-based potentials).
std::vector<int> hungarian_square(const std::vector<double>& a, int n) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

Assignment solve_assignment(const CostMatrix& cost) {
  Assignment result;
  const std::size_t rows = cost.rows();
  const std::size_t cols = cost.cols();
  if (rows == 0 || cols == 0) return result;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!cost.allowed(r, c)) continue;
      const double x = cost(r, c);
      if (!std::isfinite(x)) throw std::invalid_argument("assignment cost must be finite");
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (lo > hi) return result;  // nothing allowed

  const int n = static_cast<int>(std::max(rows, cols));
  // Any matching with one more allowed pair must be strictly cheaper.
  const double penalty = static_cast<double>(n) * (hi - lo) + 1.0;
  std::vector<double> square(static_cast<std::size_t>(n) * n, penalty);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (cost.allowed(r, c)) square[r * n + c] = cost(r, c) - lo;
    }
  }

  const std::vector<int> row_to_col = hungarian_square(square, n);
  for (std::size_t r = 0; r < rows; ++r) {
    const int c = row_to_col[r];
    if (c < 0 || static_cast<std::size_t>(c) >= cols) continue;
    if (!cost.allowed(r, static_cast<std::size_t>(c))) continue;
    result.pairs.emplace_back(r, static_cast<std::size_t>(c));
    result.total_cost += cost(r, static_cast<std::size_t>(c));
  }
  return result;
}

}  // namespace modcast
