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

#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace modcast {

/// Dense row-major cost matrix. Entries equal to kForbidden may not be assigned.
class CostMatrix {
 public:
  static constexpr double kForbidden = std::numeric_limits<double>::infinity();

  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = kForbidden)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  bool allowed(std::size_t r, std::size_t c) const { return (*this)(r, c) != kForbidden; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< (row, col), sorted by row
  double total_cost = 0.0;
};

/**
 * Exact rectangular assignment over the allowed entries of `cost`.
 *
 * The objective is lexicographic: first the number of assigned pairs is
 * maximized, then the summed cost of those pairs is minimized. Solved with the
 * O(n^3) Hungarian (Kuhn-Munkres) method on a square matrix where forbidden and
 * padding cells carry a penalty larger than any feasible cost difference.
 */
Assignment solve_assignment(const CostMatrix& cost);

}  // namespace modcast
