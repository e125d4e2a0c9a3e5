/* Copyright 2026 The wavechar Authors.

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
#include <vector>

namespace wavechar {

/// Dense row-major matrix of doubles. Deliberately minimal: storage plus
/// bounds-unchecked element access; shape checks happen at module boundaries.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major, rows*cols entries

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  const double* row(std::size_t r) const { return data.data() + r * cols; }
  double* row(std::size_t r) { return data.data() + r * cols; }
};

/// Symmetric matrix with a single stored triangle, so entries(i,j) and
/// entries(j,i) are the same memory and equality holds exactly.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t order)
      : order_(order), packed_(order * (order + 1) / 2, 0.0) {}

  std::size_t order() const { return order_; }

  double at(std::size_t i, std::size_t j) const { return packed_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { packed_[index(i, j)] = v; }
  void add(std::size_t i, std::size_t j, double v) { packed_[index(i, j)] += v; }

  /// Expand into a full dense matrix (both triangles filled).
  Matrix to_dense() const {
    Matrix m(order_, order_);
    for (std::size_t i = 0; i < order_; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const double v = at(i, j);
        m.at(i, j) = v;
        m.at(j, i) = v;
      }
    return m;
  }

 private:
  static std::size_t tri(std::size_t i) { return i * (i + 1) / 2; }
  std::size_t index(std::size_t i, std::size_t j) const {
    return i >= j ? tri(i) + j : tri(j) + i;
  }

  std::size_t order_ = 0;
  std::vector<double> packed_;  // lower triangle, row by row
};

}  // namespace wavechar
