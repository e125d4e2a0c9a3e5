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

#include "wavechar/graph.hpp"
#include "wavechar/matrix.hpp"

namespace wavechar {

/// Result of a symmetric eigendecomposition M = U diag(lambda) U^T.
/// Eigenvalues are sorted ascending; column i of `eigenvectors` pairs with
/// eigenvalues[i]; U is orthonormal.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Heat-diffusion wavelet coefficients for one graph. Entry (j,i) is the
/// energy arriving at node i from node j; column i is node i's energy
/// distribution over the graph. The matrix is exactly symmetric, entrywise
/// nonnegative up to round-off, and every column sums to 1.
struct WaveletMatrix {
  std::size_t order = 0;
  double tau = 0.0;
  std::vector<double> entries;  // row-major, exactly symmetric

  double at(std::size_t j, std::size_t i) const {
    return entries[j * order + i];
  }
  /// Column i (equals row i by symmetry).
  const double* column(std::size_t i) const {
    return entries.data() + i * order;
  }
};

/// Dense symmetric eigendecomposition. Deterministic for a fixed input.
/// Throws NumericError if the solver fails to converge.
EigenDecomposition symmetric_eigendecomposition(const SymmetricMatrix& m);

/// Wavelet coefficient matrix Psi = U diag(e^{-tau*lambda_1}, ...) U^T where
/// U, lambda come from the graph Laplacian. tau > 0 scales the heat kernel.
WaveletMatrix heat_wavelets(const Graph& g, double tau);

/// exp(t*M) by scaling-and-squaring with a truncated Taylor series.
/// Independent of the eigendecomposition path; intended as a test oracle for
/// heat_wavelets on matrices of moderate order.
Matrix matrix_exponential_oracle(const SymmetricMatrix& m, double t);

}  // namespace wavechar
