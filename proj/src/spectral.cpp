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
#include "wavechar/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wavechar/errors.hpp"

namespace wavechar {

EigenDecomposition symmetric_eigendecomposition(const SymmetricMatrix& m) {
  const std::size_t n = m.order();
  EigenDecomposition result;
  result.eigenvalues.resize(n);
  result.eigenvectors = Matrix(n, n);
  if (n == 0) return result;

  Eigen::MatrixXd dense(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = m.at(i, j);
      if (!std::isfinite(v))
        throw InputError("eigendecomposition: non-finite entry at (" +
                         std::to_string(i) + "," + std::to_string(j) + ")");
      dense(i, j) = v;
      dense(j, i) = v;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) {
    // Residual of whatever partial factorization came back, for diagnostics.
    double residual = std::numeric_limits<double>::quiet_NaN();
    if (solver.eigenvectors().allFinite() && solver.eigenvalues().allFinite()) {
      residual = (solver.eigenvectors() *
                      solver.eigenvalues().asDiagonal() *
                      solver.eigenvectors().transpose() -
                  dense)
                     .cwiseAbs()
                     .maxCoeff();
    }
    throw NumericError(
        "eigendecomposition failed to converge (order " + std::to_string(n) +
        ", reconstruction residual " + std::to_string(residual) + ")");
  }

  for (std::size_t i = 0; i < n; ++i)
    result.eigenvalues[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      result.eigenvectors.at(r, c) = solver.eigenvectors()(
          static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return result;
}

WaveletMatrix heat_wavelets(const Graph& g, double tau) {
  if (!(tau > 0.0)) throw InputError("heat_wavelets: tau must be > 0");
  const std::size_t n = static_cast<std::size_t>(g.num_nodes());

  const EigenDecomposition eig = symmetric_eigendecomposition(laplacian(g));

  Eigen::MatrixXd u(n, n);
  Eigen::VectorXd filtered(n);
  for (std::size_t i = 0; i < n; ++i) {
    filtered(static_cast<Eigen::Index>(i)) = std::exp(-tau * eig.eigenvalues[i]);
    for (std::size_t r = 0; r < n; ++r)
      u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
          eig.eigenvectors.at(r, i);
  }
  Eigen::MatrixXd psi = u * filtered.asDiagonal() * u.transpose();

  WaveletMatrix w;
  w.order = n;
  w.tau = tau;
  w.entries.resize(n * n);
  // Average the two triangles so symmetry holds exactly, not just to
  // round-off.
  for (std::size_t i = 0; i < n; ++i) {
    w.entries[i * n + i] = psi(static_cast<Eigen::Index>(i),
                               static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < i; ++j) {
      const double v = 0.5 * (psi(static_cast<Eigen::Index>(i),
                                  static_cast<Eigen::Index>(j)) +
                              psi(static_cast<Eigen::Index>(j),
                                  static_cast<Eigen::Index>(i)));
      w.entries[i * n + j] = v;
      w.entries[j * n + i] = v;
    }
  }
  return w;
}

namespace {

// C = A * B for square row-major matrices.
Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows;
  Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      const double* brow = b.row(k);
      double* crow = c.row(i);
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

double max_abs_row_sum(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) s += std::abs(m.at(i, j));
    worst = std::max(worst, s);
  }
  return worst;
}

}  // namespace

Matrix matrix_exponential_oracle(const SymmetricMatrix& m, double t) {
  const std::size_t n = m.order();
  Matrix scaled = m.to_dense();
  for (double& v : scaled.data) v *= t;

  // Scale until the norm is at most 1/2, exponentiate by Taylor series, then
  // square back up.
  const double norm = max_abs_row_sum(scaled);
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm)) + 1);
    const double factor = std::ldexp(1.0, -squarings);
    for (double& v : scaled.data) v *= factor;
  }

  Matrix result(n, n);
  for (std::size_t i = 0; i < n; ++i) result.at(i, i) = 1.0;
  Matrix term = result;
  for (int k = 1; k <= 40; ++k) {
    term = multiply(term, scaled);
    const double inv_k = 1.0 / static_cast<double>(k);
    double term_norm = 0.0;
    for (std::size_t idx = 0; idx < term.data.size(); ++idx) {
      term.data[idx] *= inv_k;
      term_norm = std::max(term_norm, std::abs(term.data[idx]));
      result.data[idx] += term.data[idx];
    }
    if (term_norm < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) result = multiply(result, result);
  return result;
}

}  // namespace wavechar
