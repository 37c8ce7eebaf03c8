/*
 * Copyright 2026 The cverase authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cverase/mc/haar.hpp"

#include <cmath>
#include <stdexcept>

namespace cverase::mc {

Matrix haar_unitary(int dim, RngStream& rng) {
  if (dim < 1) throw std::domain_error("haar_unitary: need d >= 1");
  Matrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0 ? d / mag : 1.0);
  }
  return q;
}

std::complex<double> permanent(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::domain_error("permanent: need a square matrix");
  if (n == 0) return 1.0;
  if (n > 12) throw std::domain_error("permanent: size budget is n <= 12");
  // Ryser with Gray-coded subset updates: per(A) = (-1)^n sum_S (-1)^|S| prod_i r_i(S).
  std::vector<std::complex<double>> row_sums(n, 0.0);
  std::complex<double> total = 0.0;
  std::uint32_t gray = 0;
  int popcount = 0;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t k = 1; k < limit; ++k) {
    const std::uint32_t next = k ^ (k >> 1);
    const std::uint32_t changed = next ^ gray;
    int col = 0;
    while (!((changed >> col) & 1u)) ++col;
    const bool added = next & changed;
    popcount += added ? 1 : -1;
    for (int i = 0; i < n; ++i)
      row_sums[i] += added ? a(i, col) : -a(i, col);
    gray = next;
    std::complex<double> prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= row_sums[i];
    total += ((n - popcount) % 2 == 0) ? prod : -prod;
  }
  return total;
}

Matrix sym_lift(const Matrix& mode_unitary, int photons) {
  const int N = static_cast<int>(mode_unitary.rows());
  if (mode_unitary.cols() != N) throw std::domain_error("sym_lift: need a square unitary");
  if (photons < 0) throw std::domain_error("sym_lift: need n >= 0");
  if (photons > 10) throw std::domain_error("sym_lift: permanent budget is n <= 10");

  const FockBasis basis(N, {photons});
  const int D = basis.dim();
  Matrix lift(D, D);
  if (photons == 0) {
    lift(0, 0) = 1.0;
    return lift;
  }

  std::vector<std::vector<int>> mode_list(D);
  std::vector<double> inv_sqrt_fact(D);
  for (int i = 0; i < D; ++i) {
    double fact = 1.0;
    for (int m = 0; m < N; ++m) {
      const int reps = basis.state(i)[m];
      for (int r = 0; r < reps; ++r) mode_list[i].push_back(m);
      for (int r = 2; r <= reps; ++r) fact *= r;
    }
    inv_sqrt_fact[i] = 1.0 / std::sqrt(fact);
  }

  Matrix sub(photons, photons);
  for (int col = 0; col < D; ++col) {
    for (int row = 0; row < D; ++row) {
      for (int i = 0; i < photons; ++i)
        for (int j = 0; j < photons; ++j)
          sub(i, j) = mode_unitary(mode_list[row][i], mode_list[col][j]);
      lift(row, col) = permanent(sub) * inv_sqrt_fact[row] * inv_sqrt_fact[col];
    }
  }
  return lift;
}

}  // namespace cverase::mc
