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

#ifndef CVERASE_MC_HAAR_HPP
#define CVERASE_MC_HAAR_HPP

#include "cverase/mc/fock.hpp"
#include "cverase/mc/rng.hpp"

namespace cverase::mc {

/// Haar-distributed d x d unitary: complex Ginibre sample, QR, then the
/// R-diagonal phase correction. Without the phase fix the distribution is
/// biased toward the QR convention, which the moment tests would catch.
Matrix haar_unitary(int dim, RngStream& rng);

/// Permanent of a small dense complex matrix (Ryser, Gray-coded), n <= 12.
std::complex<double> permanent(const Matrix& a);

/// Action of an N x N mode unitary on the n-photon sector, ordered as
/// FockBasis({n}): <x|lift|y> = per(U[x, y]) / sqrt(prod x_i! prod y_j!)
/// with U[x, y] the row/column-repeated submatrix.
Matrix sym_lift(const Matrix& mode_unitary, int photons);

}  // namespace cverase::mc

#endif
