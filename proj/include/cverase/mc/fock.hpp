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

#ifndef CVERASE_MC_FOCK_HPP
#define CVERASE_MC_FOCK_HPP

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "cverase/combinatorics.hpp"

namespace cverase::mc {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Explicit Fock-basis index over a list of photon-number sectors of N
/// modes. Basis states are ordered by (sector, colex composition); the
/// ordinal <-> composition bijection round-trips exactly.
class FockBasis {
 public:
  FockBasis(int num_modes, std::vector<long> sectors);

  /// All totals from n_lo to n_hi inclusive.
  static FockBasis window(int num_modes, long n_lo, long n_hi);

  int num_modes() const { return num_modes_; }
  int dim() const { return static_cast<int>(states_.size()); }
  const std::vector<long>& sectors() const { return sectors_; }
  const Composition& state(int ordinal) const { return states_[ordinal]; }
  long total(int ordinal) const { return totals_[ordinal]; }
  int index(const Composition& c) const;  // -1 when absent

  /// Ordinal range [first, past_end) of one sector's states.
  std::pair<int, int> sector_range(long n) const;

 private:
  int num_modes_;
  std::vector<long> sectors_;
  std::vector<Composition> states_;
  std::vector<long> totals_;
  std::map<Composition, int> index_;
};

/// Dense operator over an explicit FockBasis.
struct FockOperator {
  const FockBasis* basis = nullptr;
  Matrix mat;

  bool is_unitary(double tol = 1e-10) const;
  bool is_hermitian(double tol = 1e-10) const;
};

/// Splits each basis state of `full` into (kept modes, other modes) and
/// traces the others out: rho_kept = sum over configurations of the others.
Matrix partial_trace(const Matrix& rho, const FockBasis& full,
                     const std::vector<int>& keep_modes, const FockBasis& kept_basis);

}  // namespace cverase::mc

#endif
