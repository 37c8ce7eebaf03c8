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

#include "cverase/mc/fock.hpp"

#include <stdexcept>

namespace cverase::mc {

FockBasis::FockBasis(int num_modes, std::vector<long> sectors)
    : num_modes_(num_modes), sectors_(std::move(sectors)) {
  if (num_modes < 1) throw std::domain_error("FockBasis: need N >= 1");
  for (long n : sectors_) {
    if (n < 0) throw std::domain_error("FockBasis: negative sector");
    for (const Composition& c : CompositionRange(static_cast<int>(n), num_modes)) {
      index_.emplace(c, static_cast<int>(states_.size()));
      states_.push_back(c);
      totals_.push_back(n);
    }
  }
}

FockBasis FockBasis::window(int num_modes, long n_lo, long n_hi) {
  if (n_lo < 0 || n_lo > n_hi) throw std::domain_error("FockBasis::window: bad bounds");
  std::vector<long> sectors;
  for (long n = n_lo; n <= n_hi; ++n) sectors.push_back(n);
  return FockBasis(num_modes, std::move(sectors));
}

int FockBasis::index(const Composition& c) const {
  const auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

std::pair<int, int> FockBasis::sector_range(long n) const {
  int first = -1;
  int past = dim();
  for (int i = 0; i < dim(); ++i) {
    if (totals_[i] == n) {
      if (first < 0) first = i;
    } else if (first >= 0) {
      past = i;
      break;
    }
  }
  if (first < 0) throw std::domain_error("FockBasis: sector not present");
  return {first, past};
}

bool FockOperator::is_unitary(double tol) const {
  const Matrix id = Matrix::Identity(mat.rows(), mat.cols());
  return (mat.adjoint() * mat - id).cwiseAbs().maxCoeff() <= tol;
}

bool FockOperator::is_hermitian(double tol) const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix partial_trace(const Matrix& rho, const FockBasis& full,
                     const std::vector<int>& keep_modes, const FockBasis& kept_basis) {
  if (rho.rows() != full.dim() || rho.cols() != full.dim())
    throw std::domain_error("partial_trace: operator/basis mismatch");
  std::vector<bool> keep(full.num_modes(), false);
  for (int m : keep_modes) keep.at(m) = true;

  // Per basis state: ordinal in the kept basis and the traced-out remainder.
  const int D = full.dim();
  std::vector<int> kept_ordinal(D);
  std::vector<Composition> rest(D);
  for (int i = 0; i < D; ++i) {
    Composition k, r;
    const Composition& c = full.state(i);
    for (int m = 0; m < full.num_modes(); ++m) (keep[m] ? k : r).push_back(c[m]);
    kept_ordinal[i] = kept_basis.index(k);
    if (kept_ordinal[i] < 0) throw std::domain_error("partial_trace: kept basis too small");
    rest[i] = std::move(r);
  }

  Matrix out = Matrix::Zero(kept_basis.dim(), kept_basis.dim());
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      if (rest[i] == rest[j]) out(kept_ordinal[i], kept_ordinal[j]) += rho(i, j);
  return out;
}

}  // namespace cverase::mc
