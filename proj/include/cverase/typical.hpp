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

#ifndef CVERASE_TYPICAL_HPP
#define CVERASE_TYPICAL_HPP

#include <optional>
#include <stdexcept>

#include "cverase/entropy.hpp"
#include "cverase/exact.hpp"
#include "cverase/logreal.hpp"

namespace cverase {

class InfeasibleWindowError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Photon-number window of the typical subspace of N thermal modes:
/// total photon counts in [n_minus, n_plus] with
///   n_plus  = floor(N (nbar + delta/|log2 z2|)),
///   n_minus = ceil (N (nbar - delta/|log2 z2|)), clamped at 0.
/// m_minus / m_plus are the per-mode continuum values before rounding.
struct SectorWindow {
  int num_modes;
  double delta;
  long n_minus;
  long n_plus;
  double m_minus;
  double m_plus;
  SqueezeParams squeeze;
};

/// Builds the window; throws InfeasibleWindowError when rounding leaves
/// n_minus > n_plus. delta = 0 is accepted only when N*nbar is integral.
SectorWindow sector_window(int num_modes, double delta, const SqueezeParams& squeeze);

/// Window with explicitly pinned sector bounds (for oracles and sweeps).
SectorWindow window_from_bounds(int num_modes, long n_minus, long n_plus,
                                const SqueezeParams& squeeze);

// Dimension of the typical subspace: sum of sector ranks over the window,
// equal to C(n_plus + N, n_plus) - C(n_minus + N - 1, n_minus - 1).
BigNat dim_typical_exact(const SectorWindow& w);
LogReal dim_typical(const SectorWindow& w, long exact_crossover = 10'000);

// Dimension of the reduced typical subspace on M modes: C(n_plus + M, n_plus).
BigNat dim_reduced_exact(int modes, long n_plus);
LogReal dim_reduced(int modes, long n_plus);

/// Overlap of the N-fold thermal product state with the window projector.
double overlap_delta_full(const SectorWindow& w);

/// Overlap of K thermal modes with the reduced typical projector
/// (all totals up to n_plus): (1-z2)^K sum_{n<=n_plus} z2^n C(n+K-1, n).
double overlap_delta_reduced(int modes, long n_plus, double z2);
LogReal overlap_delta_reduced_log(int modes, long n_plus, double z2);

/// Purity of K projected thermal modes:
/// (1-z2)^{2K} sum z2^{2n} C(n+K-1, n) over [0, n_plus], or over
/// [*n_minus, n_plus] when the full-window variant is requested (K = N case).
double purity_beta(int modes, long n_plus, double z2, std::optional<long> n_minus = {});
LogReal purity_beta_log(int modes, long n_plus, double z2, std::optional<long> n_minus = {});

// alpha_X: d_A^2 times the purity of the X-mode marginal of the maximally
// mixed state on the window. Computed from the collapsed single-sum form
//   sum_m C(m+X-1, m) [C(n_plus-m+N-X, n_plus-m) - C(n_minus-m+N-X-1, n_minus-m-1)]^2
// with the second bracket term dropped when its lower index is negative.
BigNat alpha_exact_bignat(int sub_modes, const SectorWindow& w);
BigNat alpha_exact_bignat(int sub_modes, int num_modes, long n_minus, long n_plus);
LogReal alpha_exact(int sub_modes, const SectorWindow& w, long exact_crossover = 10'000);

/// Maximizer of r^{2 m_plus} (1+r)^x (1-r)^{2-x} on (0, 1).
double r_opt(double x, double m_plus);

/// Contour bound on alpha_X at radii (r, s), with n_plus = m_plus * N:
/// (rs)^{-n_plus} (1-rs)^{-X} ((1-r)(1-s))^{-(N-X)} / ((1-rs)(1-r)(1-s)).
LogReal alpha_bound(int sub_modes, int num_modes, double m_plus, double r, double s);

/// Per-mode exponent of the bound at r = s = r_opt(x, m_plus):
/// -[m_plus log2 r^2 + x log2(1-r^2) + 2(1-x) log2(1-r)].
double alpha_bound_exact_exponent(double x, double m_plus);

/// High-energy limit of the same exponent:
/// (2-x) H_therm(m_plus) + 2(1-x) - (2-x) log2(2-x).
double alpha_bound_high_energy_exponent(double x, double m_plus);

/// Per-mode exponent of d_X d_Y / d_A for the split x + y = 1. The
/// -m log2 m term is required for the H2(x) high-energy asymptote; the
/// expression expands (m+z) H2(m/(m+z)) for z in {x, y} minus the z = 1 case.
double submult_exponent(double x, double m_plus);

}  // namespace cverase

#endif
