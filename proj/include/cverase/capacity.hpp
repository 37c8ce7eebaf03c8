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

#ifndef CVERASE_CAPACITY_HPP
#define CVERASE_CAPACITY_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "cverase/entropy.hpp"

namespace cverase {

// Closed-form capacities of the flagged CV erasure channel
// L_p[rho] = (1-p) rho + p |0,erased><0,erased| under a uniform energy
// constraint with mean photon number nbar, plus the d-dimensional DV
// references they are compared against.

inline void check_erasure_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("erasure probability must be in [0, 1]");
}

/// Unassisted quantum capacity: max{(1 - 2p) H_therm(nbar), 0}.
/// Clamped at zero below threshold; the channel is antidegradable past p = 1/2.
inline double q_standard(double p, double nbar) {
  check_erasure_prob(p);
  return std::max((1.0 - 2.0 * p) * h_therm(nbar), 0.0);
}

/// Entanglement-assisted quantum capacity: (1 - p) H_therm(nbar).
/// Never negative, so no clamp.
inline double q_ea(double p, double nbar) {
  check_erasure_prob(p);
  return (1.0 - p) * h_therm(nbar);
}

/// Entanglement-assisted classical capacity, exactly 2 q_ea.
inline double c_ea_classical(double p, double nbar) { return 2.0 * q_ea(p, nbar); }

/// DV erasure-channel quantum capacity for local dimension d.
inline double q_dv(double p, int d) {
  check_erasure_prob(p);
  if (d < 2) throw std::domain_error("q_dv: need d >= 2");
  return std::max((1.0 - 2.0 * p) * std::log2(static_cast<double>(d)), 0.0);
}

/// DV entanglement-assisted quantum capacity for local dimension d.
inline double q_dv_ea(double p, int d) {
  check_erasure_prob(p);
  if (d < 2) throw std::domain_error("q_dv_ea: need d >= 2");
  return (1.0 - p) * std::log2(static_cast<double>(d));
}

/// Coherent information of the erasure channel for a number-diagonal input
/// with the given spectrum: (1 - 2p) H(spectrum). Negative past p = 1/2.
inline double coherent_info_erasure_diag(std::span<const double> spectrum, double p) {
  check_erasure_prob(p);
  double norm = 0.0;
  double entropy = 0.0;
  for (double lambda : spectrum) {
    if (lambda < 0.0) throw std::domain_error("coherent_info_erasure_diag: negative weight");
    norm += lambda;
    if (lambda > 0.0) entropy -= lambda * std::log2(lambda);
  }
  if (std::fabs(norm - 1.0) > 1e-10)
    throw std::domain_error("coherent_info_erasure_diag: spectrum not normalized");
  return (1.0 - 2.0 * p) * entropy;
}

}  // namespace cverase

#endif
