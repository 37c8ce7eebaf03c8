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

#ifndef CVERASE_ENTROPY_HPP
#define CVERASE_ENTROPY_HPP

#include <cmath>
#include <stdexcept>

namespace cverase {

// All entropies in this project are in bits (base-2 logs throughout).

/// Binary entropy H2(x); the x = 0, 1 limits are taken exactly.
inline double h2(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("h2: need x in [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// Entropy of a single-mode thermal state with mean photon number nbar:
/// (nbar+1) log2(nbar+1) - nbar log2(nbar), with h_therm(0) = 0.
inline double h_therm(double nbar) {
  if (!(nbar >= 0.0)) throw std::domain_error("h_therm: need nbar >= 0");
  if (nbar == 0.0) return 0.0;
  return (nbar + 1.0) * std::log2(nbar + 1.0) - nbar * std::log2(nbar);
}

/// Squeezing magnitude |z|^2 and the mean photon number it induces,
/// nbar = z2 / (1 - z2). Both are stored so either parametrization is
/// available without conversion drift.
struct SqueezeParams {
  double z2;
  double nbar;

  static SqueezeParams from_z2(double z2) {
    if (!(z2 >= 0.0 && z2 < 1.0)) throw std::domain_error("SqueezeParams: need z2 in [0, 1)");
    return {z2, z2 / (1.0 - z2)};
  }

  static SqueezeParams from_nbar(double nbar) {
    if (!(nbar >= 0.0)) throw std::domain_error("SqueezeParams: need nbar >= 0");
    return {nbar / (nbar + 1.0), nbar};
  }
};

/// Sample entropy of a Fock string with x_tot photons over N modes of a
/// thermal product state: -log2(1 - z2) - (x_tot / N) log2(z2).
inline double sample_entropy(long x_tot, long num_modes, double z2) {
  if (num_modes < 1) throw std::domain_error("sample_entropy: need N >= 1");
  if (!(z2 > 0.0 && z2 < 1.0)) throw std::domain_error("sample_entropy: need z2 in (0, 1)");
  return -std::log2(1.0 - z2) -
         (static_cast<double>(x_tot) / static_cast<double>(num_modes)) * std::log2(z2);
}

}  // namespace cverase

#endif
