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

#ifndef CVERASE_PLON_HPP
#define CVERASE_PLON_HPP

#include <vector>

#include "cverase/logreal.hpp"

namespace cverase {

// Haar-averaged output of a passive linear optical network fed with K TMSV
// halves and N - K vacua. The average is block diagonal in total photon
// number: weight f(n) on every Fock string with n photons in total, where
//   f(n) = (1 - z2)^K z2^n C(n+K-1, n) / C(n+N-1, n),
// and C(n+N-1, n) f(n) sums to one.

double f_coeff(long n, int num_modes, int k_inputs, double z2);
double f_coeff_log2(long n, int num_modes, int k_inputs, double z2);

/// Smallest cutoff n_c whose included total-photon mass
/// sum_{n <= n_c} f(n) C(n+N-1, n) reaches target_mass. For K = 1 the mass
/// is geometric, 1 - z2^(n_c + 1).
long cutoff_for_mass(double z2, int k_inputs, int num_modes, double target_mass);

/// Single-mode marginal weight p(n) for K = 1, in closed form through 2F1.
double p_single(long n, int num_modes, double z2);

struct TruncatedValue {
  double value;
  double tail_bound;  // +inf when the ratio test is inconclusive at the cutoff
};

/// Single-mode marginal weight for general K by truncated double sum.
TruncatedValue p_single_general(long n, int num_modes, int k_inputs, double z2,
                                long cutoff_m);

/// Diagonal weight of a total-M Fock string in the K = 1 average state.
/// Depends on the string only through its total, and equals f(M): summing
/// it against the sector ranks C(M+N-1, M) returns exactly one.
double q_joint(long m_tot, int num_modes, double z2);

/// Coefficient of the m-photon sector projector in the M-mode reduced
/// average state, truncated at the given photon cutoff for the traced modes.
TruncatedValue avg_state_reduced_coeff(int sub_modes, int num_modes, int k_inputs,
                                       double z2, long m, long cutoff);

struct PlonSpectrum {
  int num_modes;
  int k_inputs;
  double z2;
  long cutoff;
  double mass;  // included total-photon mass at the cutoff
  struct Coeff {
    long n;
    double f;
    LogReal degeneracy;  // C(n+N-1, n)
  };
  std::vector<Coeff> coeffs;
};

PlonSpectrum plon_spectrum(int num_modes, int k_inputs, double z2, double target_mass);

/// Fidelity between the K = 1 average state and the tensor power of its
/// single-mode marginal, for all Fock strings with up to
/// cutoff_for_mass(target_mass) photons in total. Streams integer partitions
/// with at most N parts; every term is positive so the sum is monotone.
double fidelity_ansatz(int num_modes, double z2, double target_mass);

}  // namespace cverase

#endif
