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

#include "cverase/plon.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cverase/combinatorics.hpp"
#include "cverase/hyp2f1.hpp"
#include "cverase/ksum.hpp"

namespace cverase {

namespace {

void check_plon_params(int num_modes, int k_inputs, double z2) {
  if (num_modes < 1) throw std::domain_error("plon: need N >= 1");
  if (k_inputs < 0 || k_inputs > num_modes) throw std::domain_error("plon: need 0 <= K <= N");
  if (!(z2 > 0.0 && z2 < 1.0)) throw std::domain_error("plon: need z2 in (0, 1)");
}

}  // namespace

double f_coeff_log2(long n, int num_modes, int k_inputs, double z2) {
  check_plon_params(num_modes, k_inputs, z2);
  if (n < 0) throw std::domain_error("f_coeff: need n >= 0");
  double lg = k_inputs * std::log2(1.0 - z2) + n * std::log2(z2);
  if (k_inputs >= 1) lg += log2_binomial(n + k_inputs - 1, n);
  // K = 0 feeds only vacua: f(n) collapses to the n = 0 point mass.
  else if (n > 0) return -std::numeric_limits<double>::infinity();
  lg -= log2_binomial(n + num_modes - 1, n);
  return lg;
}

double f_coeff(long n, int num_modes, int k_inputs, double z2) {
  const double lg = f_coeff_log2(n, num_modes, k_inputs, z2);
  return std::isinf(lg) ? 0.0 : std::exp2(lg);
}

long cutoff_for_mass(double z2, int k_inputs, int num_modes, double target_mass) {
  check_plon_params(num_modes, k_inputs, z2);
  if (!(target_mass > 0.0 && target_mass < 1.0))
    throw std::domain_error("cutoff_for_mass: need target in (0, 1)");
  if (k_inputs == 0) return 0;
  // mass(n_c) = (1-z2)^K sum_{n <= n_c} z2^n C(n+K-1, n); geometric for K = 1.
  constexpr long kMaxCutoff = 10'000'000;
  double lg_term = k_inputs * std::log2(1.0 - z2);
  KahanAccumulator mass;
  for (long n = 0; n <= kMaxCutoff; ++n) {
    mass.add(std::exp2(lg_term));
    if (mass.total() >= target_mass) return n;
    lg_term += std::log2(z2) +
               std::log2(static_cast<double>(n + k_inputs) / static_cast<double>(n + 1));
  }
  throw std::runtime_error("cutoff_for_mass: target not reached within budget");
}

double p_single(long n, int num_modes, double z2) {
  check_plon_params(num_modes, 1, z2);
  if (n < 0) throw std::domain_error("p_single: need n >= 0");
  const double lg = std::log2(1.0 - z2) + n * std::log2(z2) -
                    log2_binomial(n + num_modes - 1, n);
  return std::exp2(lg) * gauss_2f1(n + 1.0, num_modes - 1.0, n + num_modes, z2);
}

TruncatedValue p_single_general(long n, int num_modes, int k_inputs, double z2,
                                long cutoff_m) {
  check_plon_params(num_modes, k_inputs, z2);
  if (k_inputs < 1) throw std::domain_error("p_single_general: need K >= 1");
  if (n < 0 || cutoff_m < 0) throw std::domain_error("p_single_general: bad arguments");
  const int N = num_modes;
  const int K = k_inputs;
  // term(m) = (1-z2)^K z2^(n+m) C(m+N-2, m) C(n+m+K-1, n+m) / C(n+m+N-1, n+m)
  double lg = K * std::log2(1.0 - z2) + n * std::log2(z2) +
              log2_binomial(n + K - 1, n) - log2_binomial(n + N - 1, n);
  KahanAccumulator sum;
  for (long m = 0;; ++m) {
    sum.add(std::exp2(lg));
    if (m == cutoff_m) break;
    lg += std::log2(z2) +
          std::log2(static_cast<double>(m + N - 1) / static_cast<double>(m + 1)) +
          std::log2(static_cast<double>(n + m + K) / static_cast<double>(n + m + N));
  }
  // One step past the cutoff plus a geometric ratio cap gives the tail bound.
  const long m1 = cutoff_m + 1;
  const double lg_next =
      lg + std::log2(z2) +
      std::log2(static_cast<double>(cutoff_m + N - 1) / static_cast<double>(cutoff_m + 1)) +
      std::log2(static_cast<double>(n + cutoff_m + K) / static_cast<double>(n + cutoff_m + N));
  const double ratio_cap = z2 * static_cast<double>(m1 + N - 1) / static_cast<double>(m1 + 1);
  double tail = std::numeric_limits<double>::infinity();
  if (ratio_cap < 1.0) tail = std::exp2(lg_next) / (1.0 - ratio_cap);
  return {sum.total(), tail};
}

double q_joint(long m_tot, int num_modes, double z2) {
  if (m_tot < 0) throw std::domain_error("q_joint: need m_tot >= 0");
  return f_coeff(m_tot, num_modes, 1, z2);
}

TruncatedValue avg_state_reduced_coeff(int sub_modes, int num_modes, int k_inputs,
                                       double z2, long m, long cutoff) {
  check_plon_params(num_modes, k_inputs, z2);
  if (sub_modes < 1 || sub_modes >= num_modes)
    throw std::domain_error("avg_state_reduced_coeff: need 1 <= M < N");
  if (k_inputs < 1) throw std::domain_error("avg_state_reduced_coeff: need K >= 1");
  if (m < 0 || cutoff < 0) throw std::domain_error("avg_state_reduced_coeff: bad arguments");
  const int N = num_modes;
  const int M = sub_modes;
  const int K = k_inputs;
  // term(j) with n = m + j:
  //   (1-z2)^K z2^(m+j) C(m+j+K-1, m+j) C(j+N-M-1, j) / C(m+j+N-1, m+j)
  double lg = K * std::log2(1.0 - z2) + m * std::log2(z2) +
              log2_binomial(m + K - 1, m) - log2_binomial(m + N - 1, m);
  KahanAccumulator sum;
  for (long j = 0;; ++j) {
    sum.add(std::exp2(lg));
    if (j == cutoff) break;
    lg += std::log2(z2) +
          std::log2(static_cast<double>(m + j + K) / static_cast<double>(m + j + 1)) +
          std::log2(static_cast<double>(j + N - M) / static_cast<double>(j + 1)) +
          std::log2(static_cast<double>(m + j + 1) / static_cast<double>(m + j + N));
  }
  const long j1 = cutoff + 1;
  const double lg_next =
      lg + std::log2(z2) +
      std::log2(static_cast<double>(m + cutoff + K) / static_cast<double>(m + cutoff + 1)) +
      std::log2(static_cast<double>(cutoff + N - M) / static_cast<double>(cutoff + 1)) +
      std::log2(static_cast<double>(m + cutoff + 1) / static_cast<double>(m + cutoff + N));
  const double ratio_cap = z2 * static_cast<double>(j1 + N - M) / static_cast<double>(j1 + 1);
  double tail = std::numeric_limits<double>::infinity();
  if (ratio_cap < 1.0) tail = std::exp2(lg_next) / (1.0 - ratio_cap);
  return {sum.total(), tail};
}

PlonSpectrum plon_spectrum(int num_modes, int k_inputs, double z2, double target_mass) {
  const long cutoff = cutoff_for_mass(z2, k_inputs, num_modes, target_mass);
  PlonSpectrum spec{num_modes, k_inputs, z2, cutoff, 0.0, {}};
  KahanAccumulator mass;
  for (long n = 0; n <= cutoff; ++n) {
    const LogReal deg = log_binomial(n + num_modes - 1, n);
    const double f = f_coeff(n, num_modes, k_inputs, z2);
    spec.coeffs.push_back({n, f, deg});
    mass.add(std::exp2(f_coeff_log2(n, num_modes, k_inputs, z2) + deg.log2_abs()));
  }
  spec.mass = mass.total();
  return spec;
}

double fidelity_ansatz(int num_modes, double z2, double target_mass) {
  check_plon_params(num_modes, 1, z2);
  const int N = num_modes;
  const long n_cut = cutoff_for_mass(z2, 1, N, target_mass);

  // The 2F1 values behind p(v) recur across the partition stream; memoize
  // every photon count up to the cutoff once.
  std::vector<double> lg_p(n_cut + 1);
  for (long v = 0; v <= n_cut; ++v) lg_p[v] = std::log2(p_single(v, N, z2));
  std::vector<double> lg_f(n_cut + 1);
  for (long n = 0; n <= n_cut; ++n) lg_f[n] = f_coeff_log2(n, N, 1, z2);
  std::vector<double> lg_fact(static_cast<size_t>(N) + 1);
  for (long k = 0; k <= N; ++k) lg_fact[k] = std::lgamma(k + 1.0) / std::log(2.0);

  // Per-sector partial sums merged in ascending n; each term is positive.
  KahanAccumulator fid;
  for (long n = 0; n <= n_cut; ++n) {
    KahanAccumulator sector;
    const int max_parts = static_cast<int>(std::min<long>(n == 0 ? 1 : n, N));
    for (const PartitionMult& part :
         BoundedPartitionRange(static_cast<int>(n), max_parts)) {
      const int m0 = N - part.num_parts;
      double lg_mult = lg_fact[N] - lg_fact[m0];
      double lg_state = lg_f[n] + m0 * lg_p[0];
      for (const auto& [value, mult] : part.parts) {
        lg_mult -= lg_fact[mult];
        lg_state += mult * lg_p[value];
      }
      sector.add(std::exp2(lg_mult + 0.5 * lg_state));
    }
    fid.add(sector.total());
  }
  return fid.total();
}

}  // namespace cverase
