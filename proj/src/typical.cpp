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

#include "cverase/typical.hpp"

#include <cmath>

#include "cverase/combinatorics.hpp"
#include "cverase/ksum.hpp"

namespace cverase {

namespace {
constexpr double kRoundGuard = 1e-9;
}

SectorWindow sector_window(int num_modes, double delta, const SqueezeParams& squeeze) {
  if (num_modes < 1) throw std::domain_error("sector_window: need N >= 1");
  if (delta < 0.0) throw std::domain_error("sector_window: need delta >= 0");
  if (!(squeeze.z2 > 0.0 && squeeze.z2 < 1.0))
    throw std::domain_error("sector_window: need 0 < z2 < 1");

  const double spread = delta / std::fabs(std::log2(squeeze.z2));
  const double m_plus = squeeze.nbar + spread;
  const double m_minus = squeeze.nbar - spread;
  const double N = static_cast<double>(num_modes);

  long n_plus = static_cast<long>(std::floor(N * m_plus + kRoundGuard));
  long n_minus = static_cast<long>(std::ceil(N * m_minus - kRoundGuard));
  if (n_minus < 0) n_minus = 0;
  if (n_minus > n_plus)
    throw InfeasibleWindowError("sector_window: rounding gap leaves n_minus > n_plus");

  return SectorWindow{num_modes, delta, n_minus, n_plus, m_minus, m_plus, squeeze};
}

SectorWindow window_from_bounds(int num_modes, long n_minus, long n_plus,
                                const SqueezeParams& squeeze) {
  if (num_modes < 1 || n_minus < 0 || n_minus > n_plus)
    throw InfeasibleWindowError("window_from_bounds: invalid bounds");
  const double N = static_cast<double>(num_modes);
  return SectorWindow{num_modes, -1.0, n_minus, n_plus,
                      static_cast<double>(n_minus) / N,
                      static_cast<double>(n_plus) / N, squeeze};
}

BigNat dim_typical_exact(const SectorWindow& w) {
  const unsigned long N = static_cast<unsigned long>(w.num_modes);
  BigNat d = binomial_exact(w.n_plus + N, w.n_plus);
  if (w.n_minus >= 1) d -= binomial_exact(w.n_minus + N - 1, w.n_minus - 1);
  return d;
}

LogReal dim_typical(const SectorWindow& w, long exact_crossover) {
  if (w.n_plus + w.num_modes <= exact_crossover) return to_logreal(dim_typical_exact(w));
  const unsigned long N = static_cast<unsigned long>(w.num_modes);
  LogReal d = log_binomial(w.n_plus + N, w.n_plus);
  if (w.n_minus >= 1) d -= log_binomial(w.n_minus + N - 1, w.n_minus - 1);
  return d;
}

BigNat dim_reduced_exact(int modes, long n_plus) {
  if (modes < 1 || n_plus < 0) throw std::domain_error("dim_reduced: need M >= 1, n_plus >= 0");
  return binomial_exact(n_plus + static_cast<unsigned long>(modes), n_plus);
}

LogReal dim_reduced(int modes, long n_plus) {
  if (modes < 1 || n_plus < 0) throw std::domain_error("dim_reduced: need M >= 1, n_plus >= 0");
  return log_binomial(n_plus + static_cast<unsigned long>(modes), n_plus);
}

namespace {

// sum over n in [lo, hi] of base^n C(n + modes - 1, n), carrying the overall
// log2 prefactor. Multiplicative recurrence on the binomial keeps this O(hi).
LogReal windowed_negbin_sum(int modes, long lo, long hi, double log2_base,
                            double log2_prefactor) {
  double lg_term = log2_prefactor + static_cast<double>(lo) * log2_base +
                   log2_binomial(lo + modes - 1, lo);
  LogReal sum = LogReal::zero();
  for (long n = lo;; ++n) {
    sum += LogReal::from_log2(lg_term);
    if (n == hi) break;
    lg_term += log2_base +
               std::log2(static_cast<double>(n + modes) / static_cast<double>(n + 1));
  }
  return sum;
}

}  // namespace

double overlap_delta_full(const SectorWindow& w) {
  const double z2 = w.squeeze.z2;
  return windowed_negbin_sum(w.num_modes, w.n_minus, w.n_plus, std::log2(z2),
                             w.num_modes * std::log2(1.0 - z2))
      .to_double();
}

LogReal overlap_delta_reduced_log(int modes, long n_plus, double z2) {
  if (modes < 1 || n_plus < 0)
    throw std::domain_error("overlap_delta_reduced: need K >= 1, n_plus >= 0");
  if (!(z2 > 0.0 && z2 < 1.0)) throw std::domain_error("overlap_delta_reduced: need z2 in (0,1)");
  // Trace of a normalized K-mode thermal state against the reduced projector,
  // so the prefactor exponent is K (not the 2K sometimes quoted): the
  // n_plus -> infinity limit must be exactly 1.
  return windowed_negbin_sum(modes, 0, n_plus, std::log2(z2), modes * std::log2(1.0 - z2));
}

double overlap_delta_reduced(int modes, long n_plus, double z2) {
  return overlap_delta_reduced_log(modes, n_plus, z2).to_double();
}

LogReal purity_beta_log(int modes, long n_plus, double z2, std::optional<long> n_minus) {
  if (modes < 1 || n_plus < 0) throw std::domain_error("purity_beta: need K >= 1, n_plus >= 0");
  if (!(z2 > 0.0 && z2 < 1.0)) throw std::domain_error("purity_beta: need z2 in (0,1)");
  const long lo = n_minus.value_or(0);
  if (lo < 0 || lo > n_plus) throw std::domain_error("purity_beta: bad window");
  return windowed_negbin_sum(modes, lo, n_plus, 2.0 * std::log2(z2),
                             2.0 * modes * std::log2(1.0 - z2));
}

double purity_beta(int modes, long n_plus, double z2, std::optional<long> n_minus) {
  return purity_beta_log(modes, n_plus, z2, n_minus).to_double();
}

BigNat alpha_exact_bignat(int sub_modes, int num_modes, long n_minus, long n_plus) {
  const int N = num_modes;
  const int X = sub_modes;
  if (X < 1 || X >= N) throw std::domain_error("alpha_exact: need 1 <= X < N");
  if (n_minus < 0 || n_minus > n_plus) throw std::domain_error("alpha_exact: bad window");
  BigNat total = 0;
  for (long m = 0; m <= n_plus; ++m) {
    BigNat bracket = binomial_exact(n_plus - m + N - X, n_plus - m);
    if (n_minus - m - 1 >= 0)
      bracket -= binomial_exact(n_minus - m + N - X - 1, n_minus - m - 1);
    total += binomial_exact(m + X - 1, m) * bracket * bracket;
  }
  return total;
}

BigNat alpha_exact_bignat(int sub_modes, const SectorWindow& w) {
  return alpha_exact_bignat(sub_modes, w.num_modes, w.n_minus, w.n_plus);
}

LogReal alpha_exact(int sub_modes, const SectorWindow& w, long exact_crossover) {
  const int N = w.num_modes;
  const int X = sub_modes;
  if (X < 1 || X >= N) throw std::domain_error("alpha_exact: need 1 <= X < N");
  if (w.n_plus + N <= exact_crossover) return to_logreal(alpha_exact_bignat(X, w));

  // Log-domain fallback; the bracket is a factored difference of two
  // near-equal binomials, handled inside LogReal.
  double lg_a = 0.0;                                                    // C(m+X-1, m)
  double lg_b1 = log2_binomial(w.n_plus + N - X, w.n_plus);             // upper hockey stick
  double lg_b2 = (w.n_minus >= 1) ? log2_binomial(w.n_minus + N - X - 1, w.n_minus - 1) : 0.0;
  LogReal total = LogReal::zero();
  for (long m = 0; m <= w.n_plus; ++m) {
    LogReal bracket = LogReal::from_log2(lg_b1);
    if (w.n_minus - m - 1 >= 0) bracket -= LogReal::from_log2(lg_b2);
    const LogReal term = LogReal::from_log2(lg_a) * bracket * bracket;
    total += term;
    if (m == w.n_plus) break;
    lg_a += std::log2(static_cast<double>(m + X) / static_cast<double>(m + 1));
    lg_b1 += std::log2(static_cast<double>(w.n_plus - m) /
                       static_cast<double>(w.n_plus - m + N - X));
    if (w.n_minus - m - 2 >= 0)
      lg_b2 += std::log2(static_cast<double>(w.n_minus - m - 1) /
                         static_cast<double>(w.n_minus - m - 1 + N - X));
  }
  return total;
}

double r_opt(double x, double m_plus) {
  if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("r_opt: need 0 < x <= 1");
  if (!(m_plus > 0.0)) throw std::domain_error("r_opt: need m_plus > 0");
  const double t = (1.0 - x) / (2.0 * (m_plus + 1.0));
  return std::sqrt(m_plus / (m_plus + 1.0) + t * t) - t;
}

LogReal alpha_bound(int sub_modes, int num_modes, double m_plus, double r, double s) {
  if (!(r > 0.0 && r < 1.0 && s > 0.0 && s < 1.0))
    throw std::domain_error("alpha_bound: need r, s in (0, 1)");
  if (sub_modes < 1 || sub_modes >= num_modes)
    throw std::domain_error("alpha_bound: need 1 <= X < N");
  const double n_plus = m_plus * num_modes;
  const double X = sub_modes;
  // log2(r) + log2(s) rather than log2(rs): rs can underflow while the
  // bound itself stays representable in log space.
  const double lg = -n_plus * (std::log2(r) + std::log2(s)) -
                    X * std::log2(1.0 - r * s) -
                    (num_modes - X) * (std::log2(1.0 - r) + std::log2(1.0 - s)) -
                    std::log2(1.0 - r * s) - std::log2(1.0 - r) - std::log2(1.0 - s);
  return LogReal::from_log2(lg);
}

double alpha_bound_exact_exponent(double x, double m_plus) {
  const double r = r_opt(x, m_plus);
  return -(m_plus * std::log2(r * r) + x * std::log2(1.0 - r * r) +
           2.0 * (1.0 - x) * std::log2(1.0 - r));
}

double alpha_bound_high_energy_exponent(double x, double m_plus) {
  return (2.0 - x) * h_therm(m_plus) + 2.0 * (1.0 - x) - (2.0 - x) * std::log2(2.0 - x);
}

double submult_exponent(double x, double m_plus) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("submult_exponent: need 0 < x < 1");
  if (!(m_plus > 0.0)) throw std::domain_error("submult_exponent: need m_plus > 0");
  const double y = 1.0 - x;
  const double m = m_plus;
  return (m + x) * std::log2(m + x) + (m + y) * std::log2(m + y) -
         (m + 1.0) * std::log2(m + 1.0) - m * std::log2(m) - x * std::log2(x) -
         y * std::log2(y);
}

}  // namespace cverase
