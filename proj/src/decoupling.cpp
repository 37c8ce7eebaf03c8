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

#include "cverase/decoupling.hpp"

#include <cmath>
#include <functional>

namespace cverase {

namespace {

constexpr int kMaxBisectIters = 200;

// (nbar + t) H2(nbar / (nbar + t)), with the t -> 0 limit taken exactly.
double dim_entropy_term(double nbar, double t) {
  if (t <= 0.0) return 0.0;
  return (nbar + t) * std::log2(nbar + t) - nbar * std::log2(nbar) - t * std::log2(t);
}

double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi,
                         double tol) {
  // f(lo) > 0 > f(hi) assumed; returns the sign change point.
  for (int i = 0; i < kMaxBisectIters && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double xi_standard(double nbar, double p, double q) {
  if (!(nbar > 0.0)) throw std::domain_error("xi_standard: need nbar > 0");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("xi_standard: need p in [0, 1]");
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("xi_standard: need q in [0, 1]");
  const double r = r_opt(1.0 - p, nbar);  // alpha bound taken on the kept modes
  return 2.0 * h_therm(nbar) - dim_entropy_term(nbar, p) - dim_entropy_term(nbar, q) +
         nbar * std::log2(r * r) + (1.0 - p) * std::log2(1.0 - r * r) +
         2.0 * p * std::log2(1.0 - r);
}

double xi_ea(double nbar, double p, double q) {
  return xi_standard(nbar, p, q) + (1.0 - q) * std::log2(2.0 * nbar + 1.0);
}

double c_standard(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("c_standard: need p in [0, 1]");
  if (!(q >= 0.0 && q < 1.0)) throw std::domain_error("c_standard: need q in [0, 1)");
  double v = 2.0 * p - (1.0 + p) * std::log2(1.0 + p);
  if (p > 0.0) v -= p * std::log2(p);
  if (q > 0.0) v -= q * std::log2(q);
  return v;
}

double c_ea(double p, double q) {
  return c_standard(p, q) - (1.0 - q) * (1.0 - 1.0 / std::log(2.0));
}

double rate_gap_constant(double p, double q, Assist assist) {
  return assist == Assist::standard ? c_standard(p, q) : 0.5 * c_ea(p, q);
}

MaxRate max_rate(double nbar, double p, Assist assist, double tol) {
  const auto xi = [&](double q) {
    return assist == Assist::standard ? xi_standard(nbar, p, q) : xi_ea(nbar, p, q);
  };
  constexpr double q_lo = 1e-12;
  if (xi(q_lo) <= 0.0) return {0.0, 0.0};
  if (xi(1.0 - q_lo) > 0.0) return {1.0, h_therm(nbar)};
  const double q = bisect_decreasing(xi, q_lo, 1.0 - q_lo, tol);
  return {q, q * h_therm(nbar)};
}

double p_star(double nbar, Assist assist, double tol) {
  const auto xi0 = [&](double p) {  // q -> 0 limit, decreasing in p
    return assist == Assist::standard ? xi_standard(nbar, p, 0.0) : xi_ea(nbar, p, 0.0);
  };
  constexpr double eps = 1e-12;
  if (xi0(eps) <= 0.0) return 0.0;
  if (xi0(1.0 - eps) > 0.0) return 1.0;
  return bisect_decreasing(xi0, eps, 1.0 - eps, tol);
}

HpThreshold hp_threshold(double nbar, double q, Assist assist, double tol) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("hp_threshold: need 0 < q < 1");
  const auto xi_of_qt = [&](double qt) {  // increasing in q_tilde (p = 1 - q_tilde)
    const double p = 1.0 - qt;
    return assist == Assist::standard ? xi_standard(nbar, p, q) : xi_ea(nbar, p, q);
  };
  constexpr double eps = 1e-12;
  double qt_exact;
  if (xi_of_qt(q + eps) > 0.0) {
    qt_exact = q;  // recovery certified as soon as Bob matches the input share
  } else if (xi_of_qt(1.0 - eps) <= 0.0) {
    qt_exact = 1.0;  // never certified
  } else {
    qt_exact = bisect_decreasing([&](double qt) { return -xi_of_qt(qt); }, q + eps,
                                 1.0 - eps, tol);
  }

  // High-energy form of the xi = 0 root with one fixed-point pass on the gap
  // constant: standard q~ = (1 + q)/2 + c_stan/(2H); assisted q~ = q + c_EA/(2H)
  // since the assisted exponent is 2 (q~ - q) H - c_EA near its root.
  const double H = h_therm(nbar);
  double qt_he;
  if (assist == Assist::standard) {
    double qt0 = 0.5 + 0.5 * q;
    qt_he = qt0 + c_standard(1.0 - qt0, q) / (2.0 * H);
  } else {
    double qt0 = std::min(q + c_ea(1.0 - q, q) / (2.0 * H), 1.0 - eps);
    qt_he = q + c_ea(1.0 - qt0, q) / (2.0 * H);
  }
  return {qt_exact, qt_he};
}

BoundReport finite_n_bound(int num_modes, int k_modes, const SectorWindow& w, double p,
                           Assist assist, std::optional<double> zeta,
                           bool use_alpha_bound) {
  if (w.num_modes != num_modes) throw std::domain_error("finite_n_bound: window/N mismatch");
  if (k_modes < 1 || k_modes >= num_modes)
    throw std::domain_error("finite_n_bound: need 1 <= K < N");
  const long erased = std::lround(std::floor(p * num_modes + 0.5));  // ties round half-up
  if (erased < 1 || erased >= num_modes)
    throw std::domain_error("finite_n_bound: round(p N) must land in [1, N-1]");
  const double z2 = w.squeeze.z2;

  const int b_modes = num_modes - static_cast<int>(erased);
  const double lg_d_r = dim_reduced(k_modes, w.n_plus).log2_abs();
  const double lg_d_e = dim_reduced(static_cast<int>(erased), w.n_plus).log2_abs();
  double lg_alpha_b;
  if (use_alpha_bound) {
    const double m_plus = static_cast<double>(w.n_plus) / num_modes;
    const double r = r_opt(static_cast<double>(b_modes) / num_modes, m_plus);
    lg_alpha_b = alpha_bound(b_modes, num_modes, m_plus, r, r).log2_abs();
  } else {
    lg_alpha_b = alpha_exact(b_modes, w).log2_abs();
  }
  const double lg_delta_k_sq =
      2.0 * overlap_delta_reduced_log(k_modes, w.n_plus, z2).log2_abs();
  const double lg_d_a_sq = 2.0 * dim_typical(w).log2_abs();
  double lg_tail;
  if (assist == Assist::standard) {
    const double z = zeta.value_or(1.0);
    if (!(z > 0.0 && z <= 1.0)) throw std::domain_error("finite_n_bound: zeta must be in (0, 1]");
    lg_tail = std::log2(z);
  } else {
    lg_tail = purity_beta_log(num_modes - k_modes, w.n_plus, z2).log2_abs();
  }

  const double lg_bound =
      0.5 * (lg_d_r + lg_d_e + lg_alpha_b + lg_delta_k_sq + lg_tail - lg_d_a_sq);
  BoundReport rep;
  rep.log2_bound_per_mode = lg_bound / num_modes;
  rep.xi = -2.0 * rep.log2_bound_per_mode;
  rep.components = {
      {"log2_d_R", lg_d_r},          {"log2_d_E", lg_d_e},
      {"log2_alpha_B", lg_alpha_b},  {"log2_delta_K_sq", lg_delta_k_sq},
      {"log2_tail", lg_tail},        {"log2_d_A_sq", lg_d_a_sq},
      {"erased_modes", static_cast<double>(erased)},
  };
  return rep;
}

ConstantKExponent constant_k_exponent(double nbar) {
  if (!(nbar > 0.0)) throw std::domain_error("constant_k_exponent: need nbar > 0");
  const double e = 2.0 * (nbar - 1.0) * h_therm(nbar) + 1.0 / std::log(2.0) + 1.0;
  return {e, 0.5 * e};
}

}  // namespace cverase
