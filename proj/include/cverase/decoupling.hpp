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

#ifndef CVERASE_DECOUPLING_HPP
#define CVERASE_DECOUPLING_HPP

#include <map>
#include <optional>
#include <string>

#include "cverase/typical.hpp"

namespace cverase {

enum class Assist { standard, entanglement_assisted };

// Decoupling exponents. Convention: the expected trace distance between the
// code's reference-environment state and the decoupled average is bounded by
// poly(N) * 2^(-N xi / 2); the square root of the second-moment bound owns
// the 1/2, so xi itself is the pre-square-root exponent. Decoupling requires
// xi > 0 either way.

/// Standard-code exponent at energy nbar, erasure probability p, rate
/// fraction q = K/N. The p = 0 and q = 0 limits are taken exactly.
double xi_standard(double nbar, double p, double q);

/// Assisted exponent: xi_standard + (1 - q) log2(2 nbar + 1).
double xi_ea(double nbar, double p, double q);

/// Energy-independent gap of the standard exponent in the high-energy limit:
/// 2p - p log2 p - (1+p) log2(1+p) - q log2 q. Maximized over q at q = 1/e.
double c_standard(double p, double q);

/// Assisted counterpart: c_standard - (1 - q)(1 - 1/ln 2). Larger than
/// c_standard; maximized over q at q = 2^(1 - 2/ln 2) ~ 0.271.
double c_ea(double p, double q);

/// The constant that capacity - max_rate actually approaches at high energy.
/// Standard: c_standard. Assisted: c_ea / 2 -- the assisted exponent counts
/// the capacity-rate difference twice but the constant once, so only half of
/// c_ea survives division by the rate coefficient at the xi = 0 root.
double rate_gap_constant(double p, double q, Assist assist);

struct MaxRate {
  double q_optm;
  double rate_bits;
};

/// Largest q with xi > 0 (bisection; xi is strictly decreasing in q) and the
/// corresponding rate q_optm * H_therm(nbar). Returns {0, 0} past p_star.
MaxRate max_rate(double nbar, double p, Assist assist, double tol = 1e-8);

/// Critical erasure probability: root in p of the q -> 0 limit of xi.
double p_star(double nbar, Assist assist, double tol = 1e-8);

struct HpThreshold {
  double q_tilde;              // exact root of xi(nbar, 1 - q_tilde, q) = 0
  double q_tilde_high_energy;  // closed-form high-energy approximation
};

/// Fraction of output modes needed before decoupling certifies recovery of a
/// q-fraction input. Returns q_tilde = 1 when no root exists in (q, 1).
HpThreshold hp_threshold(double nbar, double q, Assist assist, double tol = 1e-8);

struct BoundReport {
  double log2_bound_per_mode;  // log2(bound) / N
  double xi;                   // = -2 log2_bound_per_mode
  std::map<std::string, double> components;
};

/// Exact finite-N decoupling bound sqrt(d_R d_E alpha_B Delta_K^2 tail / d_A^2)
/// with M = round(p N) erased modes; tail is zeta (default 1) in the standard
/// case and beta_{N-K} in the assisted case. use_alpha_bound swaps the exact
/// alpha_B for its contour bound at the optimal radius, which can only grow
/// the result.
BoundReport finite_n_bound(int num_modes, int k_modes, const SectorWindow& w, double p,
                           Assist assist, std::optional<double> zeta = {},
                           bool use_alpha_bound = false);

struct ConstantKExponent {
  double exponent;       // 2 (nbar - 1) H_therm(nbar) + 1/ln 2 + 1
  double half_exponent;  // what multiplies N in the bound's 2^(N/2 * ...) form
};

/// Growth exponent of the (ineffective) bound when the input and kept-output
/// mode counts are held constant; positive for every nbar.
ConstantKExponent constant_k_exponent(double nbar);

}  // namespace cverase

#endif
