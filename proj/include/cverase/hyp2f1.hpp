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

#ifndef CVERASE_HYP2F1_HPP
#define CVERASE_HYP2F1_HPP

#include <stdexcept>
#include <string>

namespace cverase {

struct Hyp2f1Options {
  double rel_tol = 1e-15;
  long max_terms = 1'000'000;
};

/// Raised when the defining series has not met the tolerance within the
/// term budget; carries the partial sum for diagnosis.
class Hyp2f1ConvergenceError : public std::runtime_error {
 public:
  Hyp2f1ConvergenceError(double partial, long terms)
      : std::runtime_error("gauss_2f1: series did not converge after " +
                           std::to_string(terms) + " terms"),
        partial_sum(partial),
        terms_used(terms) {}
  double partial_sum;
  long terms_used;
};

/// Gauss hypergeometric 2F1(a, b; c; x) by direct summation of the defining
/// series with the Pochhammer-ratio recurrence. Restricted to the parameter
/// ranges used here: a, b >= 0, c > 0, 0 <= x < 1. No analytic continuation.
double gauss_2f1(double a, double b, double c, double x, const Hyp2f1Options& opts = {});

}  // namespace cverase

#endif
