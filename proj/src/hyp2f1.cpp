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

#include "cverase/hyp2f1.hpp"

#include <cmath>

#include "cverase/ksum.hpp"

namespace cverase {

double gauss_2f1(double a, double b, double c, double x, const Hyp2f1Options& opts) {
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("gauss_2f1: need 0 <= x < 1");
  if (!(c > 0.0)) throw std::domain_error("gauss_2f1: need c > 0");
  if (a < 0.0 || b < 0.0) throw std::domain_error("gauss_2f1: need a, b >= 0");

  KahanAccumulator sum;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  sum.add(term);
  for (long k = 0; k < opts.max_terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x;
    if (term == 0.0) return sum.total();  // terminating series (a or b integer)
    sum.add(term);
    if (std::fabs(term) < opts.rel_tol * std::fabs(sum.total()) && std::fabs(term) <= prev)
      return sum.total();
    prev = std::fabs(term);
  }
  throw Hyp2f1ConvergenceError(sum.total(), opts.max_terms);
}

}  // namespace cverase
