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

#include "cverase/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace cverase {

BigNat binomial_exact(unsigned long a, unsigned long b) {
  if (b > a) throw std::domain_error("binomial_exact: b > a");
  BigNat r;
  mpz_bin_uiui(r.get_mpz_t(), a, b);
  return r;
}

BigNat factorial_exact(unsigned long n) {
  BigNat r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

LogReal to_logreal(const BigNat& v) {
  const int s = mpz_sgn(v.get_mpz_t());
  if (s == 0) return LogReal::zero();
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return LogReal::from_log2(std::log2(std::fabs(mant)) + static_cast<double>(exp2),
                            s > 0 ? +1 : -1);
}

}  // namespace cverase
