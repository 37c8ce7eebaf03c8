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

#ifndef CVERASE_EXACT_HPP
#define CVERASE_EXACT_HPP

#include <gmpxx.h>

#include "cverase/logreal.hpp"

namespace cverase {

/// Arbitrary-precision non-negative integer, the exact cross-check layer
/// under the log-domain fast path.
using BigNat = mpz_class;

/// Exact C(a, b). Throws std::domain_error when b > a.
BigNat binomial_exact(unsigned long a, unsigned long b);

/// Exact n!.
BigNat factorial_exact(unsigned long n);

/// Lossless-to-double-precision conversion of a positive BigNat into
/// sign/log2 form. Zero maps to LogReal::zero().
LogReal to_logreal(const BigNat& v);

}  // namespace cverase

#endif
