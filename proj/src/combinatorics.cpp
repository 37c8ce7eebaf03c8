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

#include "cverase/combinatorics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cverase/exact.hpp"

namespace cverase {

namespace {
// Above this the exact big-integer binomial gets expensive (~10 ms at 10^6);
// log-gamma takes over with ~1e-9 absolute log error instead of ~1e-16.
constexpr unsigned long kExactBinomialLimit = 1'000'000;

double lgamma2(double x) { return std::lgamma(x) / 0.6931471805599453; }
}  // namespace

LogReal log_binomial(unsigned long a, unsigned long b) {
  if (b > a) throw std::domain_error("log_binomial: b > a");
  if (a <= kExactBinomialLimit) return to_logreal(binomial_exact(a, b));
  const double lg = lgamma2(static_cast<double>(a) + 1.0) -
                    lgamma2(static_cast<double>(b) + 1.0) -
                    lgamma2(static_cast<double>(a - b) + 1.0);
  return LogReal::from_log2(lg);
}

double log2_binomial(unsigned long a, unsigned long b) {
  return log_binomial(a, b).log2_abs();
}

CompositionRange::CompositionRange(int n, int num_modes) : n_(n), num_modes_(num_modes) {
  if (n < 0 || num_modes < 1) throw std::domain_error("CompositionRange: need n >= 0, N >= 1");
}

CompositionRange::iterator::iterator(int n, int num_modes) : done_(false) {
  parts_.assign(num_modes, 0);
  parts_[0] = n;
}

CompositionRange::iterator& CompositionRange::iterator::operator++() {
  const int N = static_cast<int>(parts_.size());
  // Colex successor: move one photon from the first occupied mode to the
  // next mode up, dumping that mode's remainder back into mode 0.
  int h = 0;
  while (h < N && parts_[h] == 0) ++h;
  if (h == N - 1 || h == N) {  // all photons in the last mode (or n = 0)
    done_ = true;
    return *this;
  }
  const int v = parts_[h];
  parts_[h] = 0;
  parts_[0] = v - 1;
  parts_[h + 1] += 1;
  return *this;
}

BoundedPartitionRange::BoundedPartitionRange(int n, int max_parts)
    : n_(n), max_parts_(max_parts) {
  if (n < 0 || max_parts < 1)
    throw std::domain_error("BoundedPartitionRange: need n >= 0, max_parts >= 1");
}

BoundedPartitionRange::iterator::iterator(int n, int max_parts)
    : n_(n), max_parts_(max_parts), done_(false) {
  if (n_ > 0) parts_.assign(1, n_);
  encode();
}

void BoundedPartitionRange::iterator::encode() {
  mult_.parts.clear();
  mult_.n = n_;
  mult_.num_parts = static_cast<int>(parts_.size());
  for (int v : parts_) {
    if (!mult_.parts.empty() && mult_.parts.back().value == v) {
      ++mult_.parts.back().mult;
    } else {
      mult_.parts.push_back({v, 1});
    }
  }
}

BoundedPartitionRange::iterator& BoundedPartitionRange::iterator::operator++() {
  // Reverse-lexicographic successor under the part-count bound: free the
  // shortest feasible suffix, decrement its head, refill greedily.
  long freed = 0;
  for (int j = static_cast<int>(parts_.size()) - 1; j >= 0; --j) {
    freed += parts_[j];
    const int cap = parts_[j] - 1;
    if (cap >= 1) {
      const long need = (freed + cap - 1) / cap;
      if (j + need <= max_parts_) {
        parts_.resize(j);
        long rem = freed;
        while (rem > 0) {
          const int v = static_cast<int>(std::min<long>(cap, rem));
          parts_.push_back(v);
          rem -= v;
        }
        encode();
        return *this;
      }
    }
  }
  done_ = true;
  return *this;
}

LogReal multinomial_log(long n_total, std::span<const long> multiplicities) {
  long sum = 0;
  for (long m : multiplicities) {
    if (m < 0) throw std::domain_error("multinomial_log: negative multiplicity");
    sum += m;
  }
  if (sum != n_total) throw std::domain_error("multinomial_log: multiplicities must sum to N");
  if (n_total <= 100'000) {
    BigNat r = factorial_exact(static_cast<unsigned long>(n_total));
    for (long m : multiplicities) r /= factorial_exact(static_cast<unsigned long>(m));
    return to_logreal(r);
  }
  double lg = lgamma2(static_cast<double>(n_total) + 1.0);
  for (long m : multiplicities) lg -= lgamma2(static_cast<double>(m) + 1.0);
  return LogReal::from_log2(lg);
}

}  // namespace cverase
