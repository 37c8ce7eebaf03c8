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

#ifndef CVERASE_COMBINATORICS_HPP
#define CVERASE_COMBINATORICS_HPP

#include <iterator>
#include <span>
#include <vector>

#include "cverase/logreal.hpp"

namespace cverase {

/// An ordered distribution of n indistinguishable photons over a fixed
/// number of modes: (x_1, ..., x_N) with sum x_i = n.
using Composition = std::vector<int>;

/// log2 C(a, b). Exact (big-integer backed) for a <= 10^6, log-gamma beyond.
/// Throws std::domain_error when b > a.
LogReal log_binomial(unsigned long a, unsigned long b);

/// Scalar convenience for log_binomial.
double log2_binomial(unsigned long a, unsigned long b);

/// Streams every element of P(n, N) exactly once in colexicographic order,
/// e.g. P(3, 2) = (3,0), (2,1), (1,2), (0,3).
class CompositionRange {
 public:
  CompositionRange(int n, int num_modes);

  class iterator {
   public:
    using value_type = Composition;
    using difference_type = std::ptrdiff_t;

    iterator() : done_(true) {}
    iterator(int n, int num_modes);

    const Composition& operator*() const { return parts_; }
    iterator& operator++();
    void operator++(int) { ++(*this); }
    bool operator==(std::default_sentinel_t) const { return done_; }

   private:
    Composition parts_;
    bool done_;
  };

  iterator begin() const { return iterator(n_, num_modes_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  int n_;
  int num_modes_;
};

/// Integer partition in multiplicity form: parts (Q_i, m_i) with
/// Q_1 > Q_2 > ..., n = sum Q_i m_i and num_parts = sum m_i.
struct PartitionMult {
  struct Part {
    int value;
    int mult;
  };
  std::vector<Part> parts;
  int n = 0;
  int num_parts = 0;
};

/// Streams every partition of n with at most max_parts parts, each exactly
/// once, in reverse-lexicographic order on the descending part list.
/// Memory stays O(n); nothing is materialized.
class BoundedPartitionRange {
 public:
  BoundedPartitionRange(int n, int max_parts);

  class iterator {
   public:
    using value_type = PartitionMult;
    using difference_type = std::ptrdiff_t;

    iterator() : done_(true) {}
    iterator(int n, int max_parts);

    const PartitionMult& operator*() const { return mult_; }
    iterator& operator++();
    void operator++(int) { ++(*this); }
    bool operator==(std::default_sentinel_t) const { return done_; }

   private:
    void encode();

    std::vector<int> parts_;  // descending
    PartitionMult mult_;
    int n_ = 0;
    int max_parts_ = 1;
    bool done_ = false;
  };

  iterator begin() const { return iterator(n_, max_parts_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  int n_;
  int max_parts_;
};

/// log2 of N! / prod_i m_i!. The multiplicities must sum to N.
LogReal multinomial_log(long n_total, std::span<const long> multiplicities);

}  // namespace cverase

#endif
