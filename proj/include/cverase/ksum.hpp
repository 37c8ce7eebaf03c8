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

#ifndef CVERASE_KSUM_HPP
#define CVERASE_KSUM_HPP

#include <limits>

#include "cverase/logreal.hpp"

namespace cverase {

/// Kahan-compensated accumulator; first-order error independent of length.
class KahanAccumulator {
 public:
  void add(double v) {
    const double y = v - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  void add(const LogReal& v) { add(v.to_double()); }

  double total() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <typename Range>
double compensated_sum(const Range& values) {
  KahanAccumulator acc;
  for (const auto& v : values) acc.add(v);
  return acc.total();
}

}  // namespace cverase

#endif
