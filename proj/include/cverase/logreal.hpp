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

#ifndef CVERASE_LOGREAL_HPP
#define CVERASE_LOGREAL_HPP

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace cverase {

/// Sign + base-2 log magnitude representation of a real scalar.
///
/// Products of binomial coefficients in this codebase reach magnitudes of
/// 2^(1e6) and beyond, far outside double range. All arithmetic here keeps
/// the exponent explicit; addition and subtraction factor out the larger
/// exponent so only the *ratio* of the operands has to fit in a double.
class LogReal {
 public:
  LogReal() : sign_(0), lg_(0.0) {}

  static LogReal zero() { return LogReal(); }
  static LogReal one() { return from_log2(0.0); }

  static LogReal from_log2(double log2_mag, int sign = +1) {
    if (sign != +1 && sign != -1) throw std::domain_error("LogReal: sign must be +1 or -1");
    LogReal r;
    r.sign_ = sign;
    r.lg_ = log2_mag;
    return r;
  }

  static LogReal from_double(double v) {
    LogReal r;
    if (v == 0.0) return r;
    r.sign_ = v > 0.0 ? +1 : -1;
    r.lg_ = std::log2(std::fabs(v));
    return r;
  }

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }

  /// Base-2 log of |value|. Undefined for zero.
  double log2_abs() const {
    if (sign_ == 0) throw std::domain_error("LogReal: log2_abs of zero");
    return lg_;
  }

  /// Converts to double; overflows to +-inf and underflows to 0 silently.
  double to_double() const {
    if (sign_ == 0) return 0.0;
    return sign_ * std::exp2(lg_);
  }

  LogReal abs() const {
    LogReal r = *this;
    if (r.sign_ == -1) r.sign_ = +1;
    return r;
  }

  LogReal operator-() const {
    LogReal r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  LogReal operator*(const LogReal& o) const {
    if (sign_ == 0 || o.sign_ == 0) return zero();
    return from_log2(lg_ + o.lg_, sign_ * o.sign_);
  }

  LogReal operator/(const LogReal& o) const {
    if (o.sign_ == 0) throw std::domain_error("LogReal: division by zero");
    if (sign_ == 0) return zero();
    return from_log2(lg_ - o.lg_, sign_ * o.sign_);
  }

  LogReal operator+(const LogReal& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    // Factor out the larger exponent; d <= 0 below.
    const LogReal* hi = this;
    const LogReal* lo = &o;
    if (o.lg_ > lg_) std::swap(hi, lo);
    const double d = lo->lg_ - hi->lg_;
    if (hi->sign_ == lo->sign_) {
      return from_log2(hi->lg_ + std::log1p(std::exp2(d)) / kLn2, hi->sign_);
    }
    const double rest = 1.0 - std::exp2(d);
    if (rest <= 0.0) return zero();  // exact cancellation (d == 0)
    return from_log2(hi->lg_ + std::log2(rest), hi->sign_);
  }

  LogReal operator-(const LogReal& o) const { return *this + (-o); }

  LogReal& operator+=(const LogReal& o) { return *this = *this + o; }
  LogReal& operator-=(const LogReal& o) { return *this = *this - o; }
  LogReal& operator*=(const LogReal& o) { return *this = *this * o; }
  LogReal& operator/=(const LogReal& o) { return *this = *this / o; }

  /// Real power of a non-negative value.
  LogReal pow(double e) const {
    if (sign_ == 0) return e == 0.0 ? one() : zero();
    if (sign_ < 0) throw std::domain_error("LogReal: pow of negative base");
    return from_log2(lg_ * e);
  }

  bool operator<(const LogReal& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    if (sign_ == 0) return false;
    return sign_ > 0 ? lg_ < o.lg_ : lg_ > o.lg_;
  }
  bool operator>(const LogReal& o) const { return o < *this; }
  bool operator<=(const LogReal& o) const { return !(o < *this); }
  bool operator>=(const LogReal& o) const { return !(*this < o); }

 private:
  static constexpr double kLn2 = 0.6931471805599453;
  int sign_;
  double lg_;
};

}  // namespace cverase

#endif
