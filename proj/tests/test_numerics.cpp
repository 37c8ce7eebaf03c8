#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "cverase/combinatorics.hpp"
#include "cverase/exact.hpp"
#include "cverase/hyp2f1.hpp"
#include "cverase/ksum.hpp"
#include "cverase/logreal.hpp"

using namespace cverase;

namespace {

// Independent partition counter: p(n) with at most k parts, largest part <= hi.
long count_partitions_rec(int n, int k, int hi) {
  if (n == 0) return 1;
  if (k == 0 || hi == 0) return 0;
  long total = 0;
  for (int v = std::min(n, hi); v >= 1; --v) total += count_partitions_rec(n - v, k - 1, v);
  return total;
}

double direct_2f1_sum(double a, double b, double c, double x, long terms) {
  double sum = 0.0, t = 1.0;
  for (long k = 0; k < terms; ++k) {
    sum += t;
    t *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
  }
  return sum;
}

}  // namespace

TEST_CASE("LogReal arithmetic") {
  const LogReal a = LogReal::from_double(6.0);
  const LogReal b = LogReal::from_double(-2.0);
  CHECK((a * b).to_double() == doctest::Approx(-12.0));
  CHECK((a / b).to_double() == doctest::Approx(-3.0));
  CHECK((a + b).to_double() == doctest::Approx(4.0));
  CHECK((a - b).to_double() == doctest::Approx(8.0));
  CHECK((b - b).is_zero());
  CHECK(LogReal::zero().to_double() == 0.0);
  CHECK((a + LogReal::zero()).to_double() == doctest::Approx(6.0));
  CHECK(a > b);
  CHECK(b < LogReal::zero());

  // Huge-exponent sums stay exact in the leading digits.
  const LogReal big = LogReal::from_log2(1e6);
  const LogReal small = LogReal::from_log2(1e6 - 1.0);
  CHECK((big + small).log2_abs() == doctest::Approx(1e6 + std::log2(1.5)));
  CHECK((big - small).log2_abs() == doctest::Approx(1e6 - 1.0));
  CHECK_THROWS_AS(LogReal::zero().log2_abs(), std::domain_error);
  CHECK_THROWS_AS(b.pow(2.0), std::domain_error);
}

TEST_CASE("LogReal arithmetic agrees with long double on random pairs") {
  // Hand-rolled generator across 12 orders of magnitude and both signs.
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  const auto next = [&state] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int trial = 0; trial < 20000; ++trial) {
    const double mag_a = std::exp2(static_cast<double>(next() % 4800) / 100.0 - 24.0);
    const double mag_b = std::exp2(static_cast<double>(next() % 4800) / 100.0 - 24.0);
    const double a = (next() & 1 ? 1.0 : -1.0) * mag_a;
    const double b = (next() & 1 ? 1.0 : -1.0) * mag_b;
    const LogReal la = LogReal::from_double(a);
    const LogReal lb = LogReal::from_double(b);
    const long double sum = static_cast<long double>(a) + b;
    const long double prod = static_cast<long double>(a) * b;
    REQUIRE((la * lb).to_double() ==
            doctest::Approx(static_cast<double>(prod)).epsilon(1e-12));
    REQUIRE((la / lb).to_double() == doctest::Approx(a / b).epsilon(1e-12));
    if (std::fabs(static_cast<double>(sum)) > 1e-9 * (mag_a + mag_b)) {
      REQUIRE((la + lb).to_double() ==
              doctest::Approx(static_cast<double>(sum)).epsilon(1e-9));
    }
    REQUIRE(((la < lb) == (a < b)));
  }
}

TEST_CASE("binomial_exact small values and domain") {
  CHECK(binomial_exact(4, 2) == 6);
  CHECK(binomial_exact(2 + 3 - 1, 2) == 6);  // |P(2, 3)|
  CHECK(binomial_exact(0, 0) == 1);
  CHECK_THROWS_AS(binomial_exact(3, 5), std::domain_error);
}

TEST_CASE("log_binomial matches exact values") {
  CHECK(log_binomial(5, 2).log2_abs() == doctest::Approx(std::log2(10.0)).epsilon(1e-14));
  CHECK(log_binomial(3 + 2 - 1, 3).log2_abs() ==
        doctest::Approx(std::log2(4.0)).epsilon(1e-14));  // rank of the n=3 sector, N=2
  CHECK_THROWS_AS(log_binomial(1, 2), std::domain_error);

  const LogReal big = log_binomial(2000, 1000);
  const LogReal exact = to_logreal(binomial_exact(2000, 1000));
  CHECK(std::fabs(big.log2_abs() - exact.log2_abs()) < 1e-12 / std::log(2.0));

  const LogReal mid = log_binomial(200, 100);
  CHECK(std::fabs(mid.log2_abs() - to_logreal(binomial_exact(200, 100)).log2_abs()) <
        1e-12);
}

TEST_CASE("log_binomial relative accuracy across a <= 300") {
  for (unsigned long a = 0; a <= 300; ++a) {
    for (unsigned long b = 0; b <= a; b += (a < 40 ? 1 : 7)) {
      const double lg = log_binomial(a, b).log2_abs();
      const double lg_exact = to_logreal(binomial_exact(a, b)).log2_abs();
      // |2^x - 2^y| / 2^y ~ ln2 |x - y| for close x, y.
      CHECK(std::fabs(lg - lg_exact) * std::log(2.0) < 1e-12);
    }
  }
}

TEST_CASE("gauss_2f1 values") {
  CHECK(gauss_2f1(3.7, 2.1, 5.0, 0.0) == 1.0);
  CHECK(gauss_2f1(1, 1, 2, 0.5) ==
        doctest::Approx(-std::log(1.0 - 0.5) / 0.5).epsilon(1e-13));
  CHECK(gauss_2f1(1, 1, 2, 0.5) == doctest::Approx(direct_2f1_sum(1, 1, 2, 0.5, 10'000)));
  for (double x : {0.1, 0.5, 0.9})
    CHECK(gauss_2f1(1, 1, 2, x) == doctest::Approx(-std::log(1.0 - x) / x).epsilon(1e-10));

  // Series that shows up in the single-mode marginal at N = 100.
  const double got = gauss_2f1(1, 5, 105, 0.9);
  CHECK(got == doctest::Approx(direct_2f1_sum(1, 5, 105, 0.9, 200'000)).epsilon(1e-12));

  CHECK_THROWS_AS(gauss_2f1(1, 1, 2, 1.0), std::domain_error);
  CHECK_THROWS_AS(gauss_2f1(1, 1, -1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(gauss_2f1(1, 1, 2, 0.5, Hyp2f1Options{1e-30, 5}), Hyp2f1ConvergenceError);
  try {
    gauss_2f1(1, 1, 2, 0.5, Hyp2f1Options{1e-30, 5});
  } catch (const Hyp2f1ConvergenceError& e) {
    CHECK(e.partial_sum > 1.0);  // carries the partial sum
    CHECK(e.terms_used == 5);
  }
}

TEST_CASE("compositions stream in colex order") {
  std::vector<Composition> got;
  for (const auto& c : CompositionRange(3, 2)) got.push_back(c);
  const std::vector<Composition> want = {{3, 0}, {2, 1}, {1, 2}, {0, 3}};
  CHECK(got == want);

  long n0 = 0;
  for (const auto& c : CompositionRange(0, 5)) {
    ++n0;
    CHECK(c == Composition(5, 0));
  }
  CHECK(n0 == 1);

  long n43 = 0;
  for ([[maybe_unused]] const auto& c : CompositionRange(4, 3)) ++n43;
  CHECK(n43 == 15);
}

TEST_CASE("compositions exhaustive counts vs exact binomial") {
  for (int n = 0; n <= 12; ++n) {
    for (int N = 1; N <= 12; ++N) {
      long count = 0;
      std::set<Composition> seen;
      for (const auto& c : CompositionRange(n, N)) {
        ++count;
        seen.insert(c);
        long sum = 0;
        for (int v : c) sum += v;
        REQUIRE(sum == n);
        REQUIRE(static_cast<int>(c.size()) == N);
      }
      REQUIRE(seen.size() == static_cast<size_t>(count));  // no duplicates
      REQUIRE(BigNat(count) == binomial_exact(n + N - 1, n));
    }
  }
}

TEST_CASE("bounded partitions") {
  // Contains (4^1, 3^2, 1^3) among the partitions of 13 with <= 6 parts.
  bool found = false;
  for (const auto& q : BoundedPartitionRange(13, 6)) {
    if (q.parts.size() == 3 && q.parts[0].value == 4 && q.parts[0].mult == 1 &&
        q.parts[1].value == 3 && q.parts[1].mult == 2 && q.parts[2].value == 1 &&
        q.parts[2].mult == 3)
      found = true;
    CHECK(q.n == 13);
    CHECK(q.num_parts <= 6);
  }
  CHECK(found);

  long empty_count = 0;
  for (const auto& q : BoundedPartitionRange(0, 7)) {
    ++empty_count;
    CHECK(q.parts.empty());
    CHECK(q.num_parts == 0);
  }
  CHECK(empty_count == 1);

  long p20 = 0;
  for ([[maybe_unused]] const auto& q : BoundedPartitionRange(20, 20)) ++p20;
  CHECK(p20 == 627);
}

TEST_CASE("bounded partition counts match a recursive counter") {
  for (int n = 0; n <= 30; n += 3) {
    for (int k = 1; k <= 30; k += 4) {
      long count = 0;
      for (const auto& q : BoundedPartitionRange(n, k)) {
        ++count;
        long total = 0, parts = 0;
        int prev = 1 << 30;
        for (const auto& [v, m] : q.parts) {
          CHECK(v < prev);  // strictly decreasing values
          CHECK(m >= 1);
          prev = v;
          total += static_cast<long>(v) * m;
          parts += m;
        }
        REQUIRE(total == n);
        REQUIRE(parts <= k);
      }
      REQUIRE(count == count_partitions_rec(n, k, n == 0 ? 1 : n));
    }
  }
}

TEST_CASE("multinomial_log") {
  const long m3[] = {3};
  CHECK(multinomial_log(3, m3).to_double() == doctest::Approx(1.0));
  const long m411[] = {2, 1, 1};
  CHECK(multinomial_log(4, m411).to_double() == doctest::Approx(12.0));
  const long m100[] = {97, 1, 1, 1};
  BigNat exact = factorial_exact(100) / (factorial_exact(97));
  CHECK(multinomial_log(100, m100).log2_abs() ==
        doctest::Approx(to_logreal(exact).log2_abs()).epsilon(1e-14));
  const long bad[] = {2, 1};
  CHECK_THROWS_AS(multinomial_log(4, bad), std::domain_error);
}

TEST_CASE("compensated summation") {
  KahanAccumulator acc;
  acc.add(1.0);
  for (long i = 0; i < 100'000'000; ++i) acc.add(1e-16);
  CHECK(std::fabs(acc.total() - (1.0 + 1e-8)) < 1e-12);

  const std::vector<double> empty;
  CHECK(compensated_sum(empty) == 0.0);
}

TEST_CASE("hockey-stick identity exact for n, N <= 200") {
  for (int N = 1; N <= 200; N += 1) {
    BigNat running = 0;
    for (int n = 0; n <= 200; ++n) {
      running += binomial_exact(n + N - 1, n);
      REQUIRE(running == binomial_exact(n + N, n));
    }
  }
}
