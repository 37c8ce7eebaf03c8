#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cverase/typical.hpp"
#include "oracles.hpp"

using namespace cverase;

namespace {
SectorWindow make_window(int N, long lo, long hi, double z2 = 0.5) {
  return window_from_bounds(N, lo, hi, SqueezeParams::from_z2(z2));
}
}  // namespace

TEST_CASE("sector window construction") {
  const auto sq2 = SqueezeParams::from_nbar(2.0);
  const auto w = sector_window(10, 0.0, sq2);
  CHECK(w.n_minus == 20);
  CHECK(w.n_plus == 20);

  // delta chosen so the spread is exactly 0.1 photons per mode.
  const auto sq1 = SqueezeParams::from_nbar(1.0);
  const double delta = std::fabs(std::log2(sq1.z2)) * 0.1;
  const auto w2 = sector_window(100, delta, sq1);
  CHECK(w2.n_minus == 90);
  CHECK(w2.n_plus == 110);
  CHECK(w2.m_plus == doctest::Approx(1.1));
  CHECK(w2.m_minus == doctest::Approx(0.9));

  // N nbar = 1.2: no integer fits in a vanishing window.
  const auto sq03 = SqueezeParams::from_nbar(0.3);
  CHECK_THROWS_AS(sector_window(4, 1e-9, sq03), InfeasibleWindowError);

  // Clamped at zero from below.
  const auto w3 = sector_window(4, 10.0, sq1);
  CHECK(w3.n_minus == 0);
}

TEST_CASE("typical dimension") {
  CHECK(dim_typical_exact(make_window(2, 3, 3)) == 4);
  CHECK(dim_typical_exact(make_window(1, 0, 7)) == 8);

  // Sum of sector ranks, exact.
  BigNat direct = 0;
  for (long m = 90; m <= 110; ++m) direct += binomial_exact(m + 99, m);
  const auto w = make_window(100, 90, 110);
  CHECK(dim_typical_exact(w) == direct);
  CHECK(dim_typical(w).log2_abs() ==
        doctest::Approx(to_logreal(direct).log2_abs()).epsilon(1e-12));

  // Log-domain crossover path agrees with the exact one.
  CHECK(dim_typical(w, /*exact_crossover=*/1).log2_abs() ==
        doctest::Approx(to_logreal(direct).log2_abs()).epsilon(1e-9));
}

TEST_CASE("sector rank sum equals the closed form across windows") {
  for (int N : {1, 2, 7, 40, 200}) {
    for (long lo : {0L, 1L, 5L}) {
      for (long hi : {5L, 12L, 30L}) {
        if (lo > hi || hi + N > 2000) continue;
        BigNat direct = 0;
        for (long m = lo; m <= hi; ++m) direct += binomial_exact(m + N - 1, m);
        REQUIRE(dim_typical_exact(make_window(N, lo, hi)) == direct);
      }
    }
  }
}

TEST_CASE("reduced dimension") {
  CHECK(dim_reduced_exact(1, 5) == 6);
  CHECK(dim_reduced_exact(50, 100) == binomial_exact(150, 100));
  CHECK(dim_reduced(50, 100).log2_abs() ==
        doctest::Approx(to_logreal(binomial_exact(150, 100)).log2_abs()).epsilon(1e-13));
  // The reduced space on all N modes contains the windowed one.
  const auto w = make_window(6, 4, 9);
  CHECK(dim_reduced_exact(6, 9) >= dim_typical_exact(w));
}

TEST_CASE("submultiplicativity of dimensions, exact") {
  for (int N : {4, 10, 40, 100}) {
    for (int X = 1; X < N; X += std::max(1, N / 5)) {
      for (auto [lo, hi] : {std::pair<long, long>{0, 8}, {3, 9}, {17, 21}}) {
        const BigNat dX = dim_reduced_exact(X, hi);
        const BigNat dY = dim_reduced_exact(N - X, hi);
        REQUIRE(dX * dY >= dim_typical_exact(make_window(N, lo, hi)));
      }
    }
  }
}

TEST_CASE("full overlap") {
  // Window wide enough to capture everything.
  const auto sq = SqueezeParams::from_z2(0.5);
  CHECK(overlap_delta_full(window_from_bounds(3, 0, 200, sq)) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // Single mode: geometric closed form 1 - z2^(k+1).
  for (long k : {0L, 3L, 11L})
    CHECK(overlap_delta_full(window_from_bounds(1, 0, k, sq)) ==
          doctest::Approx(1.0 - std::pow(0.5, k + 1.0)).epsilon(1e-12));

  // Overlap + direct tail mass = 1.
  const auto w = window_from_bounds(5, 2, 9, sq);
  double tail = 0.0;
  for (long n = 0; n <= 400; ++n) {
    if (n >= 2 && n <= 9) continue;
    tail += std::exp2(5 * std::log2(0.5) + n * std::log2(0.5) +
                      log2_binomial(n + 4, n));
  }
  CHECK(overlap_delta_full(w) + tail == doctest::Approx(1.0).epsilon(1e-9));

  // Concentration grows with N at fixed (delta, z2).
  const auto sq1 = SqueezeParams::from_nbar(1.0);
  double prev = 0.0;
  for (int N : {50, 100, 200, 400}) {
    const double d = overlap_delta_full(sector_window(N, 0.25, sq1));
    CHECK(d > prev);
    prev = d;
  }
}

TEST_CASE("reduced overlap") {
  CHECK(overlap_delta_reduced(4, 900, 0.5) == doctest::Approx(1.0).epsilon(1e-9));
  for (long k : {0L, 2L, 9L})
    CHECK(overlap_delta_reduced(1, k, 0.3) ==
          doctest::Approx(1.0 - std::pow(0.3, k + 1.0)).epsilon(1e-12));

  // Composition-enumeration oracle at K = 3.
  double direct = 0.0;
  for (long n = 0; n <= 10; ++n) {
    long count = 0;
    for ([[maybe_unused]] const auto& c : CompositionRange(static_cast<int>(n), 3)) ++count;
    direct += std::pow(1.0 - 0.5, 3) * std::pow(0.5, static_cast<double>(n)) * count;
  }
  CHECK(overlap_delta_reduced(3, 10, 0.5) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(overlap_delta_reduced(3, 10, 0.5) <= 1.0);
}

TEST_CASE("projected thermal purity") {
  for (double z2 : {0.2, 0.5, 0.8})
    CHECK(purity_beta(1, 4000, z2) ==
          doctest::Approx((1.0 - z2) / (1.0 + z2)).epsilon(1e-9));
  for (int K = 1; K <= 5; ++K)
    CHECK(purity_beta(K, 4000, 0.5) ==
          doctest::Approx(std::pow(1.0 / 3.0, K)).epsilon(1e-9));

  // Submultiplicative cap on a grid.
  for (int K : {1, 2, 3, 5})
    for (double z2 : {0.3, 0.6})
      for (long np : {3L, 10L, 40L})
        CHECK(purity_beta(K, np, z2) <= std::pow((1.0 - z2) / (1.0 + z2), K) + 1e-15);

  // Full-window variant drops the low sectors.
  CHECK(purity_beta(3, 9, 0.5, 4) < purity_beta(3, 9, 0.5));
  double manual = 0.0;
  for (long n = 4; n <= 9; ++n)
    manual += std::pow(0.5, 6) * std::pow(0.25, static_cast<double>(n)) *
              to_logreal(binomial_exact(n + 2, n)).to_double();
  CHECK(purity_beta(3, 9, 0.5, 4) == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("alpha exact vs raw triple sum") {
  for (auto [X, N, lo, hi] : {std::tuple<int, int, long, long>{1, 2, 0, 2},
                              {1, 3, 1, 3},
                              {2, 5, 3, 7},
                              {3, 7, 0, 9}}) {
    REQUIRE(alpha_exact_bignat(X, N, lo, hi) == oracles::alpha_triple_sum(X, N, lo, hi));
  }
}

TEST_CASE("alpha degenerate window single sector") {
  // With n_minus = n_plus = n the bracket collapses to one binomial.
  const int X = 2, N = 6;
  const long n = 5;
  BigNat direct = 0;
  for (long m = 0; m <= n; ++m) {
    const BigNat b = binomial_exact(n - m + N - X - 1, n - m);
    direct += binomial_exact(m + X - 1, m) * b * b;
  }
  CHECK(alpha_exact_bignat(X, N, n, n) == direct);
}

TEST_CASE("alpha log path tracks the exact one") {
  const auto w = make_window(30, 20, 40);
  const double exact = to_logreal(alpha_exact_bignat(12, w)).log2_abs();
  CHECK(alpha_exact(12, w, /*exact_crossover=*/1).log2_abs() ==
        doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("r_opt closed form") {
  for (double m : {0.3, 2.0, 10.0, 250.0})
    CHECK(r_opt(1.0, m) == doctest::Approx(std::sqrt(m / (m + 1.0))).epsilon(1e-14));

  // Golden-section oracle on the objective it is supposed to maximize.
  for (double x : {0.1, 0.5, 0.9}) {
    for (double m : {0.5, 2.0, 10.0, 80.0}) {
      const auto objective = [&](double r) {
        return 2.0 * m * std::log2(r) + x * std::log2(1.0 + r) +
               (2.0 - x) * std::log2(1.0 - r);
      };
      const double r_star = oracles::golden_max(objective, 1e-9, 1.0 - 1e-9);
      CHECK(std::fabs(r_opt(x, m) - r_star) < 1e-8);
    }
  }

  // Approaches 1 from below as the energy grows.
  double prev = 0.0;
  for (double m : {1.0, 10.0, 100.0, 1000.0, 1e6}) {
    const double r = r_opt(0.3, m);
    CHECK(r < 1.0);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("alpha bound dominates alpha exact at the optimal radii") {
  // Spot case from the derivation, then a parameter grid.
  {
    const auto w = make_window(20, 15, 25);
    const double r = r_opt(8.0 / 20.0, 25.0 / 20.0);
    CHECK(alpha_bound(8, 20, 25.0 / 20.0, r, r).log2_abs() >=
          to_logreal(alpha_exact_bignat(8, w)).log2_abs());
  }
  for (int N : {12, 24, 36}) {
    for (int X = 2; X < N; X += N / 3) {
      for (auto [lo_frac, hi_frac] : {std::pair<double, double>{0.8, 1.2}, {0.5, 1.5}}) {
        const long hi = std::lround(hi_frac * N);
        const long lo = std::lround(lo_frac * N);
        const double m_plus = static_cast<double>(hi) / N;
        const double r = r_opt(static_cast<double>(X) / N, m_plus);
        REQUIRE(alpha_bound(X, N, m_plus, r, r).log2_abs() >=
                to_logreal(alpha_exact_bignat(X, N, lo, hi)).log2_abs());
      }
    }
  }
}

TEST_CASE("alpha bound is minimized near the optimal radius") {
  const int N = 40, X = 16;
  const double m_plus = 1.0;
  double best = 1e300, best_r = 0, best_s = 0;
  for (int i = 1; i < 50; ++i) {
    for (int j = 1; j < 50; ++j) {
      const double r = i / 50.0, s = j / 50.0;
      const double v = alpha_bound(X, N, m_plus, r, s).log2_abs();
      if (v < best) {
        best = v;
        best_r = r;
        best_s = s;
      }
    }
  }
  const double r = r_opt(static_cast<double>(X) / N, m_plus);
  CHECK(std::fabs(best_r - r) < 0.03);
  CHECK(std::fabs(best_s - r) < 0.03);

  // Divergence at vanishing radius, kept finite in log space.
  CHECK(alpha_bound(X, N, m_plus, 1e-8, 1e-8).log2_abs() >
        alpha_bound(X, N, m_plus, 1e-4, 1e-4).log2_abs());
  CHECK(alpha_bound(X, N, m_plus, 1e-300, 1e-300).log2_abs() > 7e4);
  CHECK(std::isfinite(alpha_bound(X, N, m_plus, 1e-300, 1e-300).log2_abs()));
  CHECK_THROWS_AS(alpha_bound(X, N, m_plus, 0.0, 0.5), std::domain_error);
}

TEST_CASE("high-energy limit of the alpha exponent") {
  CHECK(alpha_bound_high_energy_exponent(1.0, 7.0) == doctest::Approx(h_therm(7.0)));
  CHECK(std::fabs(alpha_bound_exact_exponent(0.5, 100.0) -
                  alpha_bound_high_energy_exponent(0.5, 100.0)) < 0.05);
  CHECK(std::fabs(alpha_bound_exact_exponent(0.5, 1e4) -
                  alpha_bound_high_energy_exponent(0.5, 1e4)) < 5e-4);
}

TEST_CASE("submultiplicative exponent") {
  CHECK(std::fabs(submult_exponent(0.5, 1e4) - 1.0) < 0.01);  // -> H2(1/2)

  // Peak sits at the even bipartition.
  for (double m : {0.5, 3.0, 50.0}) {
    double best_x = 0, best = -1;
    for (double x = 0.01; x < 0.995; x += 0.001) {
      const double v = submult_exponent(x, m);
      if (v > best) {
        best = v;
        best_x = x;
      }
      CHECK(v > 0.0);
      CHECK(submult_exponent(x, m) == doctest::Approx(submult_exponent(1.0 - x, m)));
    }
    CHECK(std::fabs(best_x - 0.5) < 1e-3 + 1e-9);
  }

  // Whole curve approaches H2(x) at high energy.
  for (double x = 0.05; x < 1.0; x += 0.05)
    CHECK(std::fabs(submult_exponent(x, 1e4) - h2(x)) < 0.01);

  // Exact-dimension oracle at N = 400, m_plus = 5, x = 0.3.
  const int N = 400, X = 120;
  const long n_plus = 5 * N;
  const double lg_ratio = to_logreal(dim_reduced_exact(X, n_plus)).log2_abs() +
                          to_logreal(dim_reduced_exact(N - X, n_plus)).log2_abs() -
                          to_logreal(dim_reduced_exact(N, n_plus)).log2_abs();
  CHECK(std::fabs(lg_ratio / N - submult_exponent(0.3, 5.0)) < 0.02);
}
