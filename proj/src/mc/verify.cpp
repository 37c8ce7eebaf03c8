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

#include "cverase/mc/verify.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "cverase/capacity.hpp"
#include "cverase/ksum.hpp"
#include "cverase/mc/haar.hpp"
#include "cverase/mc/rng.hpp"
#include "cverase/plon.hpp"

namespace cverase::mc {

namespace {

constexpr std::uint64_t kSetupStream = 0xFFFF'0000'0000'0001ULL;

long stream_quota(long total, int stream) {
  return total / kNumStreams + (stream < total % kNumStreams ? 1 : 0);
}

/// Per-element first and second moments of a sampled complex matrix;
/// partials merge in stream order so the result is thread-count independent.
struct MatrixStats {
  Matrix sum;
  Eigen::MatrixXd sumsq;
  long count = 0;

  explicit MatrixStats(int rows = 0, int cols = 0)
      : sum(Matrix::Zero(rows, cols)), sumsq(Eigen::MatrixXd::Zero(rows, cols)) {}

  void accumulate(const Matrix& m) {
    sum += m;
    sumsq += m.cwiseAbs2();
    ++count;
  }

  void merge(const MatrixStats& o) {
    sum += o.sum;
    sumsq += o.sumsq;
    count += o.count;
  }

  Matrix mean() const { return sum / static_cast<double>(count); }

  /// Elementwise variance of the *mean* estimate.
  Eigen::MatrixXd mean_variance() const {
    const double s = static_cast<double>(count);
    Eigen::MatrixXd v = (sumsq / s - sum.cwiseAbs2() / (s * s)).cwiseMax(0.0);
    return v / s;
  }
};

double frobenius(const Matrix& m) { return std::sqrt(m.cwiseAbs2().sum()); }

/// 3-sigma gate on an aggregate deviation: ||dev||_F against the root of the
/// summed per-element variances of the mean.
McRecord frobenius_gate(const std::string& quantity, const Matrix& deviation,
                        const Eigen::MatrixXd& mean_variance, long samples,
                        std::uint64_t seed) {
  McRecord r;
  r.quantity = quantity;
  r.estimate = frobenius(deviation);
  r.stderr_val = std::sqrt(mean_variance.sum());
  r.reference = 0.0;
  r.sigma_distance = r.stderr_val > 0.0 ? r.estimate / r.stderr_val : 0.0;
  r.samples = samples;
  r.seed = seed;
  r.pass = r.estimate <= 3.0 * r.stderr_val;
  return r;
}

double poisson_cdf(long n_max, double lambda) {
  if (lambda == 0.0) return 1.0;
  // Factored log-domain evaluation; exact enough for any lambda seen here.
  const double lg_e = 1.4426950408889634;
  std::vector<double> lg(n_max + 1);
  double lg_term = -lambda * lg_e;
  double lg_max = lg_term;
  for (long j = 0; j <= n_max; ++j) {
    lg[j] = lg_term;
    lg_max = std::max(lg_max, lg_term);
    lg_term += std::log2(lambda / static_cast<double>(j + 1));
  }
  KahanAccumulator acc;
  for (long j = 0; j <= n_max; ++j) acc.add(std::exp2(lg[j] - lg_max));
  return std::min(1.0, std::exp2(lg_max) * acc.total());
}

/// (b_ordinal, e_ordinal) split of every window basis state for a fixed
/// kept/erased mode bipartition (erased = trailing modes).
struct SplitMap {
  FockBasis kept;
  FockBasis erased;
  std::vector<std::pair<int, int>> of;  // indexed by full-basis ordinal

  SplitMap(const FockBasis& full, int erased_modes, long n_plus)
      : kept(FockBasis::window(full.num_modes() - erased_modes, 0, n_plus)),
        erased(FockBasis::window(erased_modes, 0, n_plus)) {
    const int nb = full.num_modes() - erased_modes;
    of.resize(full.dim());
    for (int i = 0; i < full.dim(); ++i) {
      const Composition& c = full.state(i);
      Composition b(c.begin(), c.begin() + nb);
      Composition e(c.begin() + nb, c.end());
      of[i] = {kept.index(b), erased.index(e)};
    }
  }
};

}  // namespace

void run_stream_jobs(long total_samples, int threads,
                     const std::function<void(int, long)>& job) {
  if (threads <= 1) {
    for (int s = 0; s < kNumStreams; ++s) job(s, stream_quota(total_samples, s));
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int s = next.fetch_add(1); s < kNumStreams; s = next.fetch_add(1))
      job(s, stream_quota(total_samples, s));
  };
  std::vector<std::thread> pool;
  const int n_workers = std::min(threads, kNumStreams);
  pool.reserve(n_workers);
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

std::string to_json_lines(const SuiteReport& report) {
  std::string out;
  for (const auto& r : report.records) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["quantity"] = r.quantity;
    j["estimate"] = r.estimate;
    j["stderr"] = r.stderr_val;
    j["reference_value"] = r.reference;
    j["sigma_distance"] = r.sigma_distance;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["pass"] = r.pass;
    if (!r.note.empty()) j["note"] = r.note;
    out += j.dump();
    out += '\n';
  }
  return out;
}

SuiteReport verify_sector_twirl(int num_modes, int photons, long samples,
                                std::uint64_t seed, int threads) {
  const FockBasis basis(num_modes, {photons});
  const int D = basis.dim();
  if (D > 50) throw std::domain_error("verify_sector_twirl: sector dimension budget is 50");

  RngStream setup(seed, kSetupStream);
  Vector psi(D);
  for (int i = 0; i < D; ++i) psi(i) = setup.complex_gaussian();
  psi.normalize();

  std::vector<MatrixStats> partial(kNumStreams, MatrixStats(D, D));
  run_stream_jobs(samples, threads, [&](int s, long quota) {
    RngStream rng(seed, static_cast<std::uint64_t>(s));
    MatrixStats& acc = partial[s];
    for (long i = 0; i < quota; ++i) {
      const Matrix lift = sym_lift(haar_unitary(num_modes, rng), photons);
      const Vector v = lift * psi;
      acc.accumulate(v * v.adjoint());
    }
  });
  MatrixStats stats(D, D);
  for (const auto& p : partial) stats.merge(p);

  const Matrix dev = stats.mean() - Matrix::Identity(D, D) / static_cast<double>(D);
  const double dist = frobenius(dev);
  const double sigma_ref =
      std::sqrt((1.0 - 1.0 / D) / static_cast<double>(samples));

  SuiteReport rep{"sector_twirl", {}};
  McRecord r;
  r.quantity = "frobenius_distance_to_maximally_mixed";
  r.estimate = dist;
  r.stderr_val = sigma_ref;
  r.reference = 0.0;
  r.sigma_distance = dist / sigma_ref;
  r.samples = samples;
  r.seed = seed;
  r.pass = dist < 3.0 * sigma_ref;
  r.note = "N=" + std::to_string(num_modes) + " n=" + std::to_string(photons) +
           " D=" + std::to_string(D);
  rep.records.push_back(std::move(r));
  return rep;
}

SuiteReport verify_plon_average(int num_modes, int k_inputs, double z2, long n_cutoff,
                                long samples, std::uint64_t seed, int threads) {
  if (num_modes > 3 || k_inputs < 1 || k_inputs > num_modes)
    throw std::domain_error("verify_plon_average: dense budget is N <= 3, 1 <= K <= N");
  const double mass = [&] {
    KahanAccumulator m;
    for (long n = 0; n <= n_cutoff; ++n)
      m.add(std::exp2(k_inputs * std::log2(1.0 - z2) + n * std::log2(z2) +
                      log2_binomial(n + k_inputs - 1, n)));
    return m.total();
  }();
  if (mass < 0.99)
    throw std::domain_error("verify_plon_average: truncated input mass " +
                            std::to_string(mass) + " < 0.99, inconclusive");

  const FockBasis ref_basis = FockBasis::window(k_inputs, 0, n_cutoff);
  const FockBasis out_basis = FockBasis::window(num_modes, 0, n_cutoff);
  const int dR = ref_basis.dim();
  const int dA = out_basis.dim();
  const double z = std::sqrt(z2);

  // TMSV amplitudes and the input ordinal (K pair modes, then vacua) per
  // reference configuration.
  std::vector<double> amp(dR);
  std::vector<int> input_ordinal(dR);
  std::vector<int> sector_offset(dR);
  for (int r = 0; r < dR; ++r) {
    const long n = ref_basis.total(r);
    amp[r] = std::pow(1.0 - z2, 0.5 * k_inputs) * std::pow(z, static_cast<double>(n));
    Composition in(ref_basis.state(r));
    in.resize(num_modes, 0);
    input_ordinal[r] = out_basis.index(in) - out_basis.sector_range(n).first;
    sector_offset[r] = out_basis.sector_range(n).first;
  }

  const int dJoint = dR * dA;
  std::vector<MatrixStats> partial(kNumStreams, MatrixStats(dJoint, dJoint));
  std::vector<MatrixStats> partial_margR(kNumStreams, MatrixStats(dR, dR));
  std::vector<MatrixStats> partial_margA(kNumStreams, MatrixStats(dA, 1));
  run_stream_jobs(samples, threads, [&](int s, long quota) {
    RngStream rng(seed, static_cast<std::uint64_t>(s));
    Vector state(dJoint);
    for (long i = 0; i < quota; ++i) {
      const Matrix u = haar_unitary(num_modes, rng);
      state.setZero();
      for (int r = 0; r < dR; ++r) {
        const long n = ref_basis.total(r);
        const Matrix lift = sym_lift(u, static_cast<int>(n));
        for (int a = 0; a < lift.rows(); ++a)
          state(static_cast<Eigen::Index>(r) * dA + sector_offset[r] + a) =
              amp[r] * lift(a, input_ordinal[r]);
      }
      const Matrix rho = state * state.adjoint();
      partial[s].accumulate(rho);
      // Marginals accumulated per sample so their error bars are direct.
      Matrix margR = Matrix::Zero(dR, dR);
      Matrix margA = Matrix::Zero(dA, 1);
      for (int r = 0; r < dR; ++r)
        for (int rp = 0; rp < dR; ++rp)
          for (int a = 0; a < dA; ++a)
            margR(r, rp) += rho(static_cast<Eigen::Index>(r) * dA + a,
                                static_cast<Eigen::Index>(rp) * dA + a);
      for (int a = 0; a < dA; ++a)
        for (int r = 0; r < dR; ++r)
          margA(a, 0) += rho(static_cast<Eigen::Index>(r) * dA + a,
                             static_cast<Eigen::Index>(r) * dA + a).real();
      partial_margR[s].accumulate(margR);
      partial_margA[s].accumulate(margA);
    }
  });
  MatrixStats stats(dJoint, dJoint), statsR(dR, dR), statsA(dA, 1);
  for (int s = 0; s < kNumStreams; ++s) {
    stats.merge(partial[s]);
    statsR.merge(partial_margR[s]);
    statsA.merge(partial_margA[s]);
  }

  // Derived average: weight (1-z2)^K z2^n / C(n+N-1, n) on every diagonal
  // element with matching reference and output totals; zero elsewhere.
  Matrix model = Matrix::Zero(dJoint, dJoint);
  for (int r = 0; r < dR; ++r) {
    const long n = ref_basis.total(r);
    const auto [lo, hi] = out_basis.sector_range(n);
    const double w = std::exp2(k_inputs * std::log2(1.0 - z2) + n * std::log2(z2) -
                               log2_binomial(n + num_modes - 1, n));
    for (int a = lo; a < hi; ++a)
      model(static_cast<Eigen::Index>(r) * dA + a,
            static_cast<Eigen::Index>(r) * dA + a) = w;
  }

  const Matrix mean = stats.mean();
  const Eigen::MatrixXd var = stats.mean_variance();

  SuiteReport rep{"plon_average", {}};
  {
    McRecord r;
    r.quantity = "truncation_mass";
    r.estimate = mass;
    r.reference = 1.0;
    r.samples = samples;
    r.seed = seed;
    r.pass = mass >= 0.99;
    rep.records.push_back(std::move(r));
  }
  {
    // Support of the model: diagonal elements with matched sector totals.
    double max_dev = 0.0;
    double fro2 = 0.0, noise2 = 0.0;
    for (int i = 0; i < dJoint; ++i) {
      if (model(i, i).real() == 0.0) continue;
      const double d = std::abs(mean(i, i) - model(i, i));
      max_dev = std::max(max_dev, d);
      fro2 += d * d;
      noise2 += var(i, i);
    }
    McRecord r;
    r.quantity = "sector_block_max_abs_deviation";
    r.estimate = max_dev;
    r.stderr_val = std::sqrt(noise2);
    r.sigma_distance = r.stderr_val > 0 ? std::sqrt(fro2) / r.stderr_val : 0.0;
    r.samples = samples;
    r.seed = seed;
    r.pass = max_dev < 0.02 && std::sqrt(fro2) <= 3.0 * r.stderr_val;
    rep.records.push_back(std::move(r));
  }
  {
    Matrix off_dev = mean - model;
    Eigen::MatrixXd off_var = var;
    for (int i = 0; i < dJoint; ++i)
      if (model(i, i).real() != 0.0) {
        off_dev(i, i) = 0.0;
        off_var(i, i) = 0.0;
      }
    McRecord r = frobenius_gate("off_block_frobenius", off_dev, off_var, samples, seed);
    r.note = "haar average must be photon-number block diagonal";
    rep.records.push_back(std::move(r));
  }
  {
    Matrix modelR = Matrix::Zero(dR, dR);
    for (int r = 0; r < dR; ++r)
      modelR(r, r) = std::exp2(k_inputs * std::log2(1.0 - z2) +
                               ref_basis.total(r) * std::log2(z2));
    McRecord r = frobenius_gate("reference_marginal_vs_thermal",
                                statsR.mean() - modelR, statsR.mean_variance(),
                                samples, seed);
    rep.records.push_back(std::move(r));
  }
  {
    Matrix modelA = Matrix::Zero(dA, 1);
    for (int a = 0; a < dA; ++a)
      modelA(a, 0) = f_coeff(out_basis.total(a), num_modes, k_inputs, z2);
    McRecord r = frobenius_gate("output_marginal_vs_f_spectrum",
                                statsA.mean() - modelA, statsA.mean_variance(),
                                samples, seed);
    rep.records.push_back(std::move(r));
  }
  return rep;
}

SuiteReport verify_double_twirl(int num_modes, long n_minus, long n_plus,
                                int erased_modes, long samples, std::uint64_t seed,
                                int threads) {
  const FockBasis basis = FockBasis::window(num_modes, n_minus, n_plus);
  const int d = basis.dim();
  if (d > 16) throw std::domain_error("verify_double_twirl: window dimension budget is 16");
  if (erased_modes < 1 || erased_modes >= num_modes)
    throw std::domain_error("verify_double_twirl: need 1 <= erased < N");
  const int d2 = d * d;
  const int nb = num_modes - erased_modes;

  // X = Pi (F_EE' x 1_BB') Pi is a partial permutation of the doubled basis:
  // swap the erased-mode content of the two copies, keep only in-window images.
  std::vector<int> image(d2, -1);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      Composition kp = basis.state(k);
      Composition lp = basis.state(l);
      for (int m = nb; m < num_modes; ++m) std::swap(kp[m], lp[m]);
      const int ki = basis.index(kp);
      const int li = basis.index(lp);
      if (ki >= 0 && li >= 0) image[k * d + l] = ki * d + li;
    }
  }

  std::vector<MatrixStats> partial(kNumStreams, MatrixStats(d2, d2));
  run_stream_jobs(samples, threads, [&](int s, long quota) {
    RngStream rng(seed, static_cast<std::uint64_t>(s));
    Matrix w(d2, d2), xw(d2, d2);
    for (long i = 0; i < quota; ++i) {
      const Matrix u = haar_unitary(d, rng);
      for (int a = 0; a < d; ++a)  // w = kron(u, u)
        for (int b = 0; b < d; ++b)
          w.block(static_cast<Eigen::Index>(a) * d, static_cast<Eigen::Index>(b) * d,
                  d, d) = u(a, b) * u;
      xw.setZero();
      for (int row = 0; row < d2; ++row)
        if (image[row] >= 0) xw.row(row) = w.row(image[row]);
      partial[s].accumulate(w.adjoint() * xw);
    }
  });
  MatrixStats stats(d2, d2);
  for (const auto& p : partial) stats.merge(p);

  const double alpha_e =
      to_logreal(alpha_exact_bignat(erased_modes, num_modes, n_minus, n_plus)).to_double();
  const double alpha_b =
      to_logreal(alpha_exact_bignat(nb, num_modes, n_minus, n_plus)).to_double();
  const double dd = static_cast<double>(d);

  const auto model_for = [&](double denom) {
    const double d1 = (alpha_e - alpha_b / dd) / denom;
    const double d2c = (alpha_b - alpha_e / dd) / denom;
    Matrix m = d1 * Matrix::Identity(d2, d2);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) m(l * d + k, k * d + l) += d2c;
    return m;
  };
  const Matrix model_minus = model_for(dd * dd - 1.0);
  const Matrix model_plus = model_for(dd * dd + 1.0);

  const Matrix mean = stats.mean();
  const Eigen::MatrixXd var = stats.mean_variance();
  const double ssr_minus = (mean - model_minus).cwiseAbs2().sum();
  const double ssr_plus = (mean - model_plus).cwiseAbs2().sum();

  SuiteReport rep{"double_twirl", {}};
  {
    McRecord r;
    r.quantity = "max_abs_deviation_from_identity_swap_form";
    r.estimate = (mean - model_minus).cwiseAbs().maxCoeff();
    r.stderr_val = std::sqrt(var.sum());
    r.sigma_distance =
        r.stderr_val > 0 ? frobenius(mean - model_minus) / r.stderr_val : 0.0;
    r.samples = samples;
    r.seed = seed;
    r.pass = r.estimate < 0.02 && frobenius(mean - model_minus) <= 3.0 * r.stderr_val;
    r.note = "d_A=" + std::to_string(d) + " alpha_E=" + std::to_string(alpha_e) +
             " alpha_B=" + std::to_string(alpha_b);
    rep.records.push_back(std::move(r));
  }
  {
    McRecord r;
    r.quantity = "trace_preserved_under_twirl";
    r.estimate = mean.trace().real();
    r.reference = alpha_e;
    r.stderr_val = 0.0;
    r.sigma_distance = 0.0;
    r.samples = samples;
    r.seed = seed;
    r.pass = std::abs(mean.trace().real() - alpha_e) <= 1e-8 * alpha_e;
    rep.records.push_back(std::move(r));
  }
  {
    McRecord r;
    r.quantity = "denominator_residual_ratio";
    r.estimate = ssr_minus / ssr_plus;
    r.reference = 0.0;
    r.samples = samples;
    r.seed = seed;
    r.pass = ssr_minus < ssr_plus;
    r.note = ssr_minus < ssr_plus ? "selected denominator dA^2-1"
                                  : "selected denominator dA^2+1";
    rep.records.push_back(std::move(r));
  }
  return rep;
}

SuiteReport verify_second_moment(int num_modes, int k_modes, double p, double z2,
                                 long n_minus, long n_plus, long samples,
                                 std::uint64_t seed, Assist assist, int threads) {
  if (num_modes > 3) throw std::domain_error("verify_second_moment: dense budget is N <= 3");
  if (k_modes < 1 || k_modes >= num_modes)
    throw std::domain_error("verify_second_moment: need 1 <= K < N");
  const int N = num_modes;
  const int K = k_modes;
  const int M = static_cast<int>(std::floor(p * N + 0.5));  // erased, trailing modes
  if (M < 1 || M >= N) throw std::domain_error("verify_second_moment: round(p N) not in [1, N-1]");
  const auto squeeze = SqueezeParams::from_z2(z2);

  const FockBasis a_basis = FockBasis::window(N, n_minus, n_plus);
  const int dA = a_basis.dim();
  const SplitMap split(a_basis, M, n_plus);  // A = B (kept) + E (erased, trailing)
  const int dE = split.erased.dim();
  const int dB = split.kept.dim();
  const double z = std::sqrt(z2);

  // Coherent ancilla draw (standard case only).
  RngStream setup(seed, kSetupStream);
  std::vector<std::complex<double>> gamma(N - K);
  double lambda = 0.0;
  for (auto& g : gamma) {
    g = std::sqrt(squeeze.nbar) * setup.complex_gaussian();
    lambda += std::norm(g);
  }

  // Partner split of each window composition: the leading K modes pair with
  // the reference, the rest with Bbar (assisted) or carry gamma (standard).
  const SplitMap partner_split(a_basis, N - K, n_plus);
  const int dR = partner_split.kept.dim();
  const int dBbar = partner_split.erased.dim();

  // In-window input amplitudes. The truncation keeps totals small, so plain
  // complex arithmetic is safe here.
  std::vector<std::complex<double>> amp(dA);
  for (int x = 0; x < dA; ++x) {
    const Composition& c = a_basis.state(x);
    if (assist == Assist::standard) {
      long n_tmsv = 0;
      for (int m = 0; m < K; ++m) n_tmsv += c[m];
      std::complex<double> v =
          std::pow(1.0 - z2, 0.5 * K) * std::pow(z, static_cast<double>(n_tmsv));
      for (int m = K; m < N; ++m) {
        const int k = c[m];
        v *= std::exp(-0.5 * std::norm(gamma[m - K])) * std::pow(gamma[m - K], k) /
             std::sqrt(std::tgamma(k + 1.0));
      }
      amp[x] = v;
    } else {
      amp[x] = std::pow(1.0 - z2, 0.5 * N) *
               std::pow(z, static_cast<double>(a_basis.total(x)));
    }
  }

  // rho_RE rows are (r, e) pairs; columns of the Gram factor run over the
  // traced subsystems.
  const int dRE = dR * dE;
  std::vector<double> purity_partial(kNumStreams, 0.0);
  std::vector<double> purity_sq_partial(kNumStreams, 0.0);
  std::vector<Matrix> rho_mean_partial(kNumStreams, Matrix::Zero(dRE, dRE));
  std::vector<long> count_partial(kNumStreams, 0);

  run_stream_jobs(samples, threads, [&](int s, long quota) {
    RngStream rng(seed, static_cast<std::uint64_t>(s));
    KahanAccumulator purity_sum, purity_sq;
    Matrix rho_sum = Matrix::Zero(dRE, dRE);
    for (long i = 0; i < quota; ++i) {
      const Matrix u = haar_unitary(dA, rng);
      Matrix gram;  // (r, e) x traced
      if (assist == Assist::standard) {
        gram = Matrix::Zero(dRE, dB);
        for (int x = 0; x < dA; ++x) {
          if (amp[x] == std::complex<double>(0.0)) continue;
          const int r = partner_split.of[x].first;  // leading-K content of x
          for (int a = 0; a < dA; ++a) {
            const auto [b, e] = split.of[a];
            gram(static_cast<Eigen::Index>(r) * dE + e, b) += amp[x] * u(a, x);
          }
        }
      } else {
        gram = Matrix::Zero(dRE, dBbar * dB);
        for (int x = 0; x < dA; ++x) {
          const auto [r, bbar] = partner_split.of[x];
          for (int a = 0; a < dA; ++a) {
            const auto [b, e] = split.of[a];
            gram(static_cast<Eigen::Index>(r) * dE + e,
                 static_cast<Eigen::Index>(bbar) * dB + b) += amp[x] * u(a, x);
          }
        }
      }
      const Matrix rho = gram * gram.adjoint();
      const double pur = rho.cwiseAbs2().sum();
      purity_sum.add(pur);
      purity_sq.add(pur * pur);
      rho_sum += rho;
    }
    purity_partial[s] = purity_sum.total();
    purity_sq_partial[s] = purity_sq.total();
    rho_mean_partial[s] = rho_sum;
    count_partial[s] = quota;
  });

  KahanAccumulator purity_total, puritysq_total;
  Matrix rho_mean = Matrix::Zero(dRE, dRE);
  for (int s = 0; s < kNumStreams; ++s) {
    purity_total.add(purity_partial[s]);
    puritysq_total.add(purity_sq_partial[s]);
    rho_mean += rho_mean_partial[s];
  }
  const double S = static_cast<double>(samples);
  const double est = purity_total.total() / S;
  const double var = std::max(0.0, puritysq_total.total() / S - est * est);
  const double se = std::sqrt(var / S);
  rho_mean /= S;

  // Second-moment bound from the module-level quantities.
  const SectorWindow w = window_from_bounds(N, n_minus, n_plus, squeeze);
  const double alpha_e = to_logreal(alpha_exact_bignat(M, w)).to_double();
  const double alpha_b = to_logreal(alpha_exact_bignat(N - M, w)).to_double();
  const double d_a = to_logreal(dim_typical_exact(w)).to_double();
  const double denom = d_a * d_a - 1.0;
  const double d1 = (alpha_e - alpha_b / d_a) / denom;
  const double d2 = (alpha_b - alpha_e / d_a) / denom;
  const double beta_k = purity_beta(K, n_plus, z2);
  const double delta_k = overlap_delta_reduced(K, n_plus, z2);
  double bound;
  std::string bound_note;
  if (assist == Assist::standard) {
    const double ov = poisson_cdf(n_plus, lambda);
    bound = (d1 * beta_k + d2 * delta_k * delta_k) * ov * ov;
    bound_note = "coherent overlap " + std::to_string(ov);
  } else {
    const double beta_rest = purity_beta(N - K, n_plus, z2);
    const double delta_rest = overlap_delta_reduced(N - K, n_plus, z2);
    bound = d1 * beta_k * delta_rest * delta_rest + d2 * delta_k * delta_k * beta_rest;
    bound_note = "";
  }

  SuiteReport rep{"second_moment", {}};
  {
    McRecord r;
    r.quantity = "mc_second_moment_vs_bound";
    r.estimate = est;
    r.stderr_val = se;
    r.reference = bound;
    r.sigma_distance = se > 0 ? (bound - est) / se : 0.0;
    r.samples = samples;
    r.seed = seed;
    r.pass = bound - est >= -3.0 * se;
    r.note = bound_note;
    rep.records.push_back(std::move(r));
  }
  {
    // Variance non-negativity: E tr[rho^2] >= tr[(E rho)^2] up to MC error.
    const double pur_of_mean = rho_mean.cwiseAbs2().sum();
    McRecord r;
    r.quantity = "second_moment_vs_purity_of_mean";
    r.estimate = est - pur_of_mean;
    r.stderr_val = se;
    r.sigma_distance = se > 0 ? r.estimate / se : 0.0;
    r.samples = samples;
    r.seed = seed;
    r.pass = r.estimate >= -3.0 * se;
    rep.records.push_back(std::move(r));
  }
  {
    // Dense replay of the decoupled-average purity alpha_E beta_K / d_A^2.
    Matrix proj = Matrix::Identity(dA, dA);
    Matrix rho_e_avg = partial_trace(proj, a_basis, [&] {
      std::vector<int> keep;
      for (int m = N - M; m < N; ++m) keep.push_back(m);
      return keep;
    }(), split.erased) / d_a;
    const double pur_e = rho_e_avg.cwiseAbs2().sum();
    const double got = pur_e * beta_k;
    const double want = alpha_e * beta_k / (d_a * d_a);
    McRecord r;
    r.quantity = "decoupled_average_purity_identity";
    r.estimate = got;
    r.reference = want;
    r.samples = 0;
    r.seed = seed;
    r.pass = std::abs(got - want) <= 1e-10 * std::abs(want);
    rep.records.push_back(std::move(r));
  }
  return rep;
}

SuiteReport estimate_zeta(int modes, double z2, long n_plus, long samples,
                          std::uint64_t seed, int threads) {
  if (modes < 1) throw std::domain_error("estimate_zeta: need modes >= 1");
  const double nbar = SqueezeParams::from_z2(z2).nbar;

  std::vector<double> ov_partial(kNumStreams, 0.0), ov2_partial(kNumStreams, 0.0),
      ov4_partial(kNumStreams, 0.0);
  std::vector<bool> all_le_one(kNumStreams, true);
  run_stream_jobs(samples, threads, [&](int s, long quota) {
    RngStream rng(seed, static_cast<std::uint64_t>(s));
    KahanAccumulator a1, a2, a4;
    bool ok = true;
    for (long i = 0; i < quota; ++i) {
      double lambda = 0.0;
      for (int m = 0; m < modes; ++m) lambda += nbar * std::norm(rng.complex_gaussian());
      const double ov = poisson_cdf(n_plus, lambda);
      ok = ok && ov <= 1.0 + 1e-12;
      a1.add(ov);
      a2.add(ov * ov);
      a4.add(ov * ov * ov * ov);
    }
    ov_partial[s] = a1.total();
    ov2_partial[s] = a2.total();
    ov4_partial[s] = a4.total();
    all_le_one[s] = ok;
  });
  KahanAccumulator t1, t2, t4;
  bool ok = true;
  for (int s = 0; s < kNumStreams; ++s) {
    t1.add(ov_partial[s]);
    t2.add(ov2_partial[s]);
    t4.add(ov4_partial[s]);
    ok = ok && all_le_one[s];
  }
  const double S = static_cast<double>(samples);
  const double mean_ov = t1.total() / S;
  const double mean_ov2 = t2.total() / S;
  const double se_ov = std::sqrt(std::max(0.0, mean_ov2 - mean_ov * mean_ov) / S);
  const double mean_ov4 = t4.total() / S;
  const double se_zeta = std::sqrt(std::max(0.0, mean_ov4 - mean_ov2 * mean_ov2) / S);

  SuiteReport rep{"zeta", {}};
  {
    McRecord r;
    r.quantity = "zeta_estimate";
    r.estimate = mean_ov2;
    r.stderr_val = se_zeta;
    r.reference = 1.0;  // the bound used when zeta is not estimated
    r.sigma_distance = se_zeta > 0 ? (1.0 - mean_ov2) / se_zeta : 0.0;
    r.samples = samples;
    r.seed = seed;
    r.pass = ok && mean_ov2 <= 1.0 + 3.0 * se_zeta;
    r.note = "per-sample projector expectations all <= 1";
    rep.records.push_back(std::move(r));
  }
  {
    McRecord r;
    r.quantity = "first_moment_matches_reduced_overlap";
    r.estimate = mean_ov;
    r.stderr_val = se_ov;
    r.reference = overlap_delta_reduced(modes, n_plus, z2);
    r.sigma_distance = se_ov > 0 ? std::abs(mean_ov - r.reference) / se_ov : 0.0;
    r.samples = samples;
    r.seed = seed;
    r.pass = std::abs(mean_ov - r.reference) <= 3.0 * se_ov;
    rep.records.push_back(std::move(r));
  }
  return rep;
}

SuiteReport verify_coherent_info(std::span<const double> spectrum, double p) {
  const int n = static_cast<int>(spectrum.size());
  // Channel output and complement as explicit block-diagonal densities:
  // {(1-p) lambda_i} + {p} and {p lambda_i} + {1-p}.
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n + 1, n + 1);
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    out(i, i) = (1.0 - p) * spectrum[i];
    comp(i, i) = p * spectrum[i];
  }
  out(n, n) = p;
  comp(n, n) = 1.0 - p;

  const auto entropy = [](const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    double h = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const double lam = es.eigenvalues()(i);
      if (lam > 1e-300) h -= lam * std::log2(lam);
    }
    return h;
  };
  const double ic = entropy(out) - entropy(comp);
  const double want = coherent_info_erasure_diag(spectrum, p);

  SuiteReport rep{"coherent_info", {}};
  McRecord r;
  r.quantity = "identity_deviation";
  r.estimate = std::abs(ic - want);
  r.reference = 0.0;
  r.samples = 0;
  r.pass = r.estimate < 1e-9;
  r.note = "I_c=" + std::to_string(ic) + " (1-2p)H=" + std::to_string(want);
  rep.records.push_back(std::move(r));
  return rep;
}

}  // namespace cverase::mc
