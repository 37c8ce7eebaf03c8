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

#ifndef CVERASE_MC_VERIFY_HPP
#define CVERASE_MC_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cverase/decoupling.hpp"
#include "cverase/mc/fock.hpp"

namespace cverase::mc {

/// One verified quantity. sigma_distance is |estimate - reference| in units
/// of stderr (or the slack sign convention noted per record).
struct McRecord {
  std::string quantity;
  double estimate = 0.0;
  double stderr_val = 0.0;
  double reference = 0.0;
  double sigma_distance = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
  bool pass = true;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<McRecord> records;
  bool pass() const {
    for (const auto& r : records)
      if (!r.pass) return false;
    return true;
  }
};

/// JSON lines, one record per line, with the suite name attached.
std::string to_json_lines(const SuiteReport& report);

// Work is split over a fixed number of logical streams (independent of the
// thread count) and merged in stream order, so reports are bit-identical
// for any number of worker threads.
inline constexpr int kNumStreams = 16;

/// Runs job(stream_index, samples_for_stream) for each logical stream on the
/// given number of threads.
void run_stream_jobs(long total_samples, int threads,
                     const std::function<void(int, long)>& job);

/// Samples the Haar lift on one photon sector and checks the empirical
/// average of a twirled pure state against the maximally mixed state.
SuiteReport verify_sector_twirl(int num_modes, int photons, long samples,
                                std::uint64_t seed, int threads);

/// Averages the PLON output over Haar mode unitaries on a truncated Fock
/// space and checks sector-block structure, off-block decay, and both
/// marginals against the derived average. Refuses when the truncated input
/// carries less than 0.99 of the state.
SuiteReport verify_plon_average(int num_modes, int k_inputs, double z2, long n_cutoff,
                                long samples, std::uint64_t seed, int threads);

/// Monte-Carlo double twirl of the swap-pattern operator on a photon-number
/// window; fits the I/F expansion and records which denominator (d_A^2 - 1
/// vs d_A^2 + 1) the data selects. The erased subsystem is the trailing
/// erased_modes modes.
SuiteReport verify_double_twirl(int num_modes, long n_minus, long n_plus,
                                int erased_modes, long samples, std::uint64_t seed,
                                int threads);

/// Estimates E_U tr[rho_RE^2] for the random code on a small window and
/// checks it against the second-moment bound assembled from alpha, beta,
/// Delta. Also replays the decoupled-average purity identity densely.
SuiteReport verify_second_moment(int num_modes, int k_modes, double p, double z2,
                                 long n_minus, long n_plus, long samples,
                                 std::uint64_t seed, Assist assist, int threads);

/// Samples coherent products and estimates zeta = E |<gamma|Pi|gamma>|^2,
/// also checking the first moment against the reduced overlap Delta.
SuiteReport estimate_zeta(int modes, double z2, long n_plus, long samples,
                          std::uint64_t seed, int threads);

/// Numerically replays the coherent-information identity
/// I_c = (1 - 2p) H(rho) for a number-diagonal state via dense eigenvalues.
SuiteReport verify_coherent_info(std::span<const double> spectrum, double p);

}  // namespace cverase::mc

#endif
