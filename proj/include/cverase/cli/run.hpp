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

#ifndef CVERASE_CLI_RUN_HPP
#define CVERASE_CLI_RUN_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace cverase::cli {

inline constexpr const char* kVersion = "cverase 0.1.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid syntax: "start:stop:step" (endpoints inclusive within 1e-12),
/// "v1,v2,..." or a single value.
std::vector<double> parse_grid(const std::string& spec);

struct Table {
  std::string meta;  // rendered as a single '#' comment line
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Comma-separated values, 12 significant digits, '.' decimal point, one
/// leading '#' metadata line.
std::string to_csv(const Table& t);
std::string to_json(const Table& t);

/// Minimal self-contained SVG line chart: first CSV column is x, the rest
/// are series. Throws UsageError on a CSV without data rows.
std::string svg_from_csv(const std::string& csv_text);

Table run_capacity(const std::vector<double>& p_grid, const std::vector<double>& nbar_grid,
                   const std::string& meta);
Table run_rate(const std::vector<double>& p_grid, const std::vector<double>& nbar_list,
               bool assisted, const std::string& meta, double tol = 1e-8);
Table run_pstar(const std::vector<double>& nbar_grid, const std::string& meta,
                double tol = 1e-8);
Table run_constant(const std::vector<double>& p_grid, const std::vector<double>& q_list,
                   double nbar_for_qoptm, const std::string& meta);
Table run_fidelity(const std::vector<double>& mode_counts,
                   const std::vector<double>& nbar_grid, double target_mass,
                   const std::string& meta);
Table run_submult(const std::vector<double>& x_grid, const std::vector<double>& mplus_list,
                  const std::string& meta);

/// Runs one named verification suite (or "all"); streams JSON records to
/// out. Returns 0 when every record passes, 1 otherwise. samples = 0 keeps
/// each suite's default budget.
int run_verify(const std::string& suite, long samples, std::uint64_t seed, int threads,
               std::ostream& out);

}  // namespace cverase::cli

#endif
