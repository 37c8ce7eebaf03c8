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

#include "cverase/cli/run.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "cverase/capacity.hpp"
#include "cverase/decoupling.hpp"
#include "cverase/mc/verify.hpp"
#include "cverase/plon.hpp"

namespace cverase::cli {

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<double> normalized_thermal_spectrum(double nbar, long cutoff) {
  const double z2 = nbar / (nbar + 1.0);
  std::vector<double> spec(cutoff + 1);
  double mass = 0.0;
  for (long n = 0; n <= cutoff; ++n) {
    spec[n] = (1.0 - z2) * std::pow(z2, static_cast<double>(n));
    mass += spec[n];
  }
  for (auto& v : spec) v /= mass;
  return spec;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) throw UsageError("empty grid");
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double start = 0, stop = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0)
      throw UsageError("bad grid '" + spec + "', want start:stop:step");
    const double span = stop - start;
    if (span < -1e-12) throw UsageError("bad grid '" + spec + "': stop < start");
    const long count = static_cast<long>(std::floor(span / step + 1e-9)) + 1;
    for (long k = 0; k < count; ++k) out.push_back(start + k * step);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad grid value '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

std::string to_csv(const Table& t) {
  std::string s = "# " + t.meta + "\n";
  for (size_t i = 0; i < t.header.size(); ++i)
    s += (i ? "," : "") + t.header[i];
  s += '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + fmt12(row[i]);
    s += '\n';
  }
  return s;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["meta"] = t.meta;
  j["columns"] = t.header;
  j["rows"] = t.rows;
  return j.dump(2) + "\n";
}

std::string svg_from_csv(const std::string& csv_text) {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::stringstream ss(csv_text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (header.empty()) {
      header = cells;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(std::stod(c));
    rows.push_back(std::move(row));
  }
  if (header.size() < 2 || rows.empty()) throw UsageError("CSV has no plottable data");

  const double W = 640, H = 480, ml = 70, mr = 20, mt = 20, mb = 50;
  double xmin = rows[0][0], xmax = rows[0][0];
  double ymin = rows[0][1], ymax = rows[0][1];
  for (const auto& r : rows) {
    xmin = std::min(xmin, r[0]);
    xmax = std::max(xmax, r[0]);
    for (size_t c = 1; c < r.size(); ++c) {
      ymin = std::min(ymin, r[c]);
      ymax = std::max(ymax, r[c]);
    }
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  const auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

  char buf[256];
  std::string s;
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                W, H, W, H);
  s += buf;
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                ml, H - mb, W - mr, H - mb);
  s += buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                ml, mt, ml, H - mb);
  s += buf;
  for (size_t c = 1; c < header.size(); ++c) {
    std::string pts;
    for (const auto& r : rows) {
      if (c >= r.size()) continue;
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(r[0]), py(r[c]));
      pts += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"%s\"/>\n",
                  palette[(c - 1) % 8], pts.c_str());
    s += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" fill=\"%s\">%s</text>\n",
                  W - mr - 150.0, mt + 16.0 * c, palette[(c - 1) % 8], header[c].c_str());
    s += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s</text>\n"
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s</text>\n"
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s</text>\n"
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s</text>\n",
                ml - 8.0, H - mb + 16.0, fmt12(xmin).c_str(), W - mr - 40.0, H - mb + 16.0,
                fmt12(xmax).c_str(), 8.0, H - mb, fmt12(ymin).c_str(), 8.0, mt + 12.0,
                fmt12(ymax).c_str());
  s += buf;
  std::snprintf(buf, sizeof(buf), "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s</text>\n",
                (W + ml - mr) / 2 - 20.0, H - 12.0, header[0].c_str());
  s += buf;
  s += "</svg>\n";
  return s;
}

Table run_capacity(const std::vector<double>& p_grid, const std::vector<double>& nbar_grid,
                   const std::string& meta) {
  if (p_grid.empty() || nbar_grid.empty()) throw UsageError("capacity: empty grid");
  Table t;
  t.meta = meta;
  t.header = {"p", "nbar", "q_standard", "q_ea", "c_ea_classical", "q_dv_d2", "q_dv_ea_d2"};
  for (double nbar : nbar_grid)
    for (double p : p_grid)
      t.rows.push_back({p, nbar, q_standard(p, nbar), q_ea(p, nbar),
                        c_ea_classical(p, nbar), q_dv(p, 2), q_dv_ea(p, 2)});
  return t;
}

Table run_rate(const std::vector<double>& p_grid, const std::vector<double>& nbar_list,
               bool assisted, const std::string& meta, double tol) {
  if (p_grid.empty() || nbar_list.empty()) throw UsageError("rate: empty grid");
  const Assist a = assisted ? Assist::entanglement_assisted : Assist::standard;
  Table t;
  t.meta = meta;
  t.header = {"nbar", "p", "q_optm", "rate", "capacity", "gap"};
  for (double nbar : nbar_list)
    for (double p : p_grid) {
      const MaxRate mr = max_rate(nbar, p, a, tol);
      const double cap = assisted ? q_ea(p, nbar) : q_standard(p, nbar);
      t.rows.push_back({nbar, p, mr.q_optm, mr.rate_bits, cap, cap - mr.rate_bits});
    }
  return t;
}

Table run_pstar(const std::vector<double>& nbar_grid, const std::string& meta,
                double tol) {
  if (nbar_grid.empty()) throw UsageError("pstar: empty grid");
  Table t;
  t.meta = meta;
  t.header = {"nbar", "p_star_standard", "p_star_ea"};
  for (double nbar : nbar_grid)
    t.rows.push_back({nbar, p_star(nbar, Assist::standard, tol),
                      p_star(nbar, Assist::entanglement_assisted, tol)});
  return t;
}

Table run_constant(const std::vector<double>& p_grid, const std::vector<double>& q_list,
                   double nbar_for_qoptm, const std::string& meta) {
  if (p_grid.empty() || q_list.empty()) throw UsageError("constant: empty grid");
  Table t;
  t.meta = meta;
  t.header = {"p"};
  for (double q : q_list) {
    t.header.push_back("c_standard_q" + fmt12(q));
    t.header.push_back("c_ea_q" + fmt12(q));
  }
  t.header.push_back("gap_standard_qoptm");
  t.header.push_back("gap_ea_qoptm");
  for (double p : p_grid) {
    std::vector<double> row{p};
    for (double q : q_list) {
      row.push_back(c_standard(p, q));
      row.push_back(c_ea(p, q));
    }
    const MaxRate ms = max_rate(nbar_for_qoptm, p, Assist::standard);
    const MaxRate me = max_rate(nbar_for_qoptm, p, Assist::entanglement_assisted);
    row.push_back(ms.q_optm > 0 ? rate_gap_constant(p, ms.q_optm, Assist::standard) : 0.0);
    row.push_back(me.q_optm > 0
                      ? rate_gap_constant(p, me.q_optm, Assist::entanglement_assisted)
                      : 0.0);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table run_fidelity(const std::vector<double>& mode_counts,
                   const std::vector<double>& nbar_grid, double target_mass,
                   const std::string& meta) {
  if (mode_counts.empty() || nbar_grid.empty()) throw UsageError("fidelity: empty grid");
  Table t;
  t.meta = meta;
  t.header = {"N", "nbar", "z2", "cutoff", "fidelity"};
  for (double nd : mode_counts) {
    const int N = static_cast<int>(nd);
    if (N < 1 || nd != N) throw UsageError("fidelity: N must be a positive integer");
    for (double nbar : nbar_grid) {
      const double z2 = SqueezeParams::from_nbar(nbar).z2;
      const long cutoff = cutoff_for_mass(z2, 1, N, target_mass);
      t.rows.push_back({nd, nbar, z2, static_cast<double>(cutoff),
                        fidelity_ansatz(N, z2, target_mass)});
    }
  }
  return t;
}

Table run_submult(const std::vector<double>& x_grid, const std::vector<double>& mplus_list,
                  const std::string& meta) {
  if (x_grid.empty() || mplus_list.empty()) throw UsageError("submult: empty grid");
  Table t;
  t.meta = meta;
  t.header = {"x"};
  for (double m : mplus_list) t.header.push_back("exponent_mplus" + fmt12(m));
  t.header.push_back("h2_x");
  for (double x : x_grid) {
    std::vector<double> row{x};
    for (double m : mplus_list) row.push_back(submult_exponent(x, m));
    row.push_back(h2(x));
    t.rows.push_back(std::move(row));
  }
  return t;
}

int run_verify(const std::string& suite, long samples, std::uint64_t seed, int threads,
               std::ostream& out) {
  using namespace cverase::mc;
  const auto pick = [&](long dflt) { return samples > 0 ? samples : dflt; };
  std::vector<SuiteReport> reports;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "twirl") {
    reports.push_back(verify_sector_twirl(2, 3, pick(20'000), seed, threads));
    known = true;
  }
  if (all || suite == "plon") {
    reports.push_back(verify_plon_average(2, 1, 0.5, 6, pick(20'000), seed, threads));
    known = true;
  }
  if (all || suite == "double-twirl") {
    reports.push_back(verify_double_twirl(2, 1, 3, 1, pick(50'000), seed, threads));
    known = true;
  }
  if (all || suite == "second-moment") {
    reports.push_back(verify_second_moment(3, 1, 1.0 / 3.0, 0.4, 1, 3, pick(20'000), seed,
                                           Assist::standard, threads));
    reports.push_back(verify_second_moment(3, 1, 1.0 / 3.0, 0.4, 1, 3, pick(20'000), seed,
                                           Assist::entanglement_assisted, threads));
    known = true;
  }
  if (all || suite == "zeta") {
    reports.push_back(estimate_zeta(2, 0.5, 8, pick(50'000), seed, threads));
    known = true;
  }
  if (all || suite == "coherent-info") {
    const auto spectrum = normalized_thermal_spectrum(1.0, 40);
    for (double p : {0.1, 0.25, 0.4, 0.5})
      reports.push_back(verify_coherent_info(spectrum, p));
    known = true;
  }
  if (!known) throw UsageError("unknown verify suite '" + suite + "'");

  bool ok = true;
  for (const auto& rep : reports) {
    out << to_json_lines(rep);
    ok = ok && rep.pass();
  }
  return ok ? 0 : 1;
}

}  // namespace cverase::cli
