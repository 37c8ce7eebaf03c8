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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cverase/cli/run.hpp"

namespace {

using cverase::cli::Table;
using cverase::cli::UsageError;

void emit(const Table& t, const std::string& format, const std::string& out_path) {
  std::string text;
  if (format == "csv") {
    text = cverase::cli::to_csv(t);
  } else if (format == "json") {
    text = cverase::cli::to_json(t);
  } else {
    throw UsageError("unknown format '" + format + "'");
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + out_path);
    f << text;
  }
}

std::string meta_line(const std::string& cmd, const std::vector<std::string>& kv) {
  std::string m = std::string(cverase::cli::kVersion) + " cmd=" + cmd;
  for (const auto& s : kv) m += " " + s;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CV erasure-channel capacities, typical-subspace combinatorics, "
               "random-code exponents and Haar-average verification"};
  app.require_subcommand(1);

  std::string p_spec = "0:0.5:0.05", q_spec = "0.368,0.271", nbar_spec = "1",
              x_spec = "0.02:0.98:0.02", mplus_spec = "1,10,100", modes_spec = "100";
  std::string out_path, format = "csv", suite = "all";
  double mass = 0.999;
  double tol = 1e-8;
  double nbar_qoptm = 10.0;
  bool assisted = false;
  long samples = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string plot_csv, plot_svg;

  auto* cap = app.add_subcommand("capacity", "Erasure-channel capacities over a (p, nbar) grid");
  cap->add_option("--p", p_spec, "erasure probability grid");
  cap->add_option("--nbar", nbar_spec, "energy constraint grid");

  auto* rate = app.add_subcommand("rate", "Maximum random-code rate over a p grid");
  rate->add_option("--p", p_spec, "erasure probability grid");
  rate->add_option("--nbar", nbar_spec, "energy constraint list");
  rate->add_flag("--assisted", assisted, "entanglement-assisted code");
  rate->add_option("--tol", tol, "bisection tolerance");

  auto* pst = app.add_subcommand("pstar", "Critical erasure probability vs nbar");
  pst->add_option("--nbar", nbar_spec, "energy constraint grid");
  pst->add_option("--tol", tol, "bisection tolerance");

  auto* cst = app.add_subcommand("constant", "Energy-independent gap constants over p");
  cst->add_option("--p", p_spec, "erasure probability grid");
  cst->add_option("--q", q_spec, "fixed rate fractions");
  cst->add_option("--nbar", nbar_qoptm, "energy used for the q_optm columns");

  auto* fid = app.add_subcommand("fidelity", "Average-state fidelity to the product ansatz");
  fid->add_option("--modes", modes_spec, "mode counts N");
  fid->add_option("--nbar", nbar_spec, "energy grid");
  fid->add_option("--mass", mass, "total-photon mass captured by the cutoff");

  auto* sub = app.add_subcommand("submult", "Submultiplicative dimension exponent over x");
  sub->add_option("--x", x_spec, "subsystem fraction grid");
  sub->add_option("--mplus", mplus_spec, "per-mode energy list");

  auto* ver = app.add_subcommand("verify", "Monte-Carlo verification suites (JSON records)");
  ver->add_option("suite", suite,
                  "twirl | plon | double-twirl | second-moment | zeta | coherent-info | all");
  ver->add_option("--samples", samples, "override per-suite sample budgets");
  ver->add_option("--seed", seed, "RNG seed");
  ver->add_option("--threads", threads, "worker threads");

  auto* plot = app.add_subcommand("plot", "Render a CSV table to an SVG line chart");
  plot->add_option("csv", plot_csv, "input CSV path")->required();
  plot->add_option("svg", plot_svg, "output SVG path")->required();

  for (auto* c : {cap, rate, pst, cst, fid, sub}) {
    c->add_option("--out", out_path, "output path (default stdout)");
    c->add_option("--format", format, "csv | json");
  }
  ver->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);

    if (cap->parsed()) {
      emit(cverase::cli::run_capacity(
               cverase::cli::parse_grid(p_spec), cverase::cli::parse_grid(nbar_spec),
               meta_line("capacity", {"p=" + p_spec, "nbar=" + nbar_spec})),
           format, out_path);
    } else if (rate->parsed()) {
      emit(cverase::cli::run_rate(
               cverase::cli::parse_grid(p_spec), cverase::cli::parse_grid(nbar_spec),
               assisted,
               meta_line("rate", {"p=" + p_spec, "nbar=" + nbar_spec,
                                  std::string("assisted=") + (assisted ? "1" : "0")}),
               tol),
           format, out_path);
    } else if (pst->parsed()) {
      emit(cverase::cli::run_pstar(cverase::cli::parse_grid(nbar_spec),
                                   meta_line("pstar", {"nbar=" + nbar_spec}), tol),
           format, out_path);
    } else if (cst->parsed()) {
      emit(cverase::cli::run_constant(
               cverase::cli::parse_grid(p_spec), cverase::cli::parse_grid(q_spec),
               nbar_qoptm,
               meta_line("constant", {"p=" + p_spec, "q=" + q_spec,
                                      "nbar=" + std::to_string(nbar_qoptm)})),
           format, out_path);
    } else if (fid->parsed()) {
      emit(cverase::cli::run_fidelity(
               cverase::cli::parse_grid(modes_spec), cverase::cli::parse_grid(nbar_spec),
               mass,
               meta_line("fidelity", {"modes=" + modes_spec, "nbar=" + nbar_spec,
                                      "mass=" + std::to_string(mass)})),
           format, out_path);
    } else if (sub->parsed()) {
      emit(cverase::cli::run_submult(
               cverase::cli::parse_grid(x_spec), cverase::cli::parse_grid(mplus_spec),
               meta_line("submult", {"x=" + x_spec, "mplus=" + mplus_spec})),
           format, out_path);
    } else if (ver->parsed()) {
      std::ostringstream buf;
      const int rc = cverase::cli::run_verify(suite, samples, seed, threads, buf);
      if (out_path.empty()) {
        std::cout << buf.str();
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw UsageError("cannot write " + out_path);
        f << buf.str();
      }
      return rc;
    } else if (plot->parsed()) {
      std::ifstream in(plot_csv, std::ios::binary);
      if (!in) throw UsageError("cannot read " + plot_csv);
      std::stringstream content;
      content << in.rdbuf();
      const std::string svg = cverase::cli::svg_from_csv(content.str());
      std::ofstream f(plot_svg, std::ios::binary);
      if (!f) throw UsageError("cannot write " + plot_svg);
      f << svg;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
