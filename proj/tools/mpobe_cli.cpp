// Copyright 2026 The mpobe authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpobe/circuit.hpp"
#include "mpobe/costs.hpp"
#include "mpobe/io.hpp"
#include "mpobe/lcu.hpp"
#include "mpobe/mpo.hpp"
#include "mpobe/qet.hpp"
#include "mpobe/signal.hpp"

namespace {

using namespace mpobe;

std::string format_number(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

struct Pipeline {
  ModelSpec spec;
  Mpo model;
  PaddedMpo padded;
  BlockEncoding be;
  Gate prep_col;
  Gate prep_row;
  CMatrix hamiltonian;
};

Pipeline run_pipeline(const std::string& model_path) {
  Pipeline p;
  p.spec = load_model_spec(model_path);
  p.model = build_mpo(p.spec);
  p.padded = normalize(pad_to_power_of_two(p.model), p.spec.normalization,
                       p.spec.explicit_norm);
  p.be = assemble_block_encoding(p.padded, dilate_sites(p.padded));
  auto [pc, pr] = prep_gates(p.padded, p.be.layout);
  p.prep_col = pc;
  p.prep_row = pr;
  p.hamiltonian = contract_dense(p.model);
  return p;
}

int cmd_verify(const std::string& model_path, double tolerance,
               const std::string& out_path) {
  const Pipeline p = run_pipeline(model_path);

  double dilation_err = 0.0;
  for (const DilationResult& r : dilate_sites(p.padded)) {
    dilation_err = std::max(dilation_err, r.residual);
    dilation_err = std::max(dilation_err, unitarity_error(r.unitary));
  }

  const CMatrix block = extract_block(p.be.circuit, p.be.layout,
                                      p.padded.prep_col_state,
                                      p.padded.prep_row_state);
  const double block_err = max_abs(p.be.eta * block - p.hamiltonian);
  const bool pass = block_err <= tolerance;

  std::cout << "model: " << p.spec.model << " L=" << p.spec.length
            << " D=" << p.padded.bond_qubits << "\n"
            << "eta: " << format_number(p.be.eta) << "\n"
            << "dilation error: " << format_number(dilation_err) << "\n"
            << "block error |eta*block - H|: " << format_number(block_err)
            << "\n"
            << "tolerance: " << format_number(tolerance) << "\n"
            << (pass ? "PASS" : "FAIL") << "\n";

  if (!out_path.empty()) {
    nlohmann::ordered_json report;
    report["model"] = p.spec.model;
    report["L"] = p.spec.length;
    report["D"] = p.padded.bond_qubits;
    report["eta"] = p.be.eta;
    report["dilation_error"] = dilation_err;
    report["block_error"] = block_err;
    report["tolerance"] = tolerance;
    report["pass"] = pass;
    write_text_file(out_path, report.dump(2) + "\n");
  }
  return pass ? 0 : 1;
}

int cmd_filter(const std::string& model_path, const std::string& phases_path,
               int degree, double gap, std::uint64_t seed, double tolerance,
               const std::string& out_path) {
  const Pipeline p = run_pipeline(model_path);

  PhaseSequence phases;
  double fit_residual = 0.0;
  bool warning = false;
  if (!phases_path.empty()) {
    phases = load_phases(phases_path);
    degree = phases.degree;
  } else {
    if (degree % 2 != 0)
      throw std::invalid_argument("filter: --degree must be even");
    const FilterSpec filter{degree / 2, gap};
    FitOptions options;
    options.seed = seed;
    const FitResult fit = fit_phases(
        [&](double x) { return filter_target(x, filter); }, Parity::kEven,
        degree, options);
    phases = fit.phases;
    fit_residual = fit.sup_residual;
    warning = fit.warning;
  }
  const FilterSpec filter{degree / 2, gap};

  const Circuit qet = build_qet_circuit(p.be, p.prep_col, p.prep_row, phases);
  CVector anc_zero = CVector::Zero(Eigen::Index{1} << p.padded.bond_qubits);
  anc_zero(0) = 1.0;
  const CMatrix block = extract_block(qet, p.be.layout, anc_zero, anc_zero);
  const CMatrix poly = hermitian_part(block);

  const EighResult eig = eigh(p.hamiltonian / p.be.eta);
  const CMatrix in_basis = eig.vectors.adjoint() * poly * eig.vectors;

  std::ostringstream csv;
  csv << "# model=" << p.spec.model << " L=" << p.spec.length
      << " eta=" << format_number(p.be.eta) << " degree=" << degree
      << " gap=" << format_number(gap) << "\n";
  csv << "# fit_residual=" << format_number(fit_residual)
      << " warning=" << (warning ? 1 : 0) << "\n";
  csv << "index,eigenvalue,transformed,target\n";
  double max_deviation = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lambda = eig.values(i);
    const double transformed = in_basis(i, i).real();
    const double target = filter_target(lambda, filter);
    max_deviation = std::max(max_deviation, std::abs(transformed - target));
    csv << i << ',' << format_number(lambda) << ','
        << format_number(transformed) << ',' << format_number(target) << "\n";
  }

  std::cout << csv.str();
  std::cout << "max |transformed - target|: " << format_number(max_deviation)
            << " (fit residual " << format_number(fit_residual) << ")\n";
  if (warning)
    std::cout << "warning: fit residual exceeds the configured bound\n";
  if (!out_path.empty()) write_text_file(out_path, csv.str());

  return max_deviation <= fit_residual + tolerance ? 0 : 1;
}

int cmd_cost(const std::string& length_arg, long long chi, long long m,
             int degree, const std::string& out_path) {
  int lo = 0, hi = 0;
  const auto dots = length_arg.find("..");
  if (dots == std::string::npos) {
    lo = hi = std::stoi(length_arg);
  } else {
    lo = std::stoi(length_arg.substr(0, dots));
    hi = std::stoi(length_arg.substr(dots + 2));
  }
  if (lo < 2 || hi < lo) throw std::invalid_argument("cost: bad --L range");

  std::ostringstream csv;
  csv << "method,L,chi_or_M,ancillas,be_units,sp_units\n";
  for (int length = lo; length <= hi; ++length) {
    const std::string table = to_csv(cost_report(length, chi, m, degree));
    csv << table.substr(table.find('\n') + 1);
  }
  std::cout << csv.str();
  if (!out_path.empty()) write_text_file(out_path, csv.str());
  return 0;
}

int cmd_phases_fit(int degree, double gap, std::uint64_t seed,
                   const std::string& out_path) {
  if (degree % 2 != 0)
    throw std::invalid_argument("phases-fit: --degree must be even");
  const FilterSpec filter{degree / 2, gap};
  FitOptions options;
  options.seed = seed;
  const FitResult fit = fit_phases(
      [&](double x) { return filter_target(x, filter); }, Parity::kEven, degree,
      options);
  std::cout << "degree: " << degree << "\n"
            << "sup residual: " << format_number(fit.sup_residual) << "\n";
  if (fit.warning)
    std::cout << "warning: fit residual exceeds the configured bound\n";
  if (!out_path.empty()) save_phases(out_path, fit.phases);
  return 0;
}

int cmd_dump_circuit(const std::string& model_path,
                     const std::string& out_path) {
  const Pipeline p = run_pipeline(model_path);

  Circuit referenced;
  referenced.n_wires = p.be.circuit.n_wires;
  referenced.append(p.prep_col);
  referenced.append(p.be.circuit);
  referenced.append(Gate::dense(p.prep_row.matrix.adjoint(), p.prep_row.wires));

  nlohmann::ordered_json out;
  out["model"] = p.spec.model;
  out["L"] = p.spec.length;
  out["D"] = p.padded.bond_qubits;
  out["eta"] = p.be.eta;
  out["layout"] = {{"bond", p.be.layout.bond},
                   {"dilation", p.be.layout.dilation},
                   {"physical", p.be.layout.physical}};
  out["circuit"] = nlohmann::ordered_json::parse(circuit_to_json(referenced));
  const std::string text = out.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text_file(out_path, text);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block encoding of matrix product operators: build, verify and "
               "cost the circuits, and run eigenvalue-transformation checks"};
  app.require_subcommand(1);

  std::string model_path, phases_path, out_path;
  std::string length_arg = "3";
  double tolerance = 1e-10;
  double gap = 0.1;
  std::uint64_t seed = 1;
  int degree = 30;
  int cost_degree = 1;
  long long chi = 4, m = 5;

  CLI::App* verify = app.add_subcommand(
      "verify", "Build the block encoding and compare against the dense MPO "
                "contraction");
  verify->add_option("--model", model_path, "model spec JSON")->required();
  verify->add_option("--tol", tolerance, "pass/fail tolerance");
  verify->add_option("--out", out_path, "report JSON path");

  CLI::App* filter = app.add_subcommand(
      "filter", "Run the eigenstate-filtering transformation and tabulate "
                "eigenvalues");
  filter->add_option("--model", model_path, "model spec JSON")->required();
  filter->add_option("--phases", phases_path, "phase file (skips fitting)");
  filter->add_option("--degree", degree, "transformation degree (even)");
  filter->add_option("--gap", gap, "filter gap");
  filter->add_option("--seed", seed, "fit seed");
  filter->add_option("--tol", tolerance, "slack on top of the fit residual");
  filter->add_option("--out", out_path, "CSV path");

  CLI::App* cost = app.add_subcommand(
      "cost", "Emit the gate-count comparison table as CSV");
  cost->add_option("--L", length_arg, "chain length or range a..b");
  cost->add_option("--chi", chi, "MPO bond dimension");
  cost->add_option("--M", m, "LCU term count");
  cost->add_option("--degree", cost_degree, "transformation degree multiplier");
  cost->add_option("--out", out_path, "CSV path");

  CLI::App* phases_fit = app.add_subcommand(
      "phases-fit", "Fit processing phases for the filter target");
  phases_fit->add_option("--degree", degree, "transformation degree (even)");
  phases_fit->add_option("--gap", gap, "filter gap");
  phases_fit->add_option("--seed", seed, "fit seed");
  phases_fit->add_option("--out", out_path, "phase JSON path");

  CLI::App* dump = app.add_subcommand(
      "dump-circuit", "Write the referenced block-encoding circuit as JSON");
  dump->add_option("--model", model_path, "model spec JSON")->required();
  dump->add_option("--out", out_path, "circuit JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(model_path, tolerance, out_path);
    if (filter->parsed())
      return cmd_filter(model_path, phases_path, degree, gap, seed, tolerance,
                        out_path);
    if (cost->parsed())
      return cmd_cost(length_arg, chi, m, cost_degree, out_path);
    if (phases_fit->parsed()) return cmd_phases_fit(degree, gap, seed, out_path);
    if (dump->parsed()) return cmd_dump_circuit(model_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
