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

#include "mpobe/qet.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mpobe/signal.hpp"

namespace mpobe {

void PhaseSequence::validate() const {
  if (degree < 1)
    throw std::invalid_argument("PhaseSequence: degree must be >= 1");
  if (static_cast<int>(phases.size()) != degree) {
    std::ostringstream msg;
    msg << "PhaseSequence: " << phases.size() << " phases do not match degree "
        << degree;
    throw std::invalid_argument(msg.str());
  }
  const bool even = degree % 2 == 0;
  if (even != (parity == Parity::kEven))
    throw std::invalid_argument("PhaseSequence: parity tag does not match degree");
}

double chebyshev_t(int degree, double x) {
  if (degree < 0) throw std::invalid_argument("chebyshev_t: negative degree");
  double prev = 1.0, cur = x;
  if (degree == 0) return prev;
  for (int k = 1; k < degree; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double filter_target(double x, const FilterSpec& spec) {
  if (!(spec.gap > 0.0 && spec.gap < 1.0))
    throw std::invalid_argument("filter_target: gap must lie in (0, 1)");
  if (spec.degree < 1)
    throw std::invalid_argument("filter_target: degree must be >= 1");
  const double g2 = spec.gap * spec.gap;
  const double y = -1.0 + 2.0 * (x * x - g2) / (1.0 - g2);
  const double y0 = -1.0 - 2.0 * g2 / (1.0 - g2);
  return chebyshev_t(spec.degree, y) / chebyshev_t(spec.degree, y0);
}

namespace {

Gate adjoint_dense(const Gate& g) {
  return Gate::dense(g.matrix.adjoint(), g.wires);
}

// Temporal gate order of the referenced block encoding: prepare |C> on the
// bond wires, run the site unitaries, then un-prepare the measured state,
// so the all-ancilla |0..0> sandwich yields H / eta.
std::vector<Gate> referenced_forward(const BlockEncoding& be,
                                     const Gate& prep_col,
                                     const Gate& prep_row) {
  std::vector<Gate> gates;
  gates.push_back(prep_col);
  gates.insert(gates.end(), be.circuit.gates.begin(), be.circuit.gates.end());
  gates.push_back(adjoint_dense(prep_row));
  return gates;
}

std::vector<Gate> referenced_backward(const BlockEncoding& be,
                                      const Gate& prep_col,
                                      const Gate& prep_row) {
  std::vector<Gate> gates;
  gates.push_back(prep_row);
  for (auto it = be.circuit.gates.rbegin(); it != be.circuit.gates.rend(); ++it)
    gates.push_back(adjoint_dense(*it));
  gates.push_back(adjoint_dense(prep_col));
  return gates;
}

std::vector<int> ancilla_wires_for_processing(const WireLayout& layout) {
  std::vector<int> wires;
  for (std::size_t l = layout.dilation.size(); l > 0; --l)
    wires.push_back(layout.dilation[l - 1]);
  for (std::size_t j = layout.bond.size(); j > 0; --j)
    wires.push_back(layout.bond[j - 1]);
  return wires;
}

} // namespace

Circuit build_qet_circuit(const BlockEncoding& be, const Gate& prep_col,
                          const Gate& prep_row, const PhaseSequence& ph) {
  ph.validate();
  const std::vector<int> anc = ancilla_wires_for_processing(be.layout);
  const int n_anc = static_cast<int>(anc.size());

  const std::vector<Gate> forward = referenced_forward(be, prep_col, prep_row);
  const std::vector<Gate> backward = referenced_backward(be, prep_col, prep_row);

  Circuit c;
  c.n_wires = be.circuit.n_wires;
  for (int j = ph.degree; j >= 1; --j) {
    const bool use_forward = (ph.degree - j) % 2 == 0;
    const std::vector<Gate>& section = use_forward ? forward : backward;
    for (const Gate& g : section) c.append(g);

    const double phi = ph.phases[static_cast<std::size_t>(j - 1)];
    c.append(mcrz_cascade_on_wires(anc, phi, c.n_wires));
    c.append(Gate::global_phase(std::arg(global_phase(n_anc, phi))));
  }
  return c;
}

CMatrix qet_dense_oracle(const CMatrix& u_be, const WireLayout& layout,
                         const PhaseSequence& ph) {
  ph.validate();
  layout.validate();
  const Eigen::Index dim = Eigen::Index{1} << layout.n_wires();
  if (u_be.rows() != dim || u_be.cols() != dim)
    throw std::invalid_argument("qet_dense_oracle: unitary dimension mismatch");

  std::uint64_t anc_mask = 0;
  for (int w : layout.bond) anc_mask |= std::uint64_t{1} << w;
  for (int w : layout.dilation) anc_mask |= std::uint64_t{1} << w;

  auto processing = [&](double phi) {
    CVector diag(dim);
    const Complex lo = std::exp(Complex(0, -phi));
    const Complex hi = std::exp(Complex(0, phi));
    for (Eigen::Index i = 0; i < dim; ++i)
      diag(i) = (static_cast<std::uint64_t>(i) & anc_mask) ? hi : lo;
    return diag;
  };

  const CMatrix u_dag = u_be.adjoint();
  CMatrix p = CMatrix::Identity(dim, dim);
  for (int j = ph.degree; j >= 1; --j) {
    const bool use_forward = (ph.degree - j) % 2 == 0;
    p = (use_forward ? u_be : u_dag) * p;
    p = processing(ph.phases[static_cast<std::size_t>(j - 1)]).asDiagonal() * p;
  }

  const int d = static_cast<int>(layout.bond.size());
  CVector zero = CVector::Zero(Eigen::Index{1} << d);
  zero(0) = 1.0;
  return extract_block(p, layout, zero, zero);
}

Complex scalar_qsp(const PhaseSequence& ph, double x) {
  ph.validate();
  if (std::abs(x) > 1.0 + 1e-12)
    throw std::invalid_argument("scalar_qsp: |x| must be <= 1");
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  CMatrix w(2, 2);
  w << x, s, s, -x;
  const CMatrix w_dag = w.adjoint();

  CMatrix p = CMatrix::Identity(2, 2);
  for (int j = ph.degree; j >= 1; --j) {
    const bool use_forward = (ph.degree - j) % 2 == 0;
    p = (use_forward ? w : w_dag) * p;
    const double phi = ph.phases[static_cast<std::size_t>(j - 1)];
    CMatrix proc(2, 2);
    proc << std::exp(Complex(0, -phi)), 0, 0, std::exp(Complex(0, phi));
    p = proc * p;
  }
  return p(0, 0);
}

PhaseSequence chebyshev_phases(int degree) {
  if (degree < 1)
    throw std::invalid_argument("chebyshev_phases: degree must be >= 1");
  PhaseSequence ph;
  ph.degree = degree;
  ph.parity = degree % 2 == 0 ? Parity::kEven : Parity::kOdd;
  ph.phases.assign(static_cast<std::size_t>(degree), std::numbers::pi / 2.0);
  // Each (Pi_{pi/2} W) factor composes to a plane rotation; the leading
  // phase absorbs the accumulated factor (-i)^(d-1).
  double lead = -(degree - 1) * std::numbers::pi / 2.0;
  lead = std::remainder(lead, 2.0 * std::numbers::pi);
  ph.phases[0] = lead;
  return ph;
}

namespace {

struct QspEvaluation {
  Complex value;                 ///< P(0,0)
  std::vector<Complex> gradient; ///< dP(0,0)/dphi_k
};

// Value and gradient of the companion's (0,0) entry at signal value x.
QspEvaluation evaluate_with_gradient(const std::vector<double>& phases,
                                     double x) {
  const int d = static_cast<int>(phases.size());
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  Eigen::Matrix2cd w;
  w << x, s, s, -x;

  // Temporal factor list: V_d, Pi_d, V_{d-1}, ..., V_1, Pi_1 with
  // V_j = W for even (d - j), W^dag otherwise (W is Hermitian).
  // P = Pi_1 V_1 ... Pi_d V_d. Suffix[j] = V_j Pi_{j+1} V_{j+1} ... V_d.
  std::vector<Eigen::Matrix2cd> pi(static_cast<std::size_t>(d));
  for (int j = 1; j <= d; ++j) {
    const double phi = phases[static_cast<std::size_t>(j - 1)];
    pi[static_cast<std::size_t>(j - 1)] << std::exp(Complex(0, -phi)), 0, 0,
        std::exp(Complex(0, phi));
  }

  // suffix[j-1] = V_j Pi_{j+1} ... V_d; W is Hermitian, so the U/U^dag
  // alternation collapses to plain W factors here.
  std::vector<Eigen::Matrix2cd> suffix(static_cast<std::size_t>(d + 1));
  suffix[static_cast<std::size_t>(d)] = Eigen::Matrix2cd::Identity();
  for (int j = d; j >= 1; --j) {
    Eigen::Matrix2cd tail = suffix[static_cast<std::size_t>(j)];
    if (j < d) tail = pi[static_cast<std::size_t>(j)] * tail;
    suffix[static_cast<std::size_t>(j - 1)] = w * tail;
  }

  QspEvaluation out;
  out.gradient.resize(static_cast<std::size_t>(d));
  Eigen::Matrix2cd prefix = Eigen::Matrix2cd::Identity(); // Pi_1 V_1 ... V_{k-1}
  for (int k = 1; k <= d; ++k) {
    const Eigen::Matrix2cd& pik = pi[static_cast<std::size_t>(k - 1)];
    Eigen::Matrix2cd dpi;
    dpi << Complex(0, -1) * pik(0, 0), 0, 0, Complex(0, 1) * pik(1, 1);
    out.gradient[static_cast<std::size_t>(k - 1)] =
        (prefix * dpi * suffix[static_cast<std::size_t>(k - 1)])(0, 0);
    prefix = prefix * pik * w;
  }
  out.value = (prefix)(0, 0);
  return out;
}

std::vector<double> chebyshev_nodes(int count) {
  std::vector<double> nodes(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j)
    nodes[static_cast<std::size_t>(j)] =
        std::cos(std::numbers::pi * (j + 0.5) / count);
  return nodes;
}

double objective(const std::vector<double>& phases,
                 const std::vector<double>& nodes,
                 const std::vector<double>& targets) {
  double total = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double r =
        evaluate_with_gradient(phases, nodes[j]).value.real() - targets[j];
    total += r * r;
  }
  return total;
}

std::vector<double> levenberg_marquardt(std::vector<double> phases,
                                        const std::vector<double>& nodes,
                                        const std::vector<double>& targets,
                                        int max_iterations) {
  const int d = static_cast<int>(phases.size());
  const int m = static_cast<int>(nodes.size());
  double lambda = 1e-3;
  double current = objective(phases, nodes, targets);

  for (int iter = 0; iter < max_iterations; ++iter) {
    Eigen::MatrixXd jac(m, d);
    Eigen::VectorXd res(m);
    for (int j = 0; j < m; ++j) {
      const QspEvaluation eval =
          evaluate_with_gradient(phases, nodes[static_cast<std::size_t>(j)]);
      res(j) = eval.value.real() - targets[static_cast<std::size_t>(j)];
      for (int k = 0; k < d; ++k)
        jac(j, k) = eval.gradient[static_cast<std::size_t>(k)].real();
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * res;
    if (jtr.lpNorm<Eigen::Infinity>() < 1e-14) break;

    bool stepped = false;
    for (int trial = 0; trial < 12 && !stepped; ++trial) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += lambda;
      const Eigen::VectorXd delta = damped.ldlt().solve(-jtr);
      std::vector<double> candidate = phases;
      for (int k = 0; k < d; ++k) candidate[static_cast<std::size_t>(k)] += delta(k);
      const double next = objective(candidate, nodes, targets);
      if (next < current) {
        phases = std::move(candidate);
        current = next;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        if (delta.lpNorm<Eigen::Infinity>() < 1e-13) return phases;
      } else {
        lambda *= 4.0;
      }
    }
    if (!stepped) break;
    if (current < 1e-26) break;
  }
  return phases;
}

} // namespace

FitResult fit_phases(const std::function<double(double)>& target,
                     Parity parity, int degree, const FitOptions& options) {
  if (degree < 1 || degree > 40)
    throw std::invalid_argument("fit_phases: degree must be in [1, 40]");
  if ((degree % 2 == 0) != (parity == Parity::kEven))
    throw std::invalid_argument("fit_phases: parity does not match degree");

  const int node_count = std::max(201, 4 * degree + 1);
  const std::vector<double> nodes = chebyshev_nodes(node_count);
  std::vector<double> targets(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) targets[j] = target(nodes[j]);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> jitter(0.0, 0.35);

  const PhaseSequence cheb = chebyshev_phases(degree);
  std::vector<std::vector<double>> starts;
  starts.push_back(cheb.phases);
  starts.emplace_back(static_cast<std::size_t>(degree), 0.0);
  while (static_cast<int>(starts.size()) < std::max(2, options.starts)) {
    std::vector<double> s = cheb.phases;
    for (double& v : s) v += jitter(rng);
    starts.push_back(std::move(s));
  }

  std::vector<double> best;
  double best_objective = std::numeric_limits<double>::infinity();
  for (const std::vector<double>& s : starts) {
    const std::vector<double> fitted =
        levenberg_marquardt(s, nodes, targets, options.max_iterations);
    const double value = objective(fitted, nodes, targets);
    if (value < best_objective) {
      best_objective = value;
      best = fitted;
    }
    if (best_objective < 1e-24) break;
  }

  FitResult out;
  out.phases.phases = best;
  out.phases.degree = degree;
  out.phases.parity = parity;
  out.phases.convention = "projector-phase";

  double sup = 0.0;
  const int grid = 2001;
  for (int j = 0; j < grid; ++j) {
    const double x = -1.0 + 2.0 * j / (grid - 1);
    const double v = scalar_qsp(out.phases, x).real();
    sup = std::max(sup, std::abs(v - target(x)));
  }
  out.sup_residual = sup;
  out.warning = sup > options.residual_bound;
  return out;
}

PhaseSequence load_phases(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_phases: cannot open " + path);
  nlohmann::json j;
  in >> j;

  PhaseSequence ph;
  if (!j.contains("parity") || !j["parity"].is_string())
    throw std::invalid_argument("load_phases: missing or invalid field 'parity'");
  const std::string parity = j["parity"].get<std::string>();
  if (parity == "even")
    ph.parity = Parity::kEven;
  else if (parity == "odd")
    ph.parity = Parity::kOdd;
  else
    throw std::invalid_argument("load_phases: field 'parity' must be even|odd");

  if (!j.contains("degree") || !j["degree"].is_number_integer())
    throw std::invalid_argument("load_phases: missing or invalid field 'degree'");
  ph.degree = j["degree"].get<int>();

  if (!j.contains("phases") || !j["phases"].is_array())
    throw std::invalid_argument("load_phases: missing or invalid field 'phases'");
  for (const auto& v : j["phases"]) {
    if (!v.is_number())
      throw std::invalid_argument("load_phases: field 'phases' must hold numbers");
    ph.phases.push_back(v.get<double>());
  }
  if (j.contains("convention")) ph.convention = j["convention"].get<std::string>();
  ph.validate();
  return ph;
}

void save_phases(const std::string& path, const PhaseSequence& ph) {
  ph.validate();
  nlohmann::ordered_json j;
  j["convention"] = ph.convention;
  j["parity"] = ph.parity == Parity::kEven ? "even" : "odd";
  j["degree"] = ph.degree;
  j["phases"] = ph.phases;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_phases: cannot open " + path);
  out << j.dump(2) << "\n";
}

CMatrix hermitian_part(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitian_part: matrix not square");
  return 0.5 * (m + m.adjoint());
}

} // namespace mpobe
