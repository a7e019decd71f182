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

#include "mpobe/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mpobe {

namespace {

constexpr int kWireCap = 14;

std::uint64_t wire_mask(const Gate& g) {
  std::uint64_t mask = 0;
  for (int w : g.wires) mask |= std::uint64_t{1} << w;
  return mask;
}

Eigen::Index dim_for_wires(int n_wires) { return Eigen::Index{1} << n_wires; }

// Apply a dense matrix on the listed wires (MSB first) to a state vector.
void apply_dense(Eigen::Ref<CVector> state, const CMatrix& matrix,
                 const std::vector<int>& wires) {
  const int k = static_cast<int>(wires.size());
  if (k == 0) {
    state *= matrix(0, 0);
    return;
  }
  const Eigen::Index sub = Eigen::Index{1} << k;
  std::uint64_t gate_mask = 0;
  std::vector<std::uint64_t> pattern(static_cast<std::size_t>(sub), 0);
  for (int j = 0; j < k; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << wires[static_cast<std::size_t>(j)];
    gate_mask |= bit;
    const Eigen::Index sub_bit = Eigen::Index{1} << (k - 1 - j);
    for (Eigen::Index s = 0; s < sub; ++s)
      if (s & sub_bit) pattern[static_cast<std::size_t>(s)] |= bit;
  }

  CVector scratch(sub);
  const auto n = static_cast<std::uint64_t>(state.size());
  for (std::uint64_t base = 0; base < n; ++base) {
    if (base & gate_mask) continue;
    for (Eigen::Index s = 0; s < sub; ++s)
      scratch(s) = state(static_cast<Eigen::Index>(
          base | pattern[static_cast<std::size_t>(s)]));
    scratch = matrix * scratch;
    for (Eigen::Index s = 0; s < sub; ++s)
      state(static_cast<Eigen::Index>(
          base | pattern[static_cast<std::size_t>(s)])) = scratch(s);
  }
}

void apply_gate(Eigen::Ref<CVector> state, const Gate& g) {
  const auto n = static_cast<std::uint64_t>(state.size());
  switch (g.kind) {
    case GateKind::kDenseUnitary:
    case GateKind::kStatePrep:
      apply_dense(state, g.matrix, g.wires);
      return;
    case GateKind::kCnot: {
      const std::uint64_t c = std::uint64_t{1} << g.wires[0];
      const std::uint64_t t = std::uint64_t{1} << g.wires[1];
      for (std::uint64_t i = 0; i < n; ++i)
        if ((i & c) && !(i & t))
          std::swap(state(static_cast<Eigen::Index>(i)),
                    state(static_cast<Eigen::Index>(i | t)));
      return;
    }
    case GateKind::kRz: {
      const Complex lo = std::exp(Complex(0, -g.angle));
      const Complex hi = std::exp(Complex(0, g.angle));
      const std::uint64_t t = std::uint64_t{1} << g.wires[0];
      for (std::uint64_t i = 0; i < n; ++i)
        state(static_cast<Eigen::Index>(i)) *= (i & t) ? hi : lo;
      return;
    }
    case GateKind::kMcrz: {
      const Complex lo = std::exp(Complex(0, -g.angle));
      const Complex hi = std::exp(Complex(0, g.angle));
      const std::uint64_t t = std::uint64_t{1} << g.wires.back();
      std::uint64_t control_mask = 0, trigger = 0;
      for (std::size_t j = 0; j + 1 < g.wires.size(); ++j) {
        const std::uint64_t bit = std::uint64_t{1} << g.wires[j];
        control_mask |= bit;
        if (!g.open_controls[j]) trigger |= bit;
      }
      for (std::uint64_t i = 0; i < n; ++i)
        if ((i & control_mask) == trigger)
          state(static_cast<Eigen::Index>(i)) *= (i & t) ? hi : lo;
      return;
    }
    case GateKind::kPauliX: {
      const std::uint64_t t = std::uint64_t{1} << g.wires[0];
      for (std::uint64_t i = 0; i < n; ++i)
        if (!(i & t))
          std::swap(state(static_cast<Eigen::Index>(i)),
                    state(static_cast<Eigen::Index>(i | t)));
      return;
    }
    case GateKind::kHadamard: {
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      const std::uint64_t t = std::uint64_t{1} << g.wires[0];
      for (std::uint64_t i = 0; i < n; ++i)
        if (!(i & t)) {
          const Complex a = state(static_cast<Eigen::Index>(i));
          const Complex b = state(static_cast<Eigen::Index>(i | t));
          state(static_cast<Eigen::Index>(i)) = (a + b) * inv_sqrt2;
          state(static_cast<Eigen::Index>(i | t)) = (a - b) * inv_sqrt2;
        }
      return;
    }
    case GateKind::kGlobalPhase:
      state *= std::exp(Complex(0, g.angle));
      return;
  }
  throw std::logic_error("apply_gate: unhandled gate kind");
}

} // namespace

int WireLayout::n_wires() const {
  return static_cast<int>(bond.size() + dilation.size() + physical.size());
}

void WireLayout::validate() const {
  const int n = n_wires();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  auto mark = [&](const std::vector<int>& wires) {
    for (int w : wires) {
      if (w < 0 || w >= n)
        throw std::invalid_argument("WireLayout: wire index out of range");
      if (seen[static_cast<std::size_t>(w)])
        throw std::invalid_argument("WireLayout: duplicate wire assignment");
      seen[static_cast<std::size_t>(w)] = true;
    }
  };
  mark(bond);
  mark(dilation);
  mark(physical);
}

WireLayout WireLayout::standard(int sites, int bond_qubits) {
  WireLayout layout;
  layout.physical.resize(static_cast<std::size_t>(sites));
  layout.dilation.resize(static_cast<std::size_t>(sites));
  for (int l = 0; l < sites; ++l) {
    layout.physical[static_cast<std::size_t>(l)] = sites - 1 - l;
    layout.dilation[static_cast<std::size_t>(l)] = 2 * sites - 1 - l;
  }
  layout.bond.resize(static_cast<std::size_t>(bond_qubits));
  for (int j = 0; j < bond_qubits; ++j)
    layout.bond[static_cast<std::size_t>(j)] = 2 * sites + j;
  return layout;
}

Gate Gate::dense(CMatrix matrix, std::vector<int> wires) {
  const Eigen::Index dim = Eigen::Index{1} << wires.size();
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw std::invalid_argument("Gate::dense: matrix does not match wire count");
  require_finite(matrix, "Gate::dense");
  Gate g;
  g.kind = GateKind::kDenseUnitary;
  g.matrix = std::move(matrix);
  g.wires = std::move(wires);
  return g;
}

Gate Gate::cnot(int control, int target) {
  if (control == target)
    throw std::invalid_argument("Gate::cnot: control equals target");
  Gate g;
  g.kind = GateKind::kCnot;
  g.wires = {control, target};
  return g;
}

Gate Gate::rz(int wire, double angle) {
  Gate g;
  g.kind = GateKind::kRz;
  g.wires = {wire};
  g.angle = angle;
  return g;
}

Gate Gate::mcrz(std::vector<int> controls, std::vector<bool> open, int target,
                double angle) {
  if (controls.size() != open.size())
    throw std::invalid_argument("Gate::mcrz: one polarity per control");
  for (int c : controls)
    if (c == target)
      throw std::invalid_argument("Gate::mcrz: target among controls");
  Gate g;
  g.kind = GateKind::kMcrz;
  g.wires = std::move(controls);
  g.wires.push_back(target);
  g.open_controls = std::move(open);
  g.angle = angle;
  return g;
}

Gate Gate::pauli_x(int wire) {
  Gate g;
  g.kind = GateKind::kPauliX;
  g.wires = {wire};
  return g;
}

Gate Gate::hadamard(int wire) {
  Gate g;
  g.kind = GateKind::kHadamard;
  g.wires = {wire};
  return g;
}

Gate Gate::state_prep(CMatrix matrix, std::vector<int> wires) {
  const Eigen::Index dim = Eigen::Index{1} << wires.size();
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw std::invalid_argument(
        "Gate::state_prep: matrix does not match wire count");
  if (unitarity_error(matrix) > 1e-10)
    throw std::invalid_argument("Gate::state_prep: matrix is not unitary");
  Gate g;
  g.kind = GateKind::kStatePrep;
  g.matrix = std::move(matrix);
  g.wires = std::move(wires);
  return g;
}

Gate Gate::global_phase(double angle) {
  Gate g;
  g.kind = GateKind::kGlobalPhase;
  g.angle = angle;
  return g;
}

std::vector<int> Gate::control_wires() const {
  if (kind != GateKind::kMcrz) return {};
  return std::vector<int>(wires.begin(), wires.end() - 1);
}

int Gate::target_wire() const {
  if (wires.empty())
    throw std::logic_error("Gate::target_wire: gate has no wires");
  return wires.back();
}

bool Gate::is_diagonal() const {
  return kind == GateKind::kRz || kind == GateKind::kMcrz ||
         kind == GateKind::kGlobalPhase;
}

std::string Gate::kind_name() const {
  switch (kind) {
    case GateKind::kDenseUnitary: return "dense_unitary";
    case GateKind::kCnot: return "cnot";
    case GateKind::kRz: return "rz";
    case GateKind::kMcrz: return "mcrz";
    case GateKind::kPauliX: return "x";
    case GateKind::kHadamard: return "h";
    case GateKind::kStatePrep: return "state_prep";
    case GateKind::kGlobalPhase: return "global_phase";
  }
  return "unknown";
}

void Circuit::append(Gate g) { gates.push_back(std::move(g)); }

void Circuit::append(const Circuit& other) {
  if (other.n_wires > n_wires)
    throw std::invalid_argument("Circuit::append: wire count mismatch");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

void Circuit::validate() const {
  for (const Gate& g : gates) {
    std::uint64_t seen = 0;
    for (int w : g.wires) {
      if (w < 0 || w >= n_wires)
        throw std::invalid_argument("Circuit: gate wire out of range");
      const std::uint64_t bit = std::uint64_t{1} << w;
      if (seen & bit)
        throw std::invalid_argument("Circuit: duplicate wire within a gate");
      seen |= bit;
    }
  }
}

CMatrix circuit_unitary(const Circuit& c) {
  if (c.n_wires > kWireCap) {
    std::ostringstream msg;
    msg << "circuit_unitary: " << c.n_wires << " wires exceeds the dense cap "
        << kWireCap;
    throw std::invalid_argument(msg.str());
  }
  c.validate();
  const Eigen::Index dim = dim_for_wires(c.n_wires);
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const Gate& g : c.gates)
    for (Eigen::Index col = 0; col < dim; ++col) apply_gate(u.col(col), g);
  return u;
}

void apply_circuit(const Circuit& c, CVector& state) {
  c.validate();
  if (state.size() != dim_for_wires(c.n_wires))
    throw std::invalid_argument("apply_circuit: state dimension mismatch");
  for (const Gate& g : c.gates) apply_gate(state, g);
}

std::vector<DilationResult> dilate_sites(const PaddedMpo& m) {
  if (m.mpo.site_norms.size() != m.mpo.sites.size())
    throw std::invalid_argument("dilate_sites: normalize() has not run");
  std::vector<DilationResult> out;
  out.reserve(m.mpo.sites.size());
  for (std::size_t l = 0; l < m.mpo.sites.size(); ++l)
    out.push_back(
        unitary_dilation(reshape_site(m.mpo.sites[l]), m.mpo.site_norms[l]));
  return out;
}

BlockEncoding assemble_block_encoding(
    const PaddedMpo& m, const std::vector<DilationResult>& dilations) {
  const auto sites = static_cast<int>(m.length());
  const int d = m.bond_qubits;
  if (dilations.size() != static_cast<std::size_t>(sites))
    throw std::invalid_argument(
        "assemble_block_encoding: one dilation per site required");
  const Eigen::Index block_dim = Eigen::Index{1} << (d + 1);
  for (const DilationResult& r : dilations)
    if (r.source_dim != block_dim)
      throw std::invalid_argument(
          "assemble_block_encoding: dilation dimension does not match the "
          "padded bond dimension");

  BlockEncoding be;
  be.layout = WireLayout::standard(sites, d);
  be.layout.validate();
  be.eta = m.eta();
  be.circuit.n_wires = be.layout.n_wires();

  // Temporal order site L down to 1, so the extracted block matches
  // R * A(1) * ... * A(L) * C.
  for (int l = sites - 1; l >= 0; --l) {
    std::vector<int> wires;
    wires.reserve(static_cast<std::size_t>(d) + 2);
    wires.push_back(be.layout.dilation[static_cast<std::size_t>(l)]);
    for (int j = d - 1; j >= 0; --j)
      wires.push_back(be.layout.bond[static_cast<std::size_t>(j)]);
    wires.push_back(be.layout.physical[static_cast<std::size_t>(l)]);
    be.circuit.append(
        Gate::dense(dilations[static_cast<std::size_t>(l)].unitary, wires));
  }
  return be;
}

namespace {

void check_prep_state(const CVector& state, int bond_qubits, const char* name) {
  if (state.size() != (Eigen::Index{1} << bond_qubits))
    throw std::invalid_argument(
        std::string("extract_block: ") + name + " has wrong dimension");
  if (std::abs(state.norm() - 1.0) > 1e-10)
    throw std::invalid_argument(
        std::string("extract_block: ") + name + " is not unit norm");
}

// Basis index with the given bond value, all dilation wires 0, and the
// physical register holding p in contraction convention (site 1 highest).
std::uint64_t layout_index(const WireLayout& layout, std::uint64_t bond_value,
                           std::uint64_t p) {
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < layout.bond.size(); ++j)
    if ((bond_value >> j) & 1) idx |= std::uint64_t{1} << layout.bond[j];
  const std::size_t sites = layout.physical.size();
  for (std::size_t l = 0; l < sites; ++l)
    if ((p >> (sites - 1 - l)) & 1)
      idx |= std::uint64_t{1} << layout.physical[l];
  return idx;
}

} // namespace

CMatrix extract_block(const CMatrix& u, const WireLayout& layout,
                      const CVector& prep_col, const CVector& prep_row) {
  layout.validate();
  const int d = static_cast<int>(layout.bond.size());
  check_prep_state(prep_col, d, "prep_col");
  check_prep_state(prep_row, d, "prep_row");
  const Eigen::Index dim = dim_for_wires(layout.n_wires());
  if (u.rows() != dim || u.cols() != dim)
    throw std::invalid_argument("extract_block: unitary dimension mismatch");

  const Eigen::Index phys_dim = Eigen::Index{1} << layout.physical.size();
  const Eigen::Index bond_dim = Eigen::Index{1} << d;
  CMatrix block = CMatrix::Zero(phys_dim, phys_dim);
  for (Eigen::Index pi = 0; pi < phys_dim; ++pi)
    for (Eigen::Index po = 0; po < phys_dim; ++po) {
      Complex acc = 0;
      for (Eigen::Index bo = 0; bo < bond_dim; ++bo) {
        if (prep_row(bo) == Complex(0)) continue;
        const auto row = static_cast<Eigen::Index>(
            layout_index(layout, static_cast<std::uint64_t>(bo),
                         static_cast<std::uint64_t>(po)));
        Complex inner = 0;
        for (Eigen::Index bi = 0; bi < bond_dim; ++bi) {
          if (prep_col(bi) == Complex(0)) continue;
          const auto col = static_cast<Eigen::Index>(
              layout_index(layout, static_cast<std::uint64_t>(bi),
                           static_cast<std::uint64_t>(pi)));
          inner += u(row, col) * prep_col(bi);
        }
        acc += std::conj(prep_row(bo)) * inner;
      }
      block(po, pi) = acc;
    }
  return block;
}

CMatrix extract_block(const Circuit& c, const WireLayout& layout,
                      const CVector& prep_col, const CVector& prep_row) {
  layout.validate();
  const int d = static_cast<int>(layout.bond.size());
  check_prep_state(prep_col, d, "prep_col");
  check_prep_state(prep_row, d, "prep_row");
  if (c.n_wires != layout.n_wires())
    throw std::invalid_argument("extract_block: circuit/layout mismatch");

  const Eigen::Index dim = dim_for_wires(c.n_wires);
  const Eigen::Index phys_dim = Eigen::Index{1} << layout.physical.size();
  const Eigen::Index bond_dim = Eigen::Index{1} << d;
  CMatrix block(phys_dim, phys_dim);
  CVector state(dim);
  for (Eigen::Index pi = 0; pi < phys_dim; ++pi) {
    state.setZero();
    for (Eigen::Index bi = 0; bi < bond_dim; ++bi)
      state(static_cast<Eigen::Index>(
          layout_index(layout, static_cast<std::uint64_t>(bi),
                       static_cast<std::uint64_t>(pi)))) = prep_col(bi);
    apply_circuit(c, state);
    for (Eigen::Index po = 0; po < phys_dim; ++po) {
      Complex acc = 0;
      for (Eigen::Index bo = 0; bo < bond_dim; ++bo) {
        if (prep_row(bo) == Complex(0)) continue;
        acc += std::conj(prep_row(bo)) *
               state(static_cast<Eigen::Index>(
                   layout_index(layout, static_cast<std::uint64_t>(bo),
                                static_cast<std::uint64_t>(po))));
      }
      block(po, pi) = acc;
    }
  }
  return block;
}

namespace {

CMatrix prep_matrix(const CVector& state) {
  const Eigen::Index dim = state.size();
  // Computational basis state: a plain X pattern.
  Eigen::Index hot = -1;
  bool basis = true;
  for (Eigen::Index i = 0; i < dim && basis; ++i) {
    const double a = std::abs(state(i));
    if (a > 1e-12) {
      if (hot >= 0 || std::abs(state(i) - Complex(1)) > 1e-12)
        basis = false;
      else
        hot = i;
    }
  }
  if (basis && hot >= 0) {
    CMatrix p = CMatrix::Identity(1, 1);
    for (Eigen::Index bit = dim >> 1; bit >= 1; bit >>= 1)
      p = kron(p, (hot & bit) ? pauli::x() : pauli::id());
    return p;
  }
  // Uniform superposition: a Hadamard wall.
  const Complex uniform(1.0 / std::sqrt(static_cast<double>(dim)), 0.0);
  bool is_plus = true;
  for (Eigen::Index i = 0; i < dim && is_plus; ++i)
    if (std::abs(state(i) - uniform) > 1e-12) is_plus = false;
  if (is_plus) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CMatrix h(2, 2);
    h << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    CMatrix p = CMatrix::Identity(1, 1);
    for (Eigen::Index d = dim; d > 1; d >>= 1) p = kron(p, h);
    return p;
  }
  return complete_to_unitary(state);
}

} // namespace

std::pair<Gate, Gate> prep_gates(const PaddedMpo& m, const WireLayout& layout) {
  layout.validate();
  if (static_cast<int>(layout.bond.size()) != m.bond_qubits)
    throw std::invalid_argument("prep_gates: layout bond width mismatch");
  if (m.prep_col_state.size() == 0 || m.prep_col_state.norm() < 1e-12 ||
      m.prep_row_state.norm() < 1e-12)
    throw std::invalid_argument("prep_gates: zero boundary state");

  std::vector<int> wires;
  for (std::size_t j = layout.bond.size(); j > 0; --j)
    wires.push_back(layout.bond[j - 1]);
  Gate pc = Gate::state_prep(prep_matrix(m.prep_col_state), wires);
  Gate pr = Gate::state_prep(prep_matrix(m.prep_row_state), wires);
  return {std::move(pc), std::move(pr)};
}

int depth(const Circuit& c, bool interleaved) {
  c.validate();
  if (!interleaved) {
    int layers = 0;
    std::uint64_t current = 0;
    bool open = false;
    for (const Gate& g : c.gates) {
      const std::uint64_t mask = wire_mask(g);
      if (mask == 0) continue;
      if (!open || (mask & current)) {
        ++layers;
        current = mask;
        open = true;
      } else {
        current |= mask;
      }
    }
    return layers;
  }
  std::vector<int> last(static_cast<std::size_t>(c.n_wires), 0);
  int total = 0;
  for (const Gate& g : c.gates) {
    if (g.wires.empty()) continue;
    int layer = 0;
    for (int w : g.wires) layer = std::max(layer, last[static_cast<std::size_t>(w)]);
    ++layer;
    for (int w : g.wires) last[static_cast<std::size_t>(w)] = layer;
    total = std::max(total, layer);
  }
  return total;
}

Circuit scheduled(const Circuit& c) {
  c.validate();
  std::vector<int> last(static_cast<std::size_t>(c.n_wires), 0);
  std::vector<std::pair<int, std::size_t>> order;
  order.reserve(c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    int layer = 0;
    for (int w : g.wires) layer = std::max(layer, last[static_cast<std::size_t>(w)]);
    ++layer;
    for (int w : g.wires) last[static_cast<std::size_t>(w)] = layer;
    order.emplace_back(g.wires.empty() ? 0 : layer, i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  Circuit out;
  out.n_wires = c.n_wires;
  out.gates.reserve(c.gates.size());
  for (const auto& [layer, i] : order) out.gates.push_back(c.gates[i]);
  return out;
}

double success_probability(const Circuit& c, const WireLayout& layout,
                           const CVector& prep_col, const CVector& prep_row,
                           const CVector& input) {
  layout.validate();
  const int d = static_cast<int>(layout.bond.size());
  check_prep_state(prep_col, d, "prep_col");
  check_prep_state(prep_row, d, "prep_row");
  const Eigen::Index phys_dim = Eigen::Index{1} << layout.physical.size();
  if (input.size() != phys_dim)
    throw std::invalid_argument("success_probability: input dimension mismatch");
  if (std::abs(input.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("success_probability: input is not unit norm");

  CVector state = CVector::Zero(dim_for_wires(c.n_wires));
  const Eigen::Index bond_dim = Eigen::Index{1} << d;
  for (Eigen::Index bi = 0; bi < bond_dim; ++bi) {
    if (prep_col(bi) == Complex(0)) continue;
    for (Eigen::Index p = 0; p < phys_dim; ++p)
      state(static_cast<Eigen::Index>(
          layout_index(layout, static_cast<std::uint64_t>(bi),
                       static_cast<std::uint64_t>(p)))) =
          prep_col(bi) * input(p);
  }
  apply_circuit(c, state);

  double prob = 0.0;
  for (Eigen::Index p = 0; p < phys_dim; ++p) {
    Complex amp = 0;
    for (Eigen::Index bo = 0; bo < bond_dim; ++bo) {
      if (prep_row(bo) == Complex(0)) continue;
      amp += std::conj(prep_row(bo)) *
             state(static_cast<Eigen::Index>(
                 layout_index(layout, static_cast<std::uint64_t>(bo),
                              static_cast<std::uint64_t>(p))));
    }
    prob += std::norm(amp);
  }
  return prob;
}

} // namespace mpobe
