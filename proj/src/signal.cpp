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

#include "mpobe/signal.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mpobe {

namespace {

void check_register(int n) {
  if (n < 1)
    throw std::invalid_argument("signal: register needs at least one wire");
  if (n > 30)
    throw std::invalid_argument("signal: register too large");
}

int trailing_zeros(unsigned long long v) {
  int n = 0;
  while (!(v & 1)) {
    v >>= 1;
    ++n;
  }
  return n;
}

} // namespace

CMatrix reference_projector_phase(int n, double phi) {
  check_register(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix m = std::exp(Complex(0, phi)) * CMatrix::Identity(dim, dim);
  m(0, 0) = std::exp(Complex(0, -phi));
  return m;
}

Circuit mcrz_cascade_on_wires(const std::vector<int>& wires, double phi,
                              int n_wires) {
  const int n = static_cast<int>(wires.size());
  check_register(n);
  Circuit c;
  c.n_wires = n_wires;
  for (int q = 1; q <= n; ++q) {
    std::vector<int> controls(wires.begin(), wires.begin() + (q - 1));
    std::vector<bool> open(static_cast<std::size_t>(q - 1), true);
    const double angle = phi / std::pow(2.0, n - q);
    c.append(Gate::mcrz(std::move(controls), std::move(open),
                        wires[static_cast<std::size_t>(q - 1)], angle));
  }
  return c;
}

Circuit mcrz_cascade(int n, double phi) {
  check_register(n);
  std::vector<int> wires;
  wires.reserve(static_cast<std::size_t>(n));
  for (int w = n - 1; w >= 0; --w) wires.push_back(w);
  return mcrz_cascade_on_wires(wires, phi, n);
}

namespace {

// Diagonal of the standalone cascade, indexed with wire n-1 as the most
// significant bit (the "first" cascade wire).
CVector cascade_diagonal(int n, double phi) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  CVector diag = CVector::Ones(dim);
  for (int q = 1; q <= n; ++q) {
    const double angle = phi / std::pow(2.0, n - q);
    const Complex lo = std::exp(Complex(0, -angle));
    const Complex hi = std::exp(Complex(0, angle));
    const Eigen::Index active = Eigen::Index{1} << (n - q + 1);
    const Eigen::Index half = active >> 1;
    for (Eigen::Index i = 0; i < active; ++i) diag(i) *= (i < half) ? lo : hi;
  }
  return diag;
}

} // namespace

Complex global_phase(int n, double phi) {
  check_register(n);
  const CVector casc = cascade_diagonal(n, phi);
  const Eigen::Index dim = casc.size();
  const Complex first = std::exp(Complex(0, -phi)) / casc(0);
  for (Eigen::Index i = 1; i < dim; ++i) {
    const Complex q = std::exp(Complex(0, phi)) / casc(i);
    if (std::abs(q - first) > 1e-12)
      throw std::runtime_error(
          "global_phase: cascade/reference quotient is not scalar");
  }
  const Complex closed_form =
      std::exp(Complex(0, phi * (1.0 - std::pow(2.0, -(n - 1)))));
  if (std::abs(first - closed_form) > 1e-12)
    throw std::runtime_error(
        "global_phase: quotient deviates from the closed form");
  return first;
}

namespace {

// diag(e^{i theta} on the all-zeros state of `wires`, 1 elsewhere), as a
// cascade plus a tracked global phase.
Circuit phase_on_all_zeros(const std::vector<int>& wires, double theta,
                           int n_wires) {
  const int n = static_cast<int>(wires.size());
  Circuit c = mcrz_cascade_on_wires(wires, -theta / 2.0, n_wires);
  const Complex correction =
      std::exp(Complex(0, theta / 2.0)) * global_phase(n, -theta / 2.0);
  c.append(Gate::global_phase(std::arg(correction)));
  return c;
}

// Multi-controlled X onto `target`, triggered when every wire in
// `open_controls` is |0>.
Circuit open_mcx(const std::vector<int>& open_controls, int target,
                 int n_wires) {
  Circuit c;
  c.n_wires = n_wires;
  c.append(Gate::hadamard(target));
  c.append(Gate::pauli_x(target));
  std::vector<int> all = open_controls;
  all.push_back(target);
  c.append(phase_on_all_zeros(all, std::numbers::pi, n_wires));
  c.append(Gate::pauli_x(target));
  c.append(Gate::hadamard(target));
  return c;
}

} // namespace

Circuit martyn_processing(int n, double phi) {
  check_register(n);
  const int aux = n;
  std::vector<int> reg;
  reg.reserve(static_cast<std::size_t>(n));
  for (int w = n - 1; w >= 0; --w) reg.push_back(w);

  Circuit c;
  c.n_wires = n + 1;
  const Circuit mcx = open_mcx(reg, aux, n + 1);
  c.append(mcx);
  // Register all-zero: aux was flipped to |1>, so Rz(-phi) puts e^{-i phi}
  // on the flagged branch and e^{+i phi} on every other one.
  c.append(Gate::rz(aux, -phi));
  c.append(mcx);
  return c;
}

Circuit decompose_mcrz(const Gate& g, int n_wires) {
  Circuit c;
  c.n_wires = n_wires;
  if (g.kind == GateKind::kRz) {
    c.append(g);
    return c;
  }
  if (g.kind != GateKind::kMcrz)
    throw std::invalid_argument("decompose_mcrz: expected an Rz or MCRZ gate");

  const std::vector<int> controls = g.control_wires();
  const int target = g.target_wire();
  const int k = static_cast<int>(controls.size());
  if (k == 0) {
    c.append(Gate::rz(target, g.angle));
    return c;
  }

  // Gray-code frame walk: a CNOT toggling control bit b folds that wire's
  // parity into the target, so the rotation at frame S acts on the parity
  // string S + {target}. Summing angle * prod(sign_i) / 2^k over every
  // control subset reproduces the controlled rotation; open controls give
  // the all-plus sign pattern.
  const double base = g.angle / std::pow(2.0, k);
  const unsigned long long count = 1ULL << k;
  for (unsigned long long j = 0; j < count; ++j) {
    const unsigned long long frame = j ^ (j >> 1);
    double sign = 1.0;
    for (int b = 0; b < k; ++b)
      if ((frame >> b) & 1 && !g.open_controls[static_cast<std::size_t>(b)])
        sign = -sign;
    c.append(Gate::rz(target, sign * base));
    const int toggle = (j + 1 == count) ? k - 1 : trailing_zeros(j + 1);
    c.append(Gate::cnot(controls[static_cast<std::size_t>(toggle)], target));
  }
  return c;
}

Circuit decompose_rotations(const Circuit& c) {
  Circuit out;
  out.n_wires = c.n_wires;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::kMcrz:
      case GateKind::kRz:
        out.append(decompose_mcrz(g, c.n_wires));
        break;
      case GateKind::kCnot:
      case GateKind::kPauliX:
      case GateKind::kHadamard:
      case GateKind::kGlobalPhase:
        out.append(g);
        break;
      default:
        throw std::invalid_argument(
            "decompose_rotations: dense gates are not decomposable here");
    }
  }
  return out;
}

namespace {

bool same_gate(const Gate& a, const Gate& b) {
  return a.kind == b.kind && a.wires == b.wires;
}

// Does g provably commute with CNOT(control, target)?
bool commutes_with_cnot(const Gate& g, int control, int target) {
  bool touches = false;
  for (int w : g.wires) touches |= (w == control || w == target);
  if (!touches) return true;
  switch (g.kind) {
    case GateKind::kGlobalPhase:
      return true;
    case GateKind::kCnot:
      // Shared control wires or shared target wires are fine; a wire that
      // is a target of one and a control of the other is not.
      return g.wires[1] != control && g.wires[0] != target;
    case GateKind::kRz:
      return g.wires[0] == control;
    case GateKind::kPauliX:
      return g.wires[0] == target;
    default:
      return false;
  }
}

// Does g provably commute with X(wire)?
bool commutes_with_x(const Gate& g, int wire) {
  bool touches = false;
  for (int w : g.wires) touches |= (w == wire);
  if (!touches) return true;
  switch (g.kind) {
    case GateKind::kGlobalPhase:
      return true;
    case GateKind::kPauliX:
      return true;
    case GateKind::kCnot:
      return g.wires[1] == wire; // X on a CNOT target commutes
    default:
      return false;
  }
}

bool commutes_with(const Gate& between, const Gate& pair_gate) {
  if (pair_gate.kind == GateKind::kCnot)
    return commutes_with_cnot(between, pair_gate.wires[0], pair_gate.wires[1]);
  return commutes_with_x(between, pair_gate.wires[0]);
}

} // namespace

Circuit cancel_cnots(const Circuit& c) {
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::kRz:
      case GateKind::kCnot:
      case GateKind::kPauliX:
      case GateKind::kHadamard:
      case GateKind::kGlobalPhase:
        break;
      default:
        throw std::invalid_argument(
            "cancel_cnots: only rotation/CNOT/X/H circuits are supported");
    }
  }

  std::vector<Gate> gates = c.gates;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < gates.size() && !changed; ++i) {
      const Gate& a = gates[i];
      if (a.kind != GateKind::kCnot && a.kind != GateKind::kPauliX) continue;
      for (std::size_t j = i + 1; j < gates.size(); ++j) {
        const Gate& b = gates[j];
        if (same_gate(a, b)) {
          gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
          gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
        if (!commutes_with(b, a)) break;
      }
    }
  }

  Circuit out;
  out.n_wires = c.n_wires;
  out.gates = std::move(gates);
  return out;
}

int count_cnots(const Circuit& c) {
  int n = 0;
  for (const Gate& g : c.gates)
    if (g.kind == GateKind::kCnot) ++n;
  return n;
}

long long cascade_cnot_count(int n) {
  if (n <= 1) return 0;
  return (1LL << n) - 2;
}

} // namespace mpobe
