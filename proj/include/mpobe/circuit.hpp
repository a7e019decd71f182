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

#pragma once

#include <string>
#include <vector>

#include "mpobe/dilation.hpp"
#include "mpobe/mpo.hpp"
#include "mpobe/numerics.hpp"

namespace mpobe {

/// Wire roles for a block-encoding circuit on 2L + D wires. Wire index ==
/// bit position in simulator basis states (wire 0 is the least significant
/// bit). Bond wires sit above dilation wires, which sit above the physical
/// register; within the physical register site 1 occupies the highest bit
/// so that extracted blocks compare directly against contract_dense.
struct WireLayout {
  std::vector<int> bond;     ///< bond[j] carries bit j of the bond value
  std::vector<int> dilation; ///< dilation[l] belongs to site l+1
  std::vector<int> physical; ///< physical[l] belongs to site l+1

  int n_wires() const;
  void validate() const;

  static WireLayout standard(int sites, int bond_qubits);
};

enum class GateKind {
  kDenseUnitary,
  kCnot,
  kRz,
  kMcrz,
  kPauliX,
  kHadamard,
  kStatePrep,
  kGlobalPhase,
};

/// One gate. Rotation gates use the convention Rz(a) = diag(e^{-ia}, e^{+ia}).
/// For dense and state-prep gates, wires are listed from the most to the
/// least significant bit of the gate matrix index.
struct Gate {
  GateKind kind = GateKind::kDenseUnitary;
  std::vector<int> wires;
  std::vector<bool> open_controls; ///< MCRZ only; true = trigger on |0>
  double angle = 0.0;
  CMatrix matrix;

  static Gate dense(CMatrix matrix, std::vector<int> wires);
  static Gate cnot(int control, int target);
  static Gate rz(int wire, double angle);
  static Gate mcrz(std::vector<int> controls, std::vector<bool> open,
                   int target, double angle);
  static Gate pauli_x(int wire);
  static Gate hadamard(int wire);
  static Gate state_prep(CMatrix matrix, std::vector<int> wires);
  static Gate global_phase(double angle);

  /// Controls of an MCRZ (all wires but the last).
  std::vector<int> control_wires() const;
  int target_wire() const;
  /// Diagonal in the computational basis on every wire it touches.
  bool is_diagonal() const;
  std::string kind_name() const;
};

struct Circuit {
  int n_wires = 0;
  std::vector<Gate> gates;

  void append(Gate g);
  void append(const Circuit& other);
  void validate() const;
};

/// Dense unitary of the whole circuit; gates apply in list order (gates[0]
/// acts first). Capped at 14 wires.
CMatrix circuit_unitary(const Circuit& c);

/// Apply the circuit to a state of dimension 2^n_wires, in place.
void apply_circuit(const Circuit& c, CVector& state);

struct BlockEncoding {
  Circuit circuit; ///< site unitaries only, temporal order site L..1
  WireLayout layout;
  double eta = 1.0;
};

/// Dilate every (normalized, reshaped) site tensor of a padded MPO.
std::vector<DilationResult> dilate_sites(const PaddedMpo& m);

/// Stitch per-site dilations into the block-encoding circuit. The bond
/// register threads through all site gates; each site adds one dilation
/// ancilla and acts on its physical qubit. Returns the circuit, layout and
/// the scale eta with contract_dense = eta * encoded block.
BlockEncoding assemble_block_encoding(const PaddedMpo& m,
                                      const std::vector<DilationResult>& dilations);

/// <prep_row, 0_dilation| U |prep_col, 0_dilation> as an operator on the
/// physical register. prep states are unit vectors on the bond register.
CMatrix extract_block(const CMatrix& u, const WireLayout& layout,
                      const CVector& prep_col, const CVector& prep_row);

/// Same block, computed by running the circuit on 2^L basis columns
/// instead of forming the full unitary.
CMatrix extract_block(const Circuit& c, const WireLayout& layout,
                      const CVector& prep_col, const CVector& prep_row);

/// State-preparation gates P_C and P_R on the bond wires: P_C|0..0> is the
/// bond input state and P_R|0..0> the measured state. Basis states map to
/// X patterns and uniform superpositions to Hadamard walls, matching the
/// textbook forms for the bundled models; anything else falls back to a
/// Householder completion.
std::pair<Gate, Gate> prep_gates(const PaddedMpo& m, const WireLayout& layout);

/// Circuit depth. With interleaved = false gates keep their list order and
/// pack greedily into wire-disjoint layers; with interleaved = true gates
/// may schedule as soon as their wire-sharing predecessors finish, which
/// amounts to reordering across commuting, wire-disjoint pairs.
int depth(const Circuit& c, bool interleaved);

/// Gate order realizing the interleaved schedule (stable within a layer).
Circuit scheduled(const Circuit& c);

/// Probability of finding every dilation wire in |0> and the bond register
/// in the row state after running the circuit on
/// |prep_col, 0_dilation, input>.
double success_probability(const Circuit& c, const WireLayout& layout,
                           const CVector& prep_col, const CVector& prep_row,
                           const CVector& input);

} // namespace mpobe
