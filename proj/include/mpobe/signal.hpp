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

#include "mpobe/circuit.hpp"
#include "mpobe/numerics.hpp"

namespace mpobe {

// Signal-processing operator Pi_phi = exp(-i*phi*(2|0..0><0..0| - I)) on n
// ancilla wires: phase e^{-i phi} on the all-zeros state, e^{+i phi} on
// everything else.

/// Exact matrix diag(e^{-i phi}, e^{i phi}, ..., e^{i phi}), 2^n x 2^n.
CMatrix reference_projector_phase(int n, double phi);

/// Rotation cascade realizing Pi_phi up to a global phase: gate q (1-based)
/// has q-1 open controls on the preceding wires and rotates wire q by
/// phi / 2^(n-q). Wires are listed first-to-last; all gates are diagonal
/// and mutually commuting.
Circuit mcrz_cascade_on_wires(const std::vector<int>& wires, double phi,
                              int n_wires);

/// Cascade on a standalone register of n wires (wire n-1 is "first").
Circuit mcrz_cascade(int n, double phi);

/// Scalar c with c * (cascade unitary) = reference matrix. Computed from
/// the diagonal quotient, asserted scalar to 1e-12, and checked against
/// the closed form e^{i phi (1 - 1/2^(n-1))}.
Complex global_phase(int n, double phi);

/// Processing operator with one extra auxiliary wire (wire index n): an
/// open-multi-controlled X onto the auxiliary, a rotation on it, and the
/// uncomputation. Restricted to auxiliary |0> it equals the reference
/// matrix exactly.
Circuit martyn_processing(int n, double phi);

/// Decompose one multi-controlled Rz into single-qubit rotations and
/// CNOTs: a Gray-code frame walk over the control subsets, 2^k rotations
/// of magnitude angle/2^k and 2^k CNOTs for k >= 1 controls.
Circuit decompose_mcrz(const Gate& g, int n_wires);

/// Decompose every rotation gate of a circuit; CNOT/X/H/GlobalPhase pass
/// through unchanged.
Circuit decompose_rotations(const Circuit& c);

/// Peephole removal of equal CNOT pairs (and X pairs) whose in-between
/// gates provably commute with the removed gate. Unitary-preserving.
Circuit cancel_cnots(const Circuit& c);

int count_cnots(const Circuit& c);

/// CNOT count of the fully decomposed and cancelled n-wire cascade:
/// 0 for n <= 1, else 2^n - 2.
long long cascade_cnot_count(int n);

} // namespace mpobe
