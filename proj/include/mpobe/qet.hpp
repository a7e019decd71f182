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

#include <functional>
#include <string>
#include <vector>

#include "mpobe/circuit.hpp"
#include "mpobe/numerics.hpp"

namespace mpobe {

enum class Parity { kEven, kOdd };

/// Angles phi_1..phi_d driving the processing operators of a degree-d
/// eigenvalue transformation.
struct PhaseSequence {
  std::vector<double> phases;
  int degree = 0;
  Parity parity = Parity::kOdd;
  std::string convention = "projector-phase";

  void validate() const;
};

/// Chebyshev-ratio filter: ~1 at x = 0, suppressed for |x| >= gap.
struct FilterSpec {
  int degree = 1;    ///< Chebyshev order of the ratio polynomial
  double gap = 0.1;  ///< in (0, 1)
};

/// Chebyshev polynomial T_d, valid for any real argument.
double chebyshev_t(int degree, double x);

/// f_d(x, gap) = T_d(-1 + 2(x^2-gap^2)/(1-gap^2)) / T_d(-1 - 2 gap^2/(1-gap^2)).
double filter_target(double x, const FilterSpec& spec);

/// Full eigenvalue-transformation circuit: alternates the referenced block
/// encoding (prep gates absorbed so every ancilla is projected onto |0..0>)
/// with processing cascades on the L + D ancilla wires. Tracked global
/// phases make each cascade section an exact processing operator.
Circuit build_qet_circuit(const BlockEncoding& be, const Gate& prep_col,
                          const Gate& prep_row, const PhaseSequence& ph);

/// Ground truth: multiply exact dense processing operators with U/U^dag per
/// the even/odd alternation and project every ancilla onto |0>. u_be is the
/// referenced block-encoding unitary (prep gates absorbed).
CMatrix qet_dense_oracle(const CMatrix& u_be, const WireLayout& layout,
                         const PhaseSequence& ph);

/// 2x2 companion: the same product with the block encoding replaced by the
/// Hermitian reflection [[x, s],[s, -x]], s = sqrt(1-x^2), and processing
/// operators by diag(e^{-i phi}, e^{i phi}). Returns the (0,0) entry; the
/// full transformation acts eigenvalue-wise through exactly this scalar.
Complex scalar_qsp(const PhaseSequence& ph, double x);

struct FitOptions {
  std::uint64_t seed = 1;
  int max_iterations = 300;
  int starts = 8;
  double residual_bound = 0.05; ///< warn above this sup-norm residual
};

struct FitResult {
  PhaseSequence phases;
  double sup_residual = 0.0; ///< max |Re qsp - target| on a dense grid
  bool warning = false;      ///< sup_residual above the configured bound
};

/// Least-squares fit of Re scalar_qsp to a real target over Chebyshev
/// nodes: Levenberg-Marquardt with analytic Jacobian and deterministic
/// multi-starts. degree <= 40.
FitResult fit_phases(const std::function<double(double)>& target,
                     Parity parity, int degree,
                     const FitOptions& options = {});

/// Phases that represent T_degree exactly in this convention.
PhaseSequence chebyshev_phases(int degree);

PhaseSequence load_phases(const std::string& path);
void save_phases(const std::string& path, const PhaseSequence& ph);

/// (M + M^dag) / 2 — classical post-processing of a simulated block.
CMatrix hermitian_part(const CMatrix& m);

} // namespace mpobe
