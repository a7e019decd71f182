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

#include "mpobe/numerics.hpp"

namespace mpobe {

/// One MPO tensor: a chi_left x chi_right grid of 2x2 operators acting on
/// the site's physical qubit.
struct SiteTensor {
  Eigen::Index chi_left = 0;
  Eigen::Index chi_right = 0;
  std::vector<CMatrix> ops; ///< row-major, ops[r * chi_right + c] is 2x2

  const CMatrix& op(Eigen::Index row, Eigen::Index col) const;
  CMatrix& op(Eigen::Index row, Eigen::Index col);

  static SiteTensor zeros(Eigen::Index chi_left, Eigen::Index chi_right);
  void validate() const;
};

/// Operator chain R * A(1) * A(2) * ... * A(L) * C, where entries of the
/// A's multiply as tensor products across sites. Boundary vectors are kept
/// unnormalized; their norms fold into the encoding scale eta.
struct Mpo {
  std::vector<SiteTensor> sites;
  CVector boundary_row; ///< length chi_left of the first site
  CVector boundary_col; ///< length chi_right of the last site
  std::vector<double> site_norms; ///< empty until normalize() runs
  std::string label;

  Eigen::Index length() const { return static_cast<Eigen::Index>(sites.size()); }
  void validate() const;
};

/// MPO with uniform bond dimension 2^bond_qubits plus the unit-norm states
/// that the bond register is prepared and measured in.
struct PaddedMpo {
  Mpo mpo;
  int bond_qubits = 0;     ///< D
  CVector prep_col_state;  ///< |C>/|C| on the bond register
  CVector prep_row_state;  ///< ket measured at the end; conj(R)/|R|
  double col_norm = 1.0;
  double row_norm = 1.0;

  Eigen::Index length() const { return mpo.length(); }
  Eigen::Index chi() const { return Eigen::Index{1} << bond_qubits; }

  /// Scale relating the dense contraction to the block the circuit
  /// encodes: contract_dense = eta * encoded block. Requires normalize().
  double eta() const;
};

enum class NormalizationMode { kUniform, kPerSite };

// Model builders (finite-state-automaton MPO forms).

/// J sum Z_l Z_{l+1} + g sum X_l, chi = 3.
Mpo build_ising(int length, double coupling, double field);

/// Ising plus zeta * I folded into the MPO itself, chi = 4. The boundary
/// vectors pick up norm sqrt(2) each; contract_dense already includes them.
Mpo build_ising_shifted(int length, double coupling, double field, double zeta);

struct HeisenbergCouplings {
  double jx = 0, jy = 0, jz = 0;
  double gx = 0, gy = 0, gz = 0;
};

/// sum (JX XX + JY YY + JZ ZZ) + sum (gX X + gY Y + gZ Z), chi = 5.
Mpo build_heisenberg(int length, const HeisenbergCouplings& c);

/// Heisenberg restricted to the XY plane, chi = 4.
Mpo build_xy(int length, double jx, double jy, double gx, double gy);

struct PauliSiteCoefficients {
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
};

/// Tensor product of per-site (alpha I + beta X + gamma Y + delta Z),
/// optionally shifted by zeta * I. chi = 1 when zeta == 0, else 2.
/// Sites need not be translation invariant.
Mpo build_pauli_product(const std::vector<PauliSiteCoefficients>& site_coeffs,
                        double zeta);

/// Reshape a site tensor to a (chi_left*2) x (chi_right*2) matrix with
/// row = bond_out * 2 + phys_out and col = bond_in * 2 + phys_in.
CMatrix reshape_site(const SiteTensor& t);

/// Inverse of reshape_site for the given bond dimensions.
SiteTensor site_from_matrix(const CMatrix& m, Eigen::Index chi_left,
                            Eigen::Index chi_right);

/// Zero-pad all bond dimensions up to the next power of two and record the
/// unit-norm bond preparation/measurement states.
PaddedMpo pad_to_power_of_two(const Mpo& m);

/// Assign per-site normalization factors N_l >= |reshape_site(l)|.
/// Uniform mode uses one N for every site (the max over sites unless
/// explicit_norm provides a larger value); per-site mode uses each site's
/// own norm.
PaddedMpo normalize(PaddedMpo m, NormalizationMode mode,
                    double explicit_norm = 0.0);

/// Exact dense contraction of the operator chain, a 2^L x 2^L matrix with
/// site 1 on the most significant physical qubit. The ground-truth oracle
/// for every circuit-level test. Capped at L <= 12.
CMatrix contract_dense(const Mpo& m);
CMatrix contract_dense(const PaddedMpo& m);

} // namespace mpobe
