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

#include <complex>

#include <Eigen/Dense>

namespace mpobe {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Largest dense dimension the library will allocate (rows or cols).
inline constexpr Eigen::Index kDimensionCap = Eigen::Index{1} << 14;

struct SvdResult {
  CMatrix u;     ///< rows x rows unitary
  RVector sigma; ///< non-negative, descending
  CMatrix vdag;  ///< cols x cols unitary
};

struct QrResult {
  CMatrix q; ///< 2m x 2m unitary; first m columns reproduce the input exactly
  CMatrix r; ///< 2m x m upper triangular with real non-negative diagonal
};

struct EighResult {
  RVector values;  ///< ascending
  CMatrix vectors; ///< unitary, column i pairs with values(i)
};

bool is_finite(const CMatrix& m);
void require_finite(const CMatrix& m, const char* what);

/// Max absolute entry (the norm used by most tolerance checks here).
double max_abs(const CMatrix& m);

/// max_abs(U†U - I).
double unitarity_error(const CMatrix& u);

/// Full singular value decomposition, m = u * diag(sigma) * vdag.
SvdResult svd(const CMatrix& m);

/// Full QR of a 2m x m matrix. Column phases of q are fixed so that the
/// diagonal of r is real and non-negative; when the input columns are
/// orthonormal this pins the first m columns of q to the input itself.
QrResult qr_full(const CMatrix& w);

/// Largest singular value.
double spectral_norm(const CMatrix& m);

/// Eigendecomposition of a Hermitian matrix. Rejects inputs whose
/// asymmetry max_abs(h - h†) exceeds 1e-10.
EighResult eigh(const CMatrix& h);

/// Kronecker product, a ⊗ b. Errors out when the result would exceed the
/// dimension cap.
CMatrix kron(const CMatrix& a, const CMatrix& b,
             Eigen::Index dimension_cap = kDimensionCap);

/// Unitary completion of a unit vector: returns a square unitary whose
/// first column equals first_column.
CMatrix complete_to_unitary(const CVector& first_column);

namespace pauli {
CMatrix id();
CMatrix x();
CMatrix y();
CMatrix z();
} // namespace pauli

} // namespace mpobe
