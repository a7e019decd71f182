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

#include "mpobe/numerics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mpobe {

bool is_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

void require_finite(const CMatrix& m, const char* what) {
  if (!is_finite(m)) {
    std::ostringstream msg;
    msg << what << ": matrix contains NaN or Inf entries";
    throw std::invalid_argument(msg.str());
  }
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double unitarity_error(const CMatrix& u) {
  if (u.rows() != u.cols())
    throw std::invalid_argument("unitarity_error: matrix not square");
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
}

SvdResult svd(const CMatrix& m) {
  require_finite(m, "svd");
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("svd: decomposition did not converge");
  return SvdResult{solver.matrixU(), solver.singularValues(),
                   solver.matrixV().adjoint()};
}

QrResult qr_full(const CMatrix& w) {
  require_finite(w, "qr_full");
  const Eigen::Index m = w.cols();
  if (w.rows() != 2 * m)
    throw std::invalid_argument("qr_full: expected a 2m x m matrix");

  Eigen::HouseholderQR<CMatrix> solver(w);
  CMatrix q = solver.householderQ();
  CMatrix r = CMatrix::Zero(2 * m, m);
  r.topRows(m) =
      solver.matrixQR().topRows(m).triangularView<Eigen::Upper>();

  // Fix per-column phases so that diag(r) is real and non-negative. This
  // makes the first m columns of q equal w whenever w's columns are
  // orthonormal.
  for (Eigen::Index j = 0; j < m; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 1e-14) {
      const Complex phase = d / std::abs(d);
      q.col(j) *= phase;
      r.row(j) *= std::conj(phase);
    }
  }
  return QrResult{std::move(q), std::move(r)};
}

double spectral_norm(const CMatrix& m) {
  require_finite(m, "spectral_norm");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectral_norm: svd did not converge");
  return solver.singularValues()(0);
}

EighResult eigh(const CMatrix& h) {
  require_finite(h, "eigh");
  if (h.rows() != h.cols())
    throw std::invalid_argument("eigh: matrix not square");
  const double asymmetry = max_abs(h - h.adjoint());
  if (asymmetry > 1e-10) {
    std::ostringstream msg;
    msg << "eigh: input is not Hermitian, max |H - H^dag| = " << asymmetry;
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigendecomposition did not converge");
  return EighResult{solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix kron(const CMatrix& a, const CMatrix& b, Eigen::Index dimension_cap) {
  require_finite(a, "kron");
  require_finite(b, "kron");
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > dimension_cap || cols > dimension_cap) {
    std::ostringstream msg;
    msg << "kron: result dimension " << rows << " x " << cols
        << " exceeds cap " << dimension_cap;
    throw std::invalid_argument(msg.str());
  }
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix complete_to_unitary(const CVector& first_column) {
  const Eigen::Index n = first_column.size();
  if (n == 0)
    throw std::invalid_argument("complete_to_unitary: empty vector");
  const double norm = first_column.norm();
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("complete_to_unitary: vector is not unit norm");

  const CMatrix column = first_column;
  Eigen::HouseholderQR<CMatrix> solver(column);
  CMatrix q = solver.householderQ();
  const Complex d = solver.matrixQR()(0, 0);
  if (std::abs(d) > 1e-14) q.col(0) *= d / std::abs(d);
  return q;
}

namespace pauli {

CMatrix id() { return CMatrix::Identity(2, 2); }

CMatrix x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix y() {
  CMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

CMatrix z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

} // namespace pauli

} // namespace mpobe
