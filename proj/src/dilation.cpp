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

#include "mpobe/dilation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mpobe {

DilationResult unitary_dilation(const CMatrix& m, double normalization) {
  require_finite(m, "unitary_dilation");
  if (m.rows() != m.cols())
    throw std::invalid_argument("unitary_dilation: matrix must be square");
  if (!(normalization > 0.0))
    throw std::invalid_argument("unitary_dilation: normalization must be > 0");

  const Eigen::Index dim = m.rows();
  const SvdResult decomposition = svd(m);
  const double top = dim > 0 ? decomposition.sigma(0) : 0.0;
  if (normalization < top - 1e-12) {
    std::ostringstream msg;
    msg << "unitary_dilation: normalization violates spectral bound ("
        << normalization << " < " << top << ")";
    throw std::invalid_argument(msg.str());
  }

  // B = sqrt(I - S^2/N^2) V^dag. Entries of I - S^2/N^2 may dip slightly
  // below zero when sigma_max == N; clamp those to zero.
  RVector residues(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double s = decomposition.sigma(i) / normalization;
    double r = (1.0 - s) * (1.0 + s);
    if (r < 0.0) {
      if (r < -1e-9)
        throw std::runtime_error(
            "unitary_dilation: singular value exceeds normalization beyond "
            "clamp tolerance");
      r = 0.0;
    }
    residues(i) = std::sqrt(r);
  }
  const CMatrix b = residues.asDiagonal() * decomposition.vdag;

  CMatrix w(2 * dim, dim);
  w.topRows(dim) = m / normalization;
  w.bottomRows(dim) = b;

  QrResult qr = qr_full(w);
  DilationResult out;
  out.unitary = std::move(qr.q);
  out.source_dim = dim;
  out.normalization = normalization;
  out.residual = max_abs(out.unitary.topLeftCorner(dim, dim) - m / normalization);
  return out;
}

DilationReport verify_dilation(const DilationResult& r, const CMatrix& m,
                               double normalization, double tolerance) {
  DilationReport report;
  report.unitarity_err = unitarity_error(r.unitary);
  const Eigen::Index dim = m.rows();
  report.block_err =
      max_abs(r.unitary.topLeftCorner(dim, dim) - m / normalization);
  report.ok = report.unitarity_err <= tolerance && report.block_err <= tolerance;
  return report;
}

} // namespace mpobe
