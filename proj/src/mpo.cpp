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

#include "mpobe/mpo.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mpobe {

namespace {

int ceil_log2(Eigen::Index n) {
  int d = 0;
  while ((Eigen::Index{1} << d) < n) ++d;
  return d;
}

void check_length(int length, const char* builder) {
  if (length < 2) {
    std::ostringstream msg;
    msg << builder << ": chain length must be at least 2, got " << length;
    throw std::invalid_argument(msg.str());
  }
}

} // namespace

const CMatrix& SiteTensor::op(Eigen::Index row, Eigen::Index col) const {
  return ops[static_cast<std::size_t>(row * chi_right + col)];
}

CMatrix& SiteTensor::op(Eigen::Index row, Eigen::Index col) {
  return ops[static_cast<std::size_t>(row * chi_right + col)];
}

SiteTensor SiteTensor::zeros(Eigen::Index chi_left, Eigen::Index chi_right) {
  SiteTensor t;
  t.chi_left = chi_left;
  t.chi_right = chi_right;
  t.ops.assign(static_cast<std::size_t>(chi_left * chi_right),
               CMatrix::Zero(2, 2));
  return t;
}

void SiteTensor::validate() const {
  if (chi_left < 1 || chi_right < 1)
    throw std::invalid_argument("SiteTensor: bond dimensions must be positive");
  if (ops.size() != static_cast<std::size_t>(chi_left * chi_right))
    throw std::invalid_argument("SiteTensor: grid size does not match bond dims");
  for (const CMatrix& o : ops) {
    if (o.rows() != 2 || o.cols() != 2)
      throw std::invalid_argument("SiteTensor: operator entries must be 2x2");
    require_finite(o, "SiteTensor");
  }
}

void Mpo::validate() const {
  if (sites.empty()) throw std::invalid_argument("Mpo: no sites");
  for (const SiteTensor& t : sites) t.validate();
  for (std::size_t l = 0; l + 1 < sites.size(); ++l) {
    if (sites[l].chi_right != sites[l + 1].chi_left) {
      std::ostringstream msg;
      msg << "Mpo: bond mismatch between sites " << l + 1 << " and " << l + 2
          << " (" << sites[l].chi_right << " vs " << sites[l + 1].chi_left
          << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  if (boundary_row.size() != sites.front().chi_left)
    throw std::invalid_argument("Mpo: boundary row length mismatch");
  if (boundary_col.size() != sites.back().chi_right)
    throw std::invalid_argument("Mpo: boundary column length mismatch");
}

double PaddedMpo::eta() const {
  if (mpo.site_norms.size() != mpo.sites.size())
    throw std::logic_error("PaddedMpo::eta: normalize() has not run");
  double product = 1.0;
  for (double n : mpo.site_norms) product *= n;
  return product * row_norm * col_norm;
}

Mpo build_ising(int length, double coupling, double field) {
  check_length(length, "build_ising");
  SiteTensor a = SiteTensor::zeros(3, 3);
  a.op(0, 0) = pauli::id();
  a.op(1, 0) = pauli::z();
  a.op(2, 0) = field * pauli::x();
  a.op(2, 1) = coupling * pauli::z();
  a.op(2, 2) = pauli::id();

  Mpo m;
  m.sites.assign(static_cast<std::size_t>(length), a);
  m.boundary_row = CVector::Zero(3);
  m.boundary_row(2) = 1.0;
  m.boundary_col = CVector::Zero(3);
  m.boundary_col(0) = 1.0;
  m.label = "ising";
  return m;
}

Mpo build_ising_shifted(int length, double coupling, double field,
                        double zeta) {
  check_length(length, "build_ising_shifted");
  if (zeta <= 0.0)
    throw std::invalid_argument(
        "build_ising_shifted: zeta must be positive (per-site root of a "
        "non-positive shift is not supported)");

  const double root = std::pow(zeta, 1.0 / length);
  SiteTensor a = SiteTensor::zeros(4, 4);
  a.op(0, 0) = pauli::id();
  a.op(1, 0) = pauli::z();
  a.op(2, 0) = field * pauli::x();
  a.op(2, 1) = coupling * pauli::z();
  a.op(2, 2) = pauli::id();
  a.op(3, 3) = root * pauli::id();

  Mpo m;
  m.sites.assign(static_cast<std::size_t>(length), a);
  m.boundary_row = CVector::Zero(4);
  m.boundary_row(2) = 1.0;
  m.boundary_row(3) = 1.0;
  m.boundary_col = CVector::Zero(4);
  m.boundary_col(0) = 1.0;
  m.boundary_col(3) = 1.0;
  m.label = "ising_shifted";
  return m;
}

Mpo build_heisenberg(int length, const HeisenbergCouplings& c) {
  check_length(length, "build_heisenberg");
  SiteTensor a = SiteTensor::zeros(5, 5);
  a.op(0, 0) = pauli::id();
  a.op(1, 0) = pauli::x();
  a.op(2, 0) = pauli::y();
  a.op(3, 0) = pauli::z();
  a.op(4, 0) = c.gx * pauli::x() + c.gy * pauli::y() + c.gz * pauli::z();
  a.op(4, 1) = c.jx * pauli::x();
  a.op(4, 2) = c.jy * pauli::y();
  a.op(4, 3) = c.jz * pauli::z();
  a.op(4, 4) = pauli::id();

  Mpo m;
  m.sites.assign(static_cast<std::size_t>(length), a);
  m.boundary_row = CVector::Zero(5);
  m.boundary_row(4) = 1.0;
  m.boundary_col = CVector::Zero(5);
  m.boundary_col(0) = 1.0;
  m.label = "heisenberg";
  return m;
}

Mpo build_xy(int length, double jx, double jy, double gx, double gy) {
  check_length(length, "build_xy");
  SiteTensor a = SiteTensor::zeros(4, 4);
  a.op(0, 0) = pauli::id();
  a.op(1, 0) = pauli::x();
  a.op(2, 0) = pauli::y();
  a.op(3, 0) = gx * pauli::x() + gy * pauli::y();
  a.op(3, 1) = jx * pauli::x();
  a.op(3, 2) = jy * pauli::y();
  a.op(3, 3) = pauli::id();

  Mpo m;
  m.sites.assign(static_cast<std::size_t>(length), a);
  m.boundary_row = CVector::Zero(4);
  m.boundary_row(3) = 1.0;
  m.boundary_col = CVector::Zero(4);
  m.boundary_col(0) = 1.0;
  m.label = "xy";
  return m;
}

Mpo build_pauli_product(const std::vector<PauliSiteCoefficients>& site_coeffs,
                        double zeta) {
  if (site_coeffs.empty())
    throw std::invalid_argument("build_pauli_product: no sites");
  if (zeta < 0.0)
    throw std::invalid_argument("build_pauli_product: zeta must be >= 0");

  const auto length = static_cast<Eigen::Index>(site_coeffs.size());
  const bool shifted = zeta > 0.0;
  const double root =
      shifted ? std::pow(zeta, 1.0 / static_cast<double>(length)) : 0.0;

  Mpo m;
  m.sites.reserve(site_coeffs.size());
  for (const PauliSiteCoefficients& c : site_coeffs) {
    const CMatrix op = c.alpha * pauli::id() + c.beta * pauli::x() +
                       c.gamma * pauli::y() + c.delta * pauli::z();
    SiteTensor t = SiteTensor::zeros(shifted ? 2 : 1, shifted ? 2 : 1);
    t.op(0, 0) = op;
    if (shifted) t.op(1, 1) = root * pauli::id();
    m.sites.push_back(std::move(t));
  }
  if (shifted) {
    m.boundary_row = CVector::Ones(2);
    m.boundary_col = CVector::Ones(2);
  } else {
    m.boundary_row = CVector::Ones(1);
    m.boundary_col = CVector::Ones(1);
  }
  m.label = "pauli_product";
  return m;
}

CMatrix reshape_site(const SiteTensor& t) {
  CMatrix m = CMatrix::Zero(t.chi_left * 2, t.chi_right * 2);
  for (Eigen::Index r = 0; r < t.chi_left; ++r)
    for (Eigen::Index c = 0; c < t.chi_right; ++c)
      m.block(r * 2, c * 2, 2, 2) = t.op(r, c);
  return m;
}

SiteTensor site_from_matrix(const CMatrix& m, Eigen::Index chi_left,
                            Eigen::Index chi_right) {
  if (m.rows() != chi_left * 2 || m.cols() != chi_right * 2)
    throw std::invalid_argument("site_from_matrix: dimension mismatch");
  SiteTensor t = SiteTensor::zeros(chi_left, chi_right);
  for (Eigen::Index r = 0; r < chi_left; ++r)
    for (Eigen::Index c = 0; c < chi_right; ++c)
      t.op(r, c) = m.block(r * 2, c * 2, 2, 2);
  return t;
}

PaddedMpo pad_to_power_of_two(const Mpo& m) {
  m.validate();
  Eigen::Index chi = 1;
  for (const SiteTensor& t : m.sites) {
    chi = std::max(chi, t.chi_left);
    chi = std::max(chi, t.chi_right);
  }
  const int d = ceil_log2(chi);
  const Eigen::Index padded = Eigen::Index{1} << d;

  PaddedMpo out;
  out.bond_qubits = d;
  out.mpo.label = m.label;
  out.mpo.site_norms = m.site_norms;
  out.mpo.sites.reserve(m.sites.size());
  for (const SiteTensor& t : m.sites) {
    SiteTensor p = SiteTensor::zeros(padded, padded);
    for (Eigen::Index r = 0; r < t.chi_left; ++r)
      for (Eigen::Index c = 0; c < t.chi_right; ++c) p.op(r, c) = t.op(r, c);
    out.mpo.sites.push_back(std::move(p));
  }
  out.mpo.boundary_row = CVector::Zero(padded);
  out.mpo.boundary_row.head(m.boundary_row.size()) = m.boundary_row;
  out.mpo.boundary_col = CVector::Zero(padded);
  out.mpo.boundary_col.head(m.boundary_col.size()) = m.boundary_col;

  out.row_norm = out.mpo.boundary_row.norm();
  out.col_norm = out.mpo.boundary_col.norm();
  if (out.row_norm < 1e-300 || out.col_norm < 1e-300)
    throw std::invalid_argument("pad_to_power_of_two: zero boundary vector");

  // The bond register is prepared in |C>/|C| and projected onto the ket
  // whose bra has the row-vector amplitudes, i.e. conj(R)/|R|.
  out.prep_col_state = out.mpo.boundary_col / out.col_norm;
  out.prep_row_state = out.mpo.boundary_row.conjugate() / out.row_norm;
  return out;
}

PaddedMpo normalize(PaddedMpo m, NormalizationMode mode, double explicit_norm) {
  m.mpo.validate();
  std::vector<double> site_norms;
  site_norms.reserve(m.mpo.sites.size());
  double max_norm = 0.0;
  for (const SiteTensor& t : m.mpo.sites) {
    const double n = spectral_norm(reshape_site(t));
    site_norms.push_back(n);
    max_norm = std::max(max_norm, n);
  }

  if (mode == NormalizationMode::kUniform) {
    double n = std::max(max_norm, 1e-300);
    if (explicit_norm > 0.0) {
      if (explicit_norm < max_norm - 1e-12) {
        std::ostringstream msg;
        msg << "normalize: explicit normalization " << explicit_norm
            << " is below the largest site norm " << max_norm;
        throw std::invalid_argument(msg.str());
      }
      n = explicit_norm;
    }
    m.mpo.site_norms.assign(m.mpo.sites.size(), n);
  } else {
    if (explicit_norm > 0.0)
      throw std::invalid_argument(
          "normalize: explicit normalization requires uniform mode");
    for (double& n : site_norms) n = std::max(n, 1e-300);
    m.mpo.site_norms = std::move(site_norms);
  }
  return m;
}

CMatrix contract_dense(const Mpo& m) {
  m.validate();
  const Eigen::Index length = m.length();
  if (length > 12)
    throw std::invalid_argument(
        "contract_dense: chain length exceeds the dense cap of 12 sites");

  // Running row vector of operators: start with R * A(1), then absorb one
  // site at a time; entries grow by tensor product.
  std::vector<CMatrix> row(static_cast<std::size_t>(m.sites[0].chi_right));
  for (Eigen::Index c = 0; c < m.sites[0].chi_right; ++c) {
    CMatrix acc = CMatrix::Zero(2, 2);
    for (Eigen::Index r = 0; r < m.sites[0].chi_left; ++r)
      acc += m.boundary_row(r) * m.sites[0].op(r, c);
    row[static_cast<std::size_t>(c)] = acc;
  }

  for (Eigen::Index l = 1; l < length; ++l) {
    const SiteTensor& t = m.sites[static_cast<std::size_t>(l)];
    const Eigen::Index dim = row[0].rows() * 2;
    std::vector<CMatrix> next(static_cast<std::size_t>(t.chi_right),
                              CMatrix::Zero(dim, dim));
    for (Eigen::Index c = 0; c < t.chi_right; ++c)
      for (Eigen::Index r = 0; r < t.chi_left; ++r) {
        const CMatrix& o = t.op(r, c);
        if (max_abs(o) == 0.0) continue;
        next[static_cast<std::size_t>(c)] +=
            kron(row[static_cast<std::size_t>(r)], o);
      }
    row = std::move(next);
  }

  CMatrix out = CMatrix::Zero(row[0].rows(), row[0].cols());
  for (Eigen::Index c = 0; c < m.boundary_col.size(); ++c)
    out += m.boundary_col(c) * row[static_cast<std::size_t>(c)];
  return out;
}

CMatrix contract_dense(const PaddedMpo& m) { return contract_dense(m.mpo); }

} // namespace mpobe
