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

#include "mpobe/costs.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mpobe/signal.hpp"

namespace mpobe {

namespace {

int ceil_log2(long long n) {
  int d = 0;
  while ((1LL << d) < n) ++d;
  return d;
}

CostRow lcu_row(std::string method, int length, long long m, int qet_degree,
                std::string notes) {
  const int ancillas = ceil_log2(m);
  CostRow row;
  row.method = std::move(method);
  row.length = length;
  row.chi_or_m = m;
  row.ancillas = ancillas;
  row.be_units = static_cast<double>(length) * static_cast<double>(m) *
                 static_cast<double>(m);
  row.sp_units = static_cast<double>(qet_degree) *
                 static_cast<double>(cascade_cnot_count(ancillas));
  row.notes = std::move(notes);
  return row;
}

} // namespace

CostReport cost_report(int length, long long chi, long long m,
                       int qet_degree) {
  if (length < 2) throw std::invalid_argument("cost_report: length must be >= 2");
  if (chi < 1) throw std::invalid_argument("cost_report: chi must be >= 1");
  if (m < 1) throw std::invalid_argument("cost_report: M must be >= 1");
  if (qet_degree < 1)
    throw std::invalid_argument("cost_report: degree must be >= 1");

  CostReport report;

  const int d = ceil_log2(chi);
  CostRow mpo;
  mpo.method = "mpo";
  mpo.length = length;
  mpo.chi_or_m = chi;
  mpo.ancillas = length + d;
  mpo.be_units = static_cast<double>(length) * std::pow(4.0, d + 2);
  mpo.sp_units = static_cast<double>(qet_degree) *
                 static_cast<double>(cascade_cnot_count(length + d));
  {
    std::ostringstream notes;
    notes << "D=" << d;
    mpo.notes = notes.str();
  }
  report.rows.push_back(std::move(mpo));

  report.rows.push_back(lcu_row("lcu", length, m, qet_degree, "given M"));
  report.rows.push_back(
      lcu_row("lcu_linear", length, 2LL * length - 1, qet_degree, "M=O(L)"));
  report.rows.push_back(lcu_row("lcu_exponential", length, 1LL << (2 * length),
                                qet_degree, "M=4^L"));
  return report;
}

AncillaComparison pauli_product_ancillas(int length) {
  if (length < 1)
    throw std::invalid_argument("pauli_product_ancillas: length must be >= 1");
  return AncillaComparison{2 * length + 1, length + 1};
}

std::string to_csv(const CostReport& report) {
  std::ostringstream out;
  out << "method,L,chi_or_M,ancillas,be_units,sp_units\n";
  for (const CostRow& row : report.rows) {
    out << row.method << ',' << row.length << ',' << row.chi_or_m << ','
        << row.ancillas << ',' << static_cast<long long>(row.be_units) << ','
        << static_cast<long long>(row.sp_units) << '\n';
  }
  return out.str();
}

} // namespace mpobe
