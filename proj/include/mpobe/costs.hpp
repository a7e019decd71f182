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

namespace mpobe {

/// One row of the block-encoding cost comparison. Block-encoding units
/// follow the generic-synthesis model of one unit per 4^n for an n-wire
/// unitary; signal-processing units are the exact CNOT counts of the
/// decomposed processing cascade on the row's ancilla register.
struct CostRow {
  std::string method;
  int length = 0;        ///< L
  long long chi_or_m = 0;
  int ancillas = 0;
  double be_units = 0.0;
  double sp_units = 0.0;
  std::string notes;
};

struct CostReport {
  std::vector<CostRow> rows;
};

/// Rows for the MPO encoder at bond dimension chi, the LCU encoder with M
/// terms, and the two reference LCU regimes M ~ L and M = 4^L. qet_degree
/// multiplies the signal-processing column (one cascade per phase).
CostReport cost_report(int length, long long chi, long long m,
                       int qet_degree = 1);

/// Ancilla comparison for the shifted tensor-product-of-Paulis model:
/// per-site LCU (two ancillas each plus one control for the shift) versus
/// the MPO encoder (one dilation per site plus one bond wire).
struct AncillaComparison {
  int lcu = 0;
  int mpo = 0;
};
AncillaComparison pauli_product_ancillas(int length);

std::string to_csv(const CostReport& report);

} // namespace mpobe
