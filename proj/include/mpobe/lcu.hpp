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

#include "mpobe/circuit.hpp"
#include "mpobe/mpo.hpp"
#include "mpobe/numerics.hpp"

namespace mpobe {

struct PauliTerm {
  double coeff = 0.0;
  std::string word; ///< length-L string over {I, X, Y, Z}, site 1 first
};

struct PauliTermList {
  std::vector<PauliTerm> terms;
  int length = 0;      ///< L
  double lambda = 0.0; ///< sum |coeff|

  void validate() const;
};

PauliTermList make_term_list(std::vector<PauliTerm> terms, int length);

// Exact expansions of the bundled models into Pauli strings. Zero
// coefficients are dropped.
PauliTermList pauli_terms_ising(int length, double coupling, double field);
PauliTermList pauli_terms_heisenberg(int length, const HeisenbergCouplings& c);
PauliTermList pauli_terms_xy(int length, double jx, double jy, double gx,
                             double gy);
PauliTermList pauli_terms_pauli_product(
    const std::vector<PauliSiteCoefficients>& site_coeffs, double zeta);

/// Dense sum(coeff * Pauli word), site 1 on the highest qubit.
CMatrix terms_dense(const PauliTermList& t);

struct LcuEncoding {
  Circuit circuit;   ///< PREP, SELECT, PREP^dag
  WireLayout layout; ///< ancillas in `bond`, system in `physical`
  double lambda = 0.0;
};

/// PREP-SELECT-PREP^dag block encoding of the term list: PREP carries
/// amplitudes sqrt(|coeff|/lambda), coefficient signs fold into SELECT, and
/// the all-ancilla |0> block equals H / lambda.
LcuEncoding build_lcu_circuit(const PauliTermList& t);

PauliTermList load_terms(const std::string& path);
void save_terms(const std::string& path, const PauliTermList& t);

} // namespace mpobe
