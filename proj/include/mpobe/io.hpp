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

#include <optional>
#include <string>
#include <vector>

#include "mpobe/circuit.hpp"
#include "mpobe/lcu.hpp"
#include "mpobe/mpo.hpp"

namespace mpobe {

/// Parsed Hamiltonian spec file. Complex numbers in JSON are [re, im]
/// pairs; custom models carry explicit operator grids.
struct ModelSpec {
  std::string model; ///< ising | heisenberg | xy | pauli_product | custom
  int length = 0;
  double coupling = 0.0; ///< J
  double field = 0.0;    ///< g
  HeisenbergCouplings heisenberg;
  std::vector<PauliSiteCoefficients> pauli_sites;
  double zeta = 0.0;
  NormalizationMode normalization = NormalizationMode::kUniform;
  double explicit_norm = 0.0; ///< 0 = derive from site norms
  std::optional<Mpo> custom_mpo;
};

ModelSpec parse_model_spec(const std::string& json_text);
ModelSpec load_model_spec(const std::string& path);

/// Build the MPO described by a spec (shifted form when zeta > 0).
Mpo build_mpo(const ModelSpec& spec);

/// Pauli-string expansion of a spec (custom model is unsupported here).
PauliTermList pauli_terms(const ModelSpec& spec);

/// Deterministic JSON gate records, suitable for golden tests.
std::string circuit_to_json(const Circuit& c);

void write_text_file(const std::string& path, const std::string& contents);

} // namespace mpobe
