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

#include <doctest.h>

#include <random>

#include "mpobe/circuit.hpp"
#include "mpobe/signal.hpp"
#include "oracles.hpp"

using namespace mpobe;

namespace {

BlockEncoding encode(const Mpo& model, NormalizationMode mode,
                     double explicit_norm = 0.0) {
  PaddedMpo padded = normalize(pad_to_power_of_two(model), mode, explicit_norm);
  return assemble_block_encoding(padded, dilate_sites(padded));
}

Mpo identity_mpo(int length) {
  std::vector<PauliSiteCoefficients> sites(
      static_cast<std::size_t>(length), PauliSiteCoefficients{1, 0, 0, 0});
  return build_pauli_product(sites, 0.0);
}

} // namespace

TEST_CASE("circuit_unitary: empty circuit and a single CNOT") {
  Circuit empty;
  empty.n_wires = 3;
  CHECK(max_abs(circuit_unitary(empty) - CMatrix::Identity(8, 8)) == 0.0);

  Circuit cnot;
  cnot.n_wires = 2;
  cnot.append(Gate::cnot(1, 0));
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = expected(1, 1) = 1; // control wire 1 clear
  expected(3, 2) = expected(2, 3) = 1; // control set flips wire 0
  CHECK(max_abs(circuit_unitary(cnot) - expected) == 0.0);
}

TEST_CASE("circuit_unitary: gate kinds match the embedded-matrix oracle") {
  std::mt19937_64 rng(51);
  Circuit c;
  c.n_wires = 4;
  c.append(Gate::hadamard(2));
  c.append(Gate::cnot(2, 0));
  c.append(Gate::rz(1, 0.37));
  c.append(Gate::mcrz({3, 0}, {true, false}, 1, -0.81));
  c.append(Gate::pauli_x(3));
  c.append(Gate::global_phase(0.21));
  Eigen::HouseholderQR<CMatrix> qr(oracle::random_matrix(4, 4, rng));
  c.append(Gate::dense(CMatrix(qr.householderQ()), {1, 3}));

  CHECK(max_abs(circuit_unitary(c) - oracle::circuit_matrix_product(c)) < 1e-12);
}

TEST_CASE("circuit_unitary: random three-gate circuits against the oracle") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 25; ++trial) {
    Circuit c;
    c.n_wires = 3;
    for (int g = 0; g < 3; ++g) {
      switch (rng() % 4) {
        case 0: {
          const int control = static_cast<int>(rng() % 3);
          c.append(Gate::cnot(control, (control + 1 + static_cast<int>(rng() % 2)) % 3));
          break;
        }
        case 1: c.append(Gate::rz(static_cast<int>(rng() % 3), 0.1 * (1 + trial)));
                break;
        case 2: c.append(Gate::hadamard(static_cast<int>(rng() % 3))); break;
        default: {
          Eigen::HouseholderQR<CMatrix> qr(oracle::random_matrix(2, 2, rng));
          c.append(Gate::dense(CMatrix(qr.householderQ()),
                               {static_cast<int>(rng() % 3)}));
        }
      }
    }
    CHECK(max_abs(circuit_unitary(c) - oracle::circuit_matrix_product(c)) < 1e-12);
  }
}

TEST_CASE("circuit_unitary: wire cap") {
  Circuit c;
  c.n_wires = 15;
  CHECK_THROWS_AS(circuit_unitary(c), std::invalid_argument);
}

TEST_CASE("assemble_block_encoding: identity MPO gives an identity block") {
  const BlockEncoding be = encode(identity_mpo(2), NormalizationMode::kUniform);
  CHECK(be.eta == doctest::Approx(1.0));
  const CVector trivial = CVector::Ones(1);
  const CMatrix block = extract_block(be.circuit, be.layout, trivial, trivial);
  CHECK(max_abs(block - CMatrix::Identity(4, 4)) < 1e-11);
}

TEST_CASE("block-encoding identity for all builders") {
  struct Case {
    Mpo model;
    double tolerance;
  };
  std::vector<Case> cases;
  for (int length = 2; length <= 4; ++length) {
    cases.push_back({build_ising(length, 1.0, 0.5), 1e-10});
    cases.push_back({build_ising_shifted(length, 0.8, 0.4, 1.1), 1e-10});
    cases.push_back({build_xy(length, 0.9, -0.2, 0.3, 0.1), 1e-10});
    std::vector<PauliSiteCoefficients> sites;
    std::mt19937_64 rng(static_cast<std::uint64_t>(60 + length));
    std::uniform_real_distribution<double> dist(-1.2, 1.2);
    for (int l = 0; l < length; ++l)
      sites.push_back({dist(rng), dist(rng), dist(rng), dist(rng)});
    cases.push_back({build_pauli_product(sites, 1.7), 1e-10});
  }
  cases.push_back({build_heisenberg(2, {1.0, 0.7, -0.4, 0.2, 0.0, 0.5}), 1e-10});
  cases.push_back({build_heisenberg(3, {1.0, 0.7, -0.4, 0.2, 0.0, 0.5}), 1e-10});

  for (const Case& test : cases) {
    const CMatrix h = contract_dense(test.model);
    for (NormalizationMode mode :
         {NormalizationMode::kUniform, NormalizationMode::kPerSite}) {
      PaddedMpo padded = normalize(pad_to_power_of_two(test.model), mode);
      const BlockEncoding be =
          assemble_block_encoding(padded, dilate_sites(padded));
      const CMatrix block = extract_block(be.circuit, be.layout,
                                          padded.prep_col_state,
                                          padded.prep_row_state);
      CHECK(max_abs(be.eta * block - h) < test.tolerance);
    }
  }
}

TEST_CASE("extract_block: dense-unitary route agrees with the state route") {
  const Mpo model = build_ising(3, 1.0, 0.5);
  PaddedMpo padded =
      normalize(pad_to_power_of_two(model), NormalizationMode::kUniform);
  const BlockEncoding be = assemble_block_encoding(padded, dilate_sites(padded));
  const CMatrix u = circuit_unitary(be.circuit);
  const CMatrix via_unitary =
      extract_block(u, be.layout, padded.prep_col_state, padded.prep_row_state);
  const CMatrix via_states = extract_block(be.circuit, be.layout,
                                           padded.prep_col_state,
                                           padded.prep_row_state);
  CHECK(max_abs(via_unitary - via_states) < 1e-12);
  CHECK(max_abs(be.eta * via_unitary - contract_dense(model)) < 1e-10);
}

TEST_CASE("extract_block: identity unitary and orthogonal prep states") {
  const WireLayout layout = WireLayout::standard(1, 1);
  const CMatrix u = CMatrix::Identity(8, 8);
  CVector c0(2), r0(2);
  c0 << 1, 0;
  r0 << 1, 0;
  CHECK(max_abs(extract_block(u, layout, c0, r0) - CMatrix::Identity(2, 2)) == 0.0);

  CVector r1(2);
  r1 << 0, 1;
  CHECK(max_abs(extract_block(u, layout, c0, r1)) == 0.0);

  CVector bad(2);
  bad << 0.5, 0.5;
  CHECK_THROWS_AS(extract_block(u, layout, bad, r0), std::invalid_argument);
}

TEST_CASE("prep_gates: Ising maps |00> to the measured |10> state") {
  PaddedMpo padded = normalize(pad_to_power_of_two(build_ising(3, 1.0, 0.5)),
                               NormalizationMode::kUniform);
  const WireLayout layout = WireLayout::standard(3, padded.bond_qubits);
  const auto [pc, pr] = prep_gates(padded, layout);

  // P_C is the identity and P_R an X pattern on the high bond wire.
  CHECK(max_abs(pc.matrix - CMatrix::Identity(4, 4)) == 0.0);
  CHECK(max_abs(pr.matrix - kron(pauli::x(), pauli::id())) == 0.0);
  CVector zero = CVector::Zero(4);
  zero(0) = 1;
  CHECK((pr.matrix * zero - CVector(padded.prep_row_state)).norm() < 1e-14);
}

TEST_CASE("prep_gates: shifted Ising produces the paired bond states") {
  PaddedMpo padded =
      normalize(pad_to_power_of_two(build_ising_shifted(2, 1.0, 0.5, 1.3)),
                NormalizationMode::kUniform);
  const WireLayout layout = WireLayout::standard(2, padded.bond_qubits);
  const auto [pc, pr] = prep_gates(padded, layout);
  CVector zero = CVector::Zero(4);
  zero(0) = 1;
  const CVector col = pc.matrix * zero;
  CHECK(std::abs(col(0) - Complex(1 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(col(3) - Complex(1 / std::sqrt(2.0))) < 1e-12);
  const CVector row = pr.matrix * zero;
  CHECK(std::abs(row(2) - Complex(1 / std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(row(3) - Complex(1 / std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("prep_gates: shifted tensor product uses a Hadamard") {
  PaddedMpo padded = normalize(
      pad_to_power_of_two(build_pauli_product({{1, 0, 0, 0}, {0, 0, 0, 1}}, 0.5)),
      NormalizationMode::kUniform);
  const WireLayout layout = WireLayout::standard(2, padded.bond_qubits);
  const auto [pc, pr] = prep_gates(padded, layout);
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix h(2, 2);
  h << s, s, s, -s;
  CHECK(max_abs(pc.matrix - h) < 1e-14);
  CHECK(max_abs(pr.matrix - h) < 1e-14);
}

TEST_CASE("depth: wire-disjoint packing and ordering") {
  Circuit c;
  c.n_wires = 4;
  c.append(Gate::hadamard(0));
  c.append(Gate::hadamard(1));
  CHECK(depth(c, false) == 1);
  CHECK(depth(c, true) == 1);

  Circuit chain;
  chain.n_wires = 2;
  chain.append(Gate::hadamard(0));
  chain.append(Gate::cnot(0, 1));
  CHECK(depth(chain, false) == 2);
  CHECK(depth(chain, true) == 2);
}

TEST_CASE("depth: interleaving beats the sequential layering on a QET step") {
  // First eigenvalue-transformation step: block encoding, un-preparation,
  // processing cascade. Rotations on freed dilation wires overlap the
  // remaining site gates only in the interleaved schedule.
  const Mpo model = build_ising(4, 1.0, 0.5);
  PaddedMpo padded =
      normalize(pad_to_power_of_two(model), NormalizationMode::kUniform);
  const BlockEncoding be = assemble_block_encoding(padded, dilate_sites(padded));
  const auto [pc, pr] = prep_gates(padded, be.layout);

  Circuit step;
  step.n_wires = be.circuit.n_wires;
  step.append(pc);
  step.append(be.circuit);
  step.append(Gate::dense(pr.matrix.adjoint(), pr.wires));
  std::vector<int> anc;
  for (std::size_t l = be.layout.dilation.size(); l > 0; --l)
    anc.push_back(be.layout.dilation[l - 1]);
  for (std::size_t j = be.layout.bond.size(); j > 0; --j)
    anc.push_back(be.layout.bond[j - 1]);
  step.append(mcrz_cascade_on_wires(anc, 0.6, step.n_wires));

  const int sequential = depth(step, false);
  const int interleaved = depth(step, true);
  CHECK(interleaved < sequential);

  // The schedule realizing the interleaved depth leaves the unitary intact.
  const CMatrix reference = circuit_unitary(step);
  const CMatrix reordered = circuit_unitary(scheduled(step));
  CHECK(max_abs(reference - reordered) < 1e-12);
}

TEST_CASE("simulator invariance under wire-disjoint permutations") {
  Circuit c;
  c.n_wires = 4;
  c.append(Gate::hadamard(0));
  c.append(Gate::rz(1, 0.3));
  c.append(Gate::cnot(2, 3));
  c.append(Gate::pauli_x(1));
  const CMatrix u = circuit_unitary(c);

  Circuit swapped;
  swapped.n_wires = 4;
  swapped.append(c.gates[2]);
  swapped.append(c.gates[1]);
  swapped.append(c.gates[0]);
  swapped.append(c.gates[3]);
  CHECK(max_abs(circuit_unitary(swapped) - u) < 1e-12);
}

TEST_CASE("success_probability: identity encoding accepts every input") {
  const BlockEncoding be = encode(identity_mpo(2), NormalizationMode::kUniform);
  std::mt19937_64 rng(54);
  const CVector input = oracle::random_state(4, rng);
  const CVector trivial = CVector::Ones(1);
  CHECK(success_probability(be.circuit, be.layout, trivial, trivial, input) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("success_probability: eigenvector inputs give (lambda/eta)^2") {
  const Mpo model = build_ising(2, 1.0, 0.4);
  PaddedMpo padded =
      normalize(pad_to_power_of_two(model), NormalizationMode::kUniform);
  const BlockEncoding be = assemble_block_encoding(padded, dilate_sites(padded));
  const EighResult eig = eigh(contract_dense(model));

  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double expected = std::pow(eig.values(i) / be.eta, 2.0);
    const double measured =
        success_probability(be.circuit, be.layout, padded.prep_col_state,
                            padded.prep_row_state, eig.vectors.col(i));
    CHECK(measured == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("success_probability: squared norm of the post-selected block action") {
  const Mpo model = build_ising(3, 0.8, -0.3);
  PaddedMpo padded =
      normalize(pad_to_power_of_two(model), NormalizationMode::kUniform);
  const BlockEncoding be = assemble_block_encoding(padded, dilate_sites(padded));
  const CMatrix block = extract_block(be.circuit, be.layout,
                                      padded.prep_col_state,
                                      padded.prep_row_state);
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const CVector input = oracle::random_state(8, rng);
    const double direct =
        success_probability(be.circuit, be.layout, padded.prep_col_state,
                            padded.prep_row_state, input);
    CHECK(direct == doctest::Approx((block * input).squaredNorm()).epsilon(1e-10));
  }
}

TEST_CASE("success_probability: kernel vectors of a singular operator") {
  // alpha I + delta Z with alpha = delta: annihilates |1>.
  const Mpo model = build_pauli_product({{0.5, 0, 0, 0.5}}, 0.0);
  PaddedMpo padded =
      normalize(pad_to_power_of_two(model), NormalizationMode::kUniform);
  const BlockEncoding be = assemble_block_encoding(padded, dilate_sites(padded));
  CVector input = CVector::Zero(2);
  input(1) = 1.0;
  const CVector trivial = CVector::Ones(1);
  CHECK(success_probability(be.circuit, be.layout, trivial, trivial, input) <
        1e-12);
}
