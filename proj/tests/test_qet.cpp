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

#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>

#include "mpobe/circuit.hpp"
#include "mpobe/qet.hpp"
#include "oracles.hpp"

using namespace mpobe;

namespace {

struct Encoded {
  PaddedMpo padded;
  BlockEncoding be;
  Gate prep_col;
  Gate prep_row;
  CMatrix referenced; ///< prep gates absorbed; block at all-ancilla |0..0>
};

Encoded referenced_encoding(const Mpo& model, double explicit_norm = 0.0,
                            NormalizationMode mode = NormalizationMode::kUniform) {
  Encoded e{normalize(pad_to_power_of_two(model), mode, explicit_norm),
            {}, {}, {}, {}};
  e.be = assemble_block_encoding(e.padded, dilate_sites(e.padded));
  auto [pc, pr] = prep_gates(e.padded, e.be.layout);
  e.prep_col = pc;
  e.prep_row = pr;

  Circuit referenced;
  referenced.n_wires = e.be.circuit.n_wires;
  referenced.append(pc);
  referenced.append(e.be.circuit);
  referenced.append(Gate::dense(pr.matrix.adjoint(), pr.wires));
  e.referenced = circuit_unitary(referenced);
  return e;
}

PhaseSequence random_phases(int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-std::numbers::pi,
                                              std::numbers::pi);
  PhaseSequence ph;
  ph.degree = degree;
  ph.parity = degree % 2 == 0 ? Parity::kEven : Parity::kOdd;
  for (int k = 0; k < degree; ++k) ph.phases.push_back(dist(rng));
  return ph;
}

CVector zero_state(int bond_qubits) {
  CVector v = CVector::Zero(Eigen::Index{1} << bond_qubits);
  v(0) = 1.0;
  return v;
}

} // namespace

TEST_CASE("filter_target: exact values and symmetry") {
  const FilterSpec spec{2, 0.5};
  CHECK(filter_target(0.0, spec) == doctest::Approx(1.0));
  // T_2(-1) / T_2(-5/3) = 1 / (2*25/9 - 1) = 9/41.
  CHECK(filter_target(0.5, spec) == doctest::Approx(9.0 / 41.0).epsilon(1e-14));

  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const FilterSpec wide{7, 0.2};
  for (int trial = 0; trial < 50; ++trial) {
    const double x = dist(rng);
    CHECK(filter_target(x, wide) == doctest::Approx(filter_target(-x, wide)));
  }

  // Suppression region: bounded by the value at the gap edge.
  const FilterSpec f{10, 0.3};
  const double edge = std::abs(filter_target(0.3, f));
  for (double x = 0.3; x <= 1.0; x += 0.01)
    CHECK(std::abs(filter_target(x, f)) <= edge + 1e-12);
}

TEST_CASE("scalar_qsp: degree one and zero-phase products") {
  PhaseSequence identity;
  identity.degree = 1;
  identity.parity = Parity::kOdd;
  identity.phases = {0.0};
  for (double x : {-0.9, -0.3, 0.0, 0.4, 1.0})
    CHECK(scalar_qsp(identity, x).real() == doctest::Approx(x));

  // Even degree, all phases zero: the reflections square to the identity.
  PhaseSequence even;
  even.degree = 4;
  even.parity = Parity::kEven;
  even.phases = {0, 0, 0, 0};
  for (double x : {-0.7, 0.1, 0.8})
    CHECK(std::abs(scalar_qsp(even, x) - Complex(1)) < 1e-13);

  // Odd degree with zero phases telescopes to a single reflection: the
  // product U U^dag U ... collapses, leaving x itself rather than a
  // higher Chebyshev value.
  PhaseSequence odd;
  odd.degree = 5;
  odd.parity = Parity::kOdd;
  odd.phases = {0, 0, 0, 0, 0};
  for (double x : {-0.6, 0.25, 0.95})
    CHECK(std::abs(scalar_qsp(odd, x) - Complex(x)) < 1e-13);
}

TEST_CASE("scalar_qsp: chebyshev phases evaluate T_d") {
  for (int degree = 1; degree <= 8; ++degree) {
    const PhaseSequence ph = chebyshev_phases(degree);
    for (int j = 0; j <= 100; ++j) {
      const double x = -1.0 + 0.02 * j;
      const Complex value = scalar_qsp(ph, x);
      CHECK(std::abs(value - Complex(oracle::chebyshev(degree, x))) < 1e-12);
    }
  }
}

TEST_CASE("scalar_qsp: parity mismatch is rejected") {
  PhaseSequence bad;
  bad.degree = 2;
  bad.parity = Parity::kOdd;
  bad.phases = {0.1, 0.2};
  CHECK_THROWS_AS(scalar_qsp(bad, 0.5), std::invalid_argument);
}

TEST_CASE("qet: degree-1 block reproduces the encoded operator") {
  const Mpo model = build_ising(2, 0.9, 0.35);
  const Encoded e = referenced_encoding(model);
  const CMatrix h = contract_dense(model);

  PhaseSequence ph;
  ph.degree = 1;
  ph.parity = Parity::kOdd;
  ph.phases = {0.0};
  const CMatrix block = qet_dense_oracle(e.referenced, e.be.layout, ph);
  CHECK(max_abs(e.be.eta * block - h) < 1e-10);

  // A phase of pi/2 multiplies the block by e^{-i pi/2}.
  ph.phases = {std::numbers::pi / 2};
  const CMatrix rotated = qet_dense_oracle(e.referenced, e.be.layout, ph);
  CHECK(max_abs(rotated - std::exp(Complex(0, -std::numbers::pi / 2)) * block) <
        1e-11);
}

TEST_CASE("qet: all-zero even phases give the projected identity") {
  const Mpo model = build_ising(2, 0.7, 0.2);
  const Encoded e = referenced_encoding(model);
  PhaseSequence ph;
  ph.degree = 2;
  ph.parity = Parity::kEven;
  ph.phases = {0.0, 0.0};
  const CMatrix block = qet_dense_oracle(e.referenced, e.be.layout, ph);
  CHECK(max_abs(block - CMatrix::Identity(4, 4)) < 1e-11);
}

TEST_CASE("qet: gate-level circuit equals the dense oracle") {
  std::mt19937_64 rng(92);
  const std::pair<Mpo, NormalizationMode> cases[] = {
      {build_ising(2, 1.0, 0.5), NormalizationMode::kUniform},
      {build_pauli_product({{0.6, -0.4, 0.2, 0.1}, {0.3, 0.2, -0.5, 0.8}}, 1.1),
       NormalizationMode::kUniform},
      // Differing per-site factors exercise the encoding scale inside the
      // alternation as well.
      {build_pauli_product({{0.6, -0.4, 0.2, 0.1}, {0.3, 0.2, -0.5, 0.8}}, 1.1),
       NormalizationMode::kPerSite},
      {build_heisenberg(2, {1.0, 0.7, -0.4, 0.2, 0.0, 0.5}),
       NormalizationMode::kPerSite},
  };
  for (const auto& [model, mode] : cases) {
    const Encoded e = referenced_encoding(model, 0.0, mode);
    for (int degree = 1; degree <= 4; ++degree) {
      const PhaseSequence ph = random_phases(degree, rng);
      const Circuit circuit = build_qet_circuit(e.be, e.prep_col, e.prep_row, ph);
      const CMatrix gate_block =
          extract_block(circuit, e.be.layout, zero_state(e.padded.bond_qubits),
                        zero_state(e.padded.bond_qubits));
      const CMatrix oracle_block =
          qet_dense_oracle(e.referenced, e.be.layout, ph);
      CHECK(max_abs(gate_block - oracle_block) < 1e-10);
    }
  }
}

TEST_CASE("qet: eigenbasis values equal the scalar companion") {
  std::mt19937_64 rng(93);
  const Mpo model =
      build_pauli_product({{0.7, -1.0, 0.0, 0.1}, {1.2, 0.4, 0.3, 0.0}}, 1.7);
  const Encoded e = referenced_encoding(model);
  const CMatrix a = contract_dense(model) / e.be.eta;
  const EighResult eig = eigh(a);

  for (int degree : {2, 3, 6}) {
    const PhaseSequence ph = random_phases(degree, rng);
    const CMatrix block = qet_dense_oracle(e.referenced, e.be.layout, ph);
    const CMatrix in_basis = eig.vectors.adjoint() * block * eig.vectors;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
      const Complex expected = scalar_qsp(ph, eig.values(i));
      CHECK(std::abs(in_basis(i, i) - expected) < 1e-8);
      for (Eigen::Index j = 0; j < eig.values.size(); ++j)
        if (i != j) CHECK(std::abs(in_basis(i, j)) < 1e-8);
    }
  }
}

TEST_CASE("qet: phase-count mismatch is rejected") {
  const Encoded e = referenced_encoding(build_ising(2, 1.0, 0.5));
  PhaseSequence bad;
  bad.degree = 3;
  bad.parity = Parity::kOdd;
  bad.phases = {0.1, 0.2};
  CHECK_THROWS_AS(build_qet_circuit(e.be, e.prep_col, e.prep_row, bad),
                  std::invalid_argument);
}

TEST_CASE("fit_phases: linear and cubic Chebyshev targets") {
  const FitResult linear =
      fit_phases([](double x) { return x; }, Parity::kOdd, 1);
  CHECK(linear.sup_residual < 1e-10);
  CHECK(std::abs(std::remainder(linear.phases.phases[0], 2 * std::numbers::pi)) <
        1e-7);

  const FitResult cubic = fit_phases(
      [](double x) { return oracle::chebyshev(3, x); }, Parity::kOdd, 3);
  CHECK(cubic.sup_residual <= 1e-8);
  CHECK(!cubic.warning);
}

TEST_CASE("fit_phases: filter target at transformation degree 30") {
  const FilterSpec filter{15, 0.1};
  const FitResult fit = fit_phases(
      [&](double x) { return filter_target(x, filter); }, Parity::kEven, 30);
  std::cout << "[qet] degree-30 filter fit residual: " << fit.sup_residual
            << "\n";
  CHECK(fit.sup_residual <= 0.05);

  double suppressed = 0.0;
  for (double x = 0.1; x <= 1.0; x += 0.002) {
    const double diff =
        std::abs(scalar_qsp(fit.phases, x).real() - filter_target(x, filter));
    suppressed = std::max(suppressed, diff);
  }
  std::cout << "[qet] degree-30 filter fit residual on [gap, 1]: " << suppressed
            << "\n";
  CHECK(suppressed <= 0.05);
}

TEST_CASE("fit_phases: deterministic under a fixed seed") {
  const FilterSpec filter{4, 0.25};
  FitOptions options;
  options.seed = 9;
  const auto target = [&](double x) { return filter_target(x, filter); };
  const FitResult a = fit_phases(target, Parity::kEven, 8, options);
  const FitResult b = fit_phases(target, Parity::kEven, 8, options);
  REQUIRE(a.phases.phases.size() == b.phases.phases.size());
  for (std::size_t k = 0; k < a.phases.phases.size(); ++k)
    CHECK(a.phases.phases[k] == b.phases.phases[k]);
  CHECK(a.sup_residual == b.sup_residual);
}

TEST_CASE("load/save phases: round trip and validation") {
  PhaseSequence ph;
  ph.degree = 3;
  ph.parity = Parity::kOdd;
  ph.phases = {0.25, -1.5, 0.75};
  const std::string path = "phases_roundtrip_test.json";
  save_phases(path, ph);
  const PhaseSequence back = load_phases(path);
  CHECK(back.degree == 3);
  CHECK(back.parity == Parity::kOdd);
  for (int k = 0; k < 3; ++k)
    CHECK(back.phases[static_cast<std::size_t>(k)] ==
          ph.phases[static_cast<std::size_t>(k)]);

  // Trivial odd file parses.
  {
    std::FILE* f = std::fopen("phases_identity_test.json", "w");
    std::fputs("{\"parity\":\"odd\",\"degree\":1,\"phases\":[0.0]}", f);
    std::fclose(f);
  }
  const PhaseSequence identity = load_phases("phases_identity_test.json");
  CHECK(identity.degree == 1);
  CHECK(scalar_qsp(identity, 0.42).real() == doctest::Approx(0.42));

  // Count/parity mismatch names the offending field.
  {
    std::FILE* f = std::fopen("phases_bad_test.json", "w");
    std::fputs("{\"parity\":\"even\",\"degree\":3,\"phases\":[0.1,0.2,0.3]}", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_phases("phases_bad_test.json"), std::invalid_argument);
  std::remove("phases_roundtrip_test.json");
  std::remove("phases_identity_test.json");
  std::remove("phases_bad_test.json");
}

TEST_CASE("hermitian_part: projection properties") {
  std::mt19937_64 rng(94);
  CMatrix h = oracle::random_hermitian(6, rng);
  CHECK(max_abs(hermitian_part(h) - h) < 1e-15);

  const CMatrix anti = Complex(0, 1) * CMatrix::Identity(4, 4);
  CHECK(max_abs(hermitian_part(anti)) < 1e-15);

  const CMatrix m = oracle::random_matrix(5, 5, rng);
  const CMatrix part = hermitian_part(m);
  CHECK(max_abs(part - part.adjoint()) < 1e-15);
}
