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

#include "mpobe/dilation.hpp"
#include "mpobe/mpo.hpp"
#include "oracles.hpp"

using namespace mpobe;

TEST_CASE("unitary_dilation: scalar case is a rotation column") {
  CMatrix m(1, 1);
  m << 0.6;
  const DilationResult r = unitary_dilation(m, 1.0);
  CHECK(std::abs(r.unitary(0, 0) - Complex(0.6)) < 1e-12);
  CHECK(std::abs(r.unitary(1, 0)) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(unitarity_error(r.unitary) < 1e-12);
}

TEST_CASE("unitary_dilation: isometric input leaves a zero B block") {
  const DilationResult r = unitary_dilation(CMatrix::Identity(2, 2), 1.0);
  CHECK(max_abs(r.unitary.topLeftCorner(2, 2) - CMatrix::Identity(2, 2)) < 1e-12);
  CHECK(max_abs(r.unitary.block(2, 0, 2, 2)) < 1e-12);
  CHECK(unitarity_error(r.unitary) < 1e-11);
}

TEST_CASE("unitary_dilation: padded Ising site") {
  PaddedMpo m = pad_to_power_of_two(build_ising(3, 1.0, 1.0));
  const CMatrix site = reshape_site(m.mpo.sites[0]);
  REQUIRE(site.rows() == 8);
  const double n = spectral_norm(site);
  const DilationResult r = unitary_dilation(site, n);
  CHECK(r.unitary.rows() == 16);
  CHECK(unitarity_error(r.unitary) < 1e-11);
  CHECK(max_abs(r.unitary.topLeftCorner(8, 8) - site / n) < 1e-11);
}

TEST_CASE("unitary_dilation: normalization below the spectral norm is rejected") {
  CMatrix m(1, 1);
  m << 2.0;
  CHECK_THROWS_WITH_AS(unitary_dilation(m, 1.0),
                       doctest::Contains("violates spectral bound"),
                       std::invalid_argument);
}

TEST_CASE("unitary_dilation: 200 random matrices including the tight bound") {
  std::mt19937_64 rng(41);
  const double slacks[] = {0.0, 0.1, 1.0};
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng() % 15);
    const CMatrix m = oracle::random_matrix(dim, dim, rng);
    const double norm = spectral_norm(m);
    const double slack = slacks[trial % 3];
    const DilationResult r = unitary_dilation(m, norm * (1.0 + slack));
    CHECK(unitarity_error(r.unitary) < 1e-11);
    CHECK(r.residual < 1e-11);
  }
}

TEST_CASE("unitary_dilation: B block carries the complementary singular values") {
  std::mt19937_64 rng(42);
  const Eigen::Index dim = 6;
  const CMatrix m = oracle::random_matrix(dim, dim, rng);
  const double n = spectral_norm(m) * 1.25;
  const DilationResult r = unitary_dilation(m, n);

  const CMatrix b = r.unitary.block(dim, 0, dim, dim);
  const RVector b_sigma = svd(b).sigma;
  RVector expected(dim);
  const RVector m_sigma = svd(m).sigma;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double s = m_sigma(i) / n;
    expected(i) = std::sqrt(std::max(0.0, 1.0 - s * s));
  }
  std::sort(expected.begin(), expected.end(), std::greater<double>());
  for (Eigen::Index i = 0; i < dim; ++i)
    CHECK(b_sigma(i) == doctest::Approx(expected(i)).epsilon(1e-10));
}

TEST_CASE("unitary_dilation: dilating a unitary with N = 1 zeroes B") {
  std::mt19937_64 rng(43);
  const CMatrix u = complete_to_unitary(oracle::random_state(4, rng));
  const DilationResult r = unitary_dilation(u, 1.0);
  CHECK(max_abs(r.unitary.block(4, 0, 4, 4)) < 1e-7);
  CHECK(unitarity_error(r.unitary) < 1e-11);
}

TEST_CASE("verify_dilation: reports both error channels") {
  std::mt19937_64 rng(44);
  const CMatrix m = oracle::random_matrix(4, 4, rng);
  const double n = spectral_norm(m) * 1.1;
  const DilationResult good = unitary_dilation(m, n);

  const DilationReport clean = verify_dilation(good, m, n, 1e-11);
  CHECK(clean.ok);
  CHECK(clean.unitarity_err <= 1e-11);
  CHECK(clean.block_err <= 1e-11);

  DilationResult corrupted = good;
  corrupted.unitary(0, 0) += 1e-3;
  const DilationReport bad = verify_dilation(corrupted, m, n, 1e-11);
  CHECK(bad.unitarity_err >= 1e-4);
  CHECK(!bad.ok);

  // Doubling N halves the expected block, which the report flags.
  const DilationReport scaled = verify_dilation(good, m, 2.0 * n, 1e-11);
  CHECK(scaled.block_err ==
        doctest::Approx(max_abs(m / n - m / (2.0 * n))).epsilon(1e-9));
  CHECK(!scaled.ok);
}
