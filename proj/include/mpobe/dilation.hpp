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

#include "mpobe/numerics.hpp"

namespace mpobe {

/// Unitary of twice the input dimension whose upper-left block is M/N.
struct DilationResult {
  CMatrix unitary;      ///< 2m x 2m
  Eigen::Index source_dim = 0;
  double normalization = 1.0;
  double residual = 0.0; ///< max |U[0:m,0:m] - M/N|
};

/// Embed a square matrix M as the upper-left block of a unitary twice its
/// size: take the SVD M = U S V^dag, set B = sqrt(I - S^2/N^2) V^dag, stack
/// W = [M/N; B] and complete W to a unitary by full QR with column phases
/// fixed. Requires N >= |M| (up to 1e-12 slack).
DilationResult unitary_dilation(const CMatrix& m, double normalization);

struct DilationReport {
  double unitarity_err = 0.0; ///< max |U^dag U - I|
  double block_err = 0.0;     ///< max |U[0:m,0:m] - M/N|
  bool ok = false;
};

DilationReport verify_dilation(const DilationResult& r, const CMatrix& m,
                               double normalization, double tolerance);

} // namespace mpobe
