// Copyright 2026 The gnorm Authors
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

// Independent references for tests: closed forms, random instances and
// sampling bounds. Nothing here calls the cone solver or the norm routines.

#include <cstdint>
#include <random>
#include <vector>

#include "gnorm/hermitian.hpp"
#include "gnorm/section.hpp"

namespace gnorm::oracles {

using Rng = std::mt19937_64;

HermitianMatrix random_hermitian(int d, Rng& rng);
/// Density matrix of the given rank (0: full rank).
HermitianMatrix random_density(int d, Rng& rng, int rank = 0);
CMatrix random_unitary(int d, Rng& rng);
CVector random_pure(int d, Rng& rng);

/// Choi matrix sum_i |vec V_i><vec V_i| on K (x) H, layout {dim_out, dim_in}.
HermitianMatrix choi_from_kraus(const std::vector<CMatrix>& kraus);
/// Random channel with `kraus` Kraus operators (at least ceil(dim_in /
/// dim_out)) from a Haar-like isometry.
HermitianMatrix random_channel_choi(int dim_in, int dim_out, int kraus, Rng& rng);

/// Members of a section: boundary points of random lines through the
/// reference point, mixed back toward it with random weights.
struct SampleSet {
  std::vector<HermitianMatrix> points;
  std::uint64_t seed = 0;
};
SampleSet sample_section(const Section& section, int n, std::uint64_t seed);

/// max over s in `dual_samples` of ||s^{1/2} x s^{1/2}||_1.
double norm_lower_bound(const HermitianMatrix& x, const SampleSet& dual_samples);
/// min over b in `samples` of ||b^{-1/2} x b^{-1/2}||; +inf off support.
double norm_upper_bound(const HermitianMatrix& x, const SampleSet& samples);

/// Eigenvalue-based trace norm.
double trace_norm_eig(const HermitianMatrix& x);

/// max over pure inputs psi on H (x) H' of ||(Phi (x) id)(psi)||_1 for the
/// hermitian-preserving map with Choi matrix x (layout {dim_out, dim_in}).
/// Always includes the maximally entangled input.
double pure_input_lower_bound(const HermitianMatrix& x, int dim_in, int dim_out, int samples, std::uint64_t seed);

/// Conditional min-entropy of sigma on K (x) C^2 by scanning a Cartesian
/// grid of the Bloch ball with (resolution + 1)^3 points.
double grid_hmin(const HermitianMatrix& sigma, int resolution, int threads = 1);

}  // namespace gnorm::oracles
