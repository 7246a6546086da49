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

#include <vector>

#include "gnorm/section.hpp"

namespace gnorm::detail {

/// Real-coordinate columns of a list of n x n hermitian matrices.
RMatrix to_columns(const std::vector<HermitianMatrix>& v, int n);
std::vector<HermitianMatrix> from_columns(const RMatrix& cols, int n);

/// Orthonormal basis of the orthogonal complement of orthonormal columns.
RMatrix orthogonal_complement(const RMatrix& orthonormal_cols);
/// Drops columns whose residual is below drop_tol * max(original norm, scale_floor).
RMatrix gram_schmidt_columns(const RMatrix& cols, double drop_tol, double scale_floor);
/// Orthonormal basis of span(cols) ∩ f^⊥, where f lies in span(cols).
RMatrix span_without(const RMatrix& span_cols, const RVector& f);

/// max t subject to b - t I >= 0 and <rows_i, b> = rhs_i, with t <= cap.
InteriorPoint solve_interior(const std::vector<HermitianMatrix>& rows, const std::vector<double>& rhs,
                             const SolverOptions& options, double cap);
/// Same with rows = complement (rhs 0) plus the normalization <n, b> = 1.
InteriorPoint solve_interior(const std::vector<HermitianMatrix>& complement, const HermitianMatrix& normalizer,
                             const SolverOptions& options);

}  // namespace gnorm::detail
