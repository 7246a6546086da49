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

// First-order solver for conic programs in standard form
//
//   minimize    <c, x>
//   subject to  A x = b,   x in K = K_1 x ... x K_m,
//
// where each K_i is either the cone of PSD hermitian d_i x d_i matrices or
// the whole space of hermitian d_i x d_i matrices (a free block). Blocks are
// stored in the real coordinates of to_real(), so trace inner products are
// plain dot products and the adjoint of A is its transpose.
//
// The dual program is
//
//   maximize    <b, y>
//   subject to  c - A^T y = s,   s in K*  (K* = K for PSD blocks, {0} for free).

#include <string>
#include <vector>

#include "gnorm/hermitian.hpp"

namespace gnorm {

enum class ConeKind { psd, free };

struct VariableBlock {
  int dim = 0;  ///< block is dim x dim hermitian, dim^2 real coordinates
  ConeKind cone = ConeKind::psd;
};

class ConeProgram {
 public:
  explicit ConeProgram(std::string description = {});

  /// Appends a variable block and returns its index.
  int add_block(int dim, ConeKind cone);

  /// Adds <coef, X_block> to the objective.
  void add_objective(int block, const HermitianMatrix& coef);

  /// Starts a new scalar equality row sum(...) = rhs; returns the row index.
  int add_row(double rhs);
  /// Adds <coef, X_block> to an existing row.
  void add_term(int row, int block, const HermitianMatrix& coef);
  /// Adds value * (real coordinate `coord` of block) to an existing row.
  void add_coordinate(int row, int block, int coord, double value);

  /// One row per real coordinate: sum_i weight_i X_{block_i} = rhs.
  struct BlockWeight {
    int block;
    double weight;
  };
  void add_matrix_equality(const std::vector<BlockWeight>& lhs, const HermitianMatrix& rhs);

  const std::string& description() const { return description_; }
  const std::vector<VariableBlock>& blocks() const { return blocks_; }
  int block_offset(int block) const { return offsets_.at(block); }
  int num_variables() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(rhs_.size()); }

  struct Entry {
    int row;
    int col;
    double value;
  };
  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<double>& rhs() const { return rhs_; }
  const RVector& objective() const { return objective_; }

  /// Plain-text dump (objective, then "row col value" triplets, then rhs)
  /// for cross-checking against external solvers. Not a stable format.
  std::string dump() const;

 private:
  void check_block(int block) const;

  std::string description_;
  std::vector<VariableBlock> blocks_;
  std::vector<int> offsets_;
  int num_vars_ = 0;
  RVector objective_;
  std::vector<Entry> entries_;
  std::vector<double> rhs_;
};

enum class SolveStatus { optimal, max_iter, infeasible, unbounded };

const char* to_string(SolveStatus status);

struct SolverOptions {
  double tol = 1e-7;
  int max_iter = 50000;
  /// Over-relaxation parameter of the splitting iteration.
  double relaxation = 1.5;
  /// Iterations without any decrease of the worst residual before giving up.
  int stall_window = 5000;
  /// Normalized iterate growth above which infeasibility/unboundedness is declared.
  double divergence_threshold = 1e6;
  int check_every = 20;
};

struct ConeSolution {
  SolveStatus status = SolveStatus::max_iter;
  double primal_value = 0.0;
  double dual_value = 0.0;
  /// ||A x - b|| / (1 + ||b||) at the returned (cone-feasible) point.
  double primal_residual = 0.0;
  /// ||c - A^T y - s|| / (1 + ||c||) with s in K* exactly.
  double dual_residual = 0.0;
  /// |primal - dual| / (1 + |primal| + |dual|).
  double gap = 0.0;
  int iterations = 0;

  RVector primal_point;  ///< x, in K
  RVector dual_point;    ///< y, one entry per row
  RVector dual_slack;    ///< s = c - A^T y (projected into K*)

  /// Block `i` of x (or of s) as a hermitian matrix.
  HermitianMatrix primal_block(const ConeProgram& p, int block) const;
  HermitianMatrix slack_block(const ConeProgram& p, int block) const;
};

/// Euclidean projection onto the PSD cone: x_+.
HermitianMatrix project_psd(const HermitianMatrix& x);

ConeSolution solve(const ConeProgram& program, const SolverOptions& options = {});
ConeSolution solve(const ConeProgram& program, double tol, int max_iter);

}  // namespace gnorm
