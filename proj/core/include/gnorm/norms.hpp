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

#include <limits>
#include <optional>
#include <vector>

#include "gnorm/choi.hpp"
#include "gnorm/cone_solver.hpp"
#include "gnorm/section.hpp"

namespace gnorm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// 1e-8, or the value of the GNORM_DEFAULT_TOL environment variable when it
/// holds a positive number.
double default_tolerance();

enum class NormMethod { closed_form, conic };
const char* to_string(NormMethod method);

struct NormOptions {
  double tol = default_tolerance();
  int max_iter = 50000;
};

/// A norm value bracketed by a certified primal (upper) and dual (lower)
/// bound. All witnesses are ambient matrices.
struct NormResult {
  double value = 0.0;        ///< equals primal_value
  double primal_value = 0.0; ///< Tr(q b̃) for the feasible q below
  double dual_value = 0.0;   ///< Tr x(y1 - y2) for the feasible pair below
  double gap = 0.0;          ///< primal_value - dual_value
  /// q in the cone over B with -q <= x <= q.
  HermitianMatrix primal_witness;
  /// y1, y2 >= 0 with y1 + y2 in the dual section.
  HermitianMatrix dual_witness_pos;
  HermitianMatrix dual_witness_neg;
  NormMethod method = NormMethod::closed_form;
  SolveStatus status = SolveStatus::optimal;
  int iterations = 0;
  int solves = 0;

  bool converged() const { return status == SolveStatus::optimal; }
  /// gap / max(1, value): the tolerance actually achieved.
  double achieved_tolerance() const;
};

/// ||b^{1/2} x b^{1/2}||_1.
double base_norm_singleton(const HermitianMatrix& b, const HermitianMatrix& x);
/// ||b^{-1/2} x b^{-1/2}||_op on supp(b); +inf if x leaves supp(b).
double order_unit_norm_singleton(const HermitianMatrix& b, const HermitianMatrix& x);
/// log2 inf{t : a <= t b}; +inf off support, -inf for a = 0.
double dmax(const HermitianMatrix& a, const HermitianMatrix& b);

/// Extended base norm min{Tr(q b̃) : q in span(B), -q <= x <= q}.
/// Throws DomainError when B is restricted and x has weight outside its
/// support (the norm is then infinite).
NormResult base_norm(const Section& section, const HermitianMatrix& x, const NormOptions& options = {});
/// Norm of the dual section (the order-unit norm of B).
NormResult dual_base_norm(const Section& section, const HermitianMatrix& x, const NormOptions& options = {});
/// max{Tr(a y) : y in B̃} for any hermitian a, bracketed by a feasible y
/// (dual_witness_pos) and a q in span(B) with q >= a (primal_witness).
NormResult support_function(const Section& section, const HermitianMatrix& a, const NormOptions& options = {});
/// ||a||_B for PSD a, which equals support_function(section, a).
NormResult base_norm_psd(const Section& section, const HermitianMatrix& a, const NormOptions& options = {});

/// Norm on C(H, K) of a hermitian operator on K (x) H.
NormResult diamond_norm(const ChoiMatrix& x, const NormOptions& options = {});
/// Norm on C(H_0, ..., H_n); x is laid out as H_n (x) ... (x) H_0.
NormResult ncomb_norm(const std::vector<int>& dims, const HermitianMatrix& x, const NormOptions& options = {});

struct HminResult {
  double value = 0.0;  ///< conditional min-entropy in bits
  NormResult norm;     ///< norm of sigma over I_K (x) states(H)
};
/// H_min(K|H) of a PSD sigma on K (x) H.
HminResult hmin(const HermitianMatrix& sigma, int dim_in, int dim_out, const NormOptions& options = {});

/// Outcome of an optimality test: `slack` is the complementary-slackness
/// trace residual Tr((q - a) c) (it vanishes exactly at an optimum) and
/// `product_residual` the Frobenius norm of the corresponding product.
struct Certificate {
  bool feasible = false;
  std::optional<HermitianMatrix> witness_q;
  double slack = 0.0;
  double product_residual = 0.0;
  double optimum = 0.0;          ///< optimal value of the underlying problem
  double candidate_value = 0.0;  ///< value attained by the candidate
};

enum class ExtremalCandidate {
  dual_maximizer,  ///< candidate b̃0 in B̃ maximizing Tr(a b̃0)
  minimizer,       ///< candidate b0 in B minimizing inf{t : a <= t b0}
};

/// Checks whether a candidate attains ||a||_B for PSD a.
Certificate certify_extremal_psd(const Section& section, const HermitianMatrix& a, const HermitianMatrix& candidate,
                                 ExtremalCandidate kind, const NormOptions& options = {});

}  // namespace gnorm
