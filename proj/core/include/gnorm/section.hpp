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

#include <optional>
#include <string>
#include <vector>

#include "gnorm/cone_solver.hpp"
#include "gnorm/hermitian.hpp"

namespace gnorm {

enum class SectionKind {
  states,           ///< all density matrices on C^d
  singleton,        ///< {b}
  channels,         ///< Choi matrices of channels C(H, K)
  combs,            ///< deterministic supermaps C(H_0, ..., H_n)
  generalized,      ///< C_B(H, K)
  povm,             ///< block-diagonal elements of C_B(H, H_D)
  identity_tensor,  ///< I_k (x) B
  dual,             ///< dual section of another section
  custom,           ///< user-supplied span basis and normalizer
};

const char* to_string(SectionKind kind);

/// Records which constructor produced a section.
struct SectionLabel {
  SectionKind kind = SectionKind::custom;
  /// states: {d}; channels/combs: {H_0, ..., H_n}; generalized: {dim K};
  /// povm: {outcomes}; identity_tensor: {k}; otherwise empty.
  std::vector<int> dims;
  /// Label of the section this one was derived from, if any.
  std::string parent;

  std::string to_string() const;
};

/// A faithful section B = J ∩ S_b̃ of a base of the PSD cone.
///
/// The data live in a "working space": the full space C^n when the section
/// is faithful, or the support pH of a maximal element when it had to be
/// restricted (restricted() is then true and support() is the isometry
/// C^r -> C^n). All bases, the normalizer and the reference point are
/// r x r matrices; contains() and the norm routines take ambient matrices
/// and compress them.
///
/// The functional e_B is stored as a positive definite normalizer b̃ in
/// ri(B̃); functional() returns its trace-orthogonal representative P_J(b̃).
class Section {
 public:
  struct Parts {
    int ambient_dim = 0;
    std::vector<int> subsystem_dims;
    std::optional<CMatrix> support;  ///< absent: identity
    std::vector<HermitianMatrix> span_basis;        ///< orthonormal, spans J
    std::vector<HermitianMatrix> complement_basis;  ///< orthonormal, spans J^⊥
    HermitianMatrix normalizer;                     ///< positive definite, in B̃
    HermitianMatrix reference_point;                ///< positive definite, in B
    SectionLabel label;
  };

  explicit Section(Parts parts);

  /// Builds J^⊥ from an orthonormal basis of J.
  static Section from_span(Parts parts);
  /// Builds J from an orthonormal basis of J^⊥.
  static Section from_complement(Parts parts);

  int ambient_dim() const { return ambient_dim_; }
  /// Dimension r of the working space.
  int dim() const { return normalizer_.dim(); }
  const std::vector<int>& subsystem_dims() const { return dims_; }
  bool restricted() const { return restricted_; }
  /// Isometry C^r -> C^n onto the working space.
  const CMatrix& support() const { return support_; }

  const std::vector<HermitianMatrix>& span_basis() const { return span_; }
  const std::vector<HermitianMatrix>& complement_basis() const { return complement_; }
  int span_dimension() const { return static_cast<int>(span_.size()); }
  const HermitianMatrix& normalizer() const { return normalizer_; }
  const HermitianMatrix& reference_point() const { return reference_; }
  HermitianMatrix functional() const { return project_span(normalizer_); }
  const SectionLabel& label() const { return label_; }

  /// V* x V for ambient x.
  HermitianMatrix compress(const HermitianMatrix& x) const;
  /// V y V* for working-space y; the ambient layout is restored.
  HermitianMatrix expand(const HermitianMatrix& y) const;
  /// ||x - p x p||_F, the part of an ambient x outside the working space.
  double support_leakage(const HermitianMatrix& x) const;

  /// Orthogonal projections in the working space.
  HermitianMatrix project_span(const HermitianMatrix& y) const;
  HermitianMatrix project_complement(const HermitianMatrix& y) const;

  /// Membership test for an ambient x: support, span, normalization, PSD.
  bool contains(const HermitianMatrix& x, double tol = 1e-8) const;

  /// Membership of an ambient y in the dual section B̃: y PSD and
  /// Tr(y b) = 1 for every b in B.
  bool dual_contains(const HermitianMatrix& y, double tol = 1e-8) const;

  /// Working-space element b̃ + P_{J^⊥}(y - b̃) shifted back toward b̃ just
  /// enough to be PSD; always in B̃.
  HermitianMatrix nearest_dual_member(const HermitianMatrix& y) const;

 private:
  int ambient_dim_ = 0;
  std::vector<int> dims_;
  bool restricted_ = false;
  CMatrix support_;
  std::vector<HermitianMatrix> span_;
  std::vector<HermitianMatrix> complement_;
  HermitianMatrix normalizer_;
  HermitianMatrix reference_;
  SectionLabel label_;
};

// Families of sections.

Section states_section(int d);
/// B = {b}; restricted to supp(b) when b is singular. Throws DomainError if
/// b is not PSD or is zero.
Section singleton_section(const HermitianMatrix& b);
Section channels_section(int dim_in, int dim_out);
/// C(H_0, ..., H_n) built as C_1 = channels(H_0, H_1),
/// C_{k+1} = generalized(C_k, H_{k+1}); layout {H_n, ..., H_0}.
Section comb_section(const std::vector<int>& dims);
/// C_B(H, K) = {X >= 0 : Tr_K X in B̃^T} on K (x) H. Throws DomainError when
/// B is restricted (not faithful on its ambient space).
Section generalized_section(const Section& base, int dim_out);
/// Block-diagonal elements sum_d |d><d| (x) M_d^T of C_B(H, H_D).
Section povm_section(const Section& base, int outcomes);
/// I_k (x) B = {I_k (x) b : b in B}.
Section identity_tensor_section(const Section& base, int k);
Section dual_section(const Section& base);

/// Section spanned by `basis` (orthonormalized by Gram-Schmidt, dropping
/// vectors with relative residual below 1e-9) and normalized by `normalizer`.
/// A known positive definite member may be passed as `interior_hint`;
/// otherwise one is found by a conic program. Non-faithful input is
/// restricted to the support of the best interior point found.
Section custom_section(const std::vector<HermitianMatrix>& basis, const HermitianMatrix& normalizer,
                       const std::optional<HermitianMatrix>& interior_hint = std::nullopt,
                       std::vector<int> subsystem_dims = {});

/// Gram-Schmidt in the trace inner product; drops vectors whose residual
/// norm is below drop_tol times their original norm.
std::vector<HermitianMatrix> orthonormalize(const std::vector<HermitianMatrix>& vectors, double drop_tol = 1e-9);

struct InteriorPoint {
  bool feasible = false;
  HermitianMatrix point;        ///< ambient, argmax of lambda_min over B
  double min_eigenvalue = 0.0;  ///< lambda_min of the working-space point
  SolveStatus status = SolveStatus::max_iter;
};

/// argmax_{b in B} lambda_min(b) via the cone solver.
InteriorPoint interior_element(const Section& section, const SolverOptions& options = {});

/// Block-diagonal encoding M = sum_d |d><d| (x) M_d^T of a list of effects.
HermitianMatrix povm_to_block(const std::vector<HermitianMatrix>& effects);
/// Inverse of povm_to_block (diagonal blocks, transposed back).
std::vector<HermitianMatrix> block_to_povm(const HermitianMatrix& m, int outcomes);

}  // namespace gnorm
