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

// Dense complex hermitian matrices with subsystem metadata, plus the
// spectral calculus the rest of the library is built on.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace gnorm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// How a HermitianMatrix treats an input that is not exactly hermitian.
enum class Strictness {
  hermitize,  ///< replace x by (x + x*)/2 silently
  strict,     ///< reject asymmetry above kStrictAsymmetryTol, then hermitize
};

inline constexpr double kStrictAsymmetryTol = 1e-8;

/// Relative eigenvalue cutoff used for supports and pseudo-inverses:
/// eigenvalues at or below kSupportCutoff * max(1, largest eigenvalue)
/// are treated as zero.
inline constexpr double kSupportCutoff = 1e-10;

/// Default tolerance for positivity tests, relative to 1 + ||x||.
inline constexpr double kPsdTol = 1e-9;

/// An element of B_h(H). The stored matrix is always exactly hermitian.
///
/// `subsystem_dims` records a tensor-product layout H = H_0 (x) H_1 (x) ...
/// in the order the Kronecker product is taken (leftmost factor is the
/// most significant index). An empty list means a single system.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(CMatrix m, std::vector<int> subsystem_dims = {},
                           Strictness strictness = Strictness::hermitize);

  static HermitianMatrix zero(int dim, std::vector<int> subsystem_dims = {});
  static HermitianMatrix identity(int dim, std::vector<int> subsystem_dims = {});
  static HermitianMatrix diagonal(const RVector& diag);
  /// |v><v| (v is not normalized).
  static HermitianMatrix projector(const CVector& v);

  int dim() const { return static_cast<int>(m_.rows()); }
  const std::vector<int>& subsystem_dims() const { return dims_; }
  /// Subsystem dims, or {dim()} when no layout was given.
  std::vector<int> layout() const;
  HermitianMatrix with_subsystem_dims(std::vector<int> dims) const;

  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  double trace() const;
  /// Tr(x y), real for hermitian x, y.
  double inner(const HermitianMatrix& y) const;
  double frobenius_norm() const { return m_.norm(); }
  double max_abs_entry() const;

  HermitianMatrix& operator+=(const HermitianMatrix& y);
  HermitianMatrix& operator-=(const HermitianMatrix& y);
  HermitianMatrix& operator*=(double s);

  friend HermitianMatrix operator+(HermitianMatrix x, const HermitianMatrix& y) { return x += y; }
  friend HermitianMatrix operator-(HermitianMatrix x, const HermitianMatrix& y) { return x -= y; }
  friend HermitianMatrix operator-(HermitianMatrix x) { return x *= -1.0; }
  friend HermitianMatrix operator*(HermitianMatrix x, double s) { return x *= s; }
  friend HermitianMatrix operator*(double s, HermitianMatrix x) { return x *= s; }
  friend HermitianMatrix operator/(HermitianMatrix x, double s) { return x *= 1.0 / s; }

 private:
  CMatrix m_;
  std::vector<int> dims_;
};

/// Eigendecomposition x = U diag(eigenvalues) U*, eigenvalues descending.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

Spectrum eig(const HermitianMatrix& x);

double trace_norm(const HermitianMatrix& x);
double op_norm(const HermitianMatrix& x);
double min_eigenvalue(const HermitianMatrix& x);
double max_eigenvalue(const HermitianMatrix& x);

/// Absolute eigenvalue cutoff for x: kSupportCutoff * max(1, lambda_max).
double support_cutoff(const HermitianMatrix& x);

/// True iff lambda_min(x) >= -tol * (1 + ||x||).
bool psd_check(const HermitianMatrix& x, double tol = kPsdTol);

/// Orthogonal projection onto the span of eigenvectors with eigenvalue
/// above `cutoff` (default: support_cutoff(x)).
HermitianMatrix support_projection(const HermitianMatrix& x);
HermitianMatrix support_projection(const HermitianMatrix& x, double cutoff);
/// Orthonormal columns spanning the support (dim x rank).
CMatrix support_isometry(const HermitianMatrix& x);
CMatrix support_isometry(const HermitianMatrix& x, double cutoff);

struct AbsPosNeg {
  HermitianMatrix abs;
  HermitianMatrix pos;
  HermitianMatrix neg;
};
/// x = pos - neg, |x| = pos + neg, pos * neg = 0.
AbsPosNeg abs_pos_neg(const HermitianMatrix& x);

/// f applied to the eigenvalues of x.
HermitianMatrix spectral_map(const HermitianMatrix& x, const std::function<double(double)>& f);

/// Square root of a PSD matrix; throws DomainError if lambda_min < -tol(1+||x||).
HermitianMatrix sqrt_psd(const HermitianMatrix& x, double tol = kPsdTol);
/// Moore-Penrose inverse square root restricted to the support.
HermitianMatrix pinv_sqrt(const HermitianMatrix& x, double tol = kPsdTol);
/// Moore-Penrose pseudo-inverse (support-restricted inverse).
HermitianMatrix pinv(const HermitianMatrix& x);

/// Kronecker product; the layout is the concatenation of both layouts.
HermitianMatrix tensor(const HermitianMatrix& x, const HermitianMatrix& y);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Traces out subsystem `index` of x's layout. Throws ShapeError when x has
/// no subsystem layout or the index is out of range.
HermitianMatrix partial_trace(const HermitianMatrix& x, int index);

/// Entrywise transpose in the computational basis.
HermitianMatrix transpose_in_basis(const HermitianMatrix& x);

/// v x v* for a (possibly rectangular) v. Layout is dropped unless v is square.
HermitianMatrix congruence(const CMatrix& v, const HermitianMatrix& x);

/// Number of real coordinates of an n x n hermitian matrix (= n^2).
inline int real_dimension(int n) { return n * n; }

/// Real coordinates: the n diagonal entries, then sqrt(2) Re x_ij and
/// sqrt(2) Im x_ij for i < j in row-major order. The map is an isometry
/// from (B_h, Tr(xy)) onto (R^{n^2}, dot).
RVector to_real(const HermitianMatrix& x);
void to_real(const HermitianMatrix& x, Eigen::Ref<RVector> out);
HermitianMatrix from_real(std::span<const double> v, int n, std::vector<int> subsystem_dims = {});
HermitianMatrix from_real(const RVector& v, int n, std::vector<int> subsystem_dims = {});

}  // namespace gnorm
