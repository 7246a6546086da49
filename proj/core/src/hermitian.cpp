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

#include "gnorm/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gnorm/errors.hpp"

namespace gnorm {

namespace {

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

void check_layout(int dim, const std::vector<int>& dims) {
  if (dims.empty()) return;
  for (int d : dims) {
    if (d < 1) throw ShapeError("subsystem dimensions must be positive");
  }
  if (product(dims) != dim) {
    std::ostringstream os;
    os << "subsystem dimensions multiply to " << product(dims) << ", matrix has dimension " << dim;
    throw ShapeError(os.str());
  }
}

void check_same_dim(const HermitianMatrix& x, const HermitianMatrix& y, const char* what) {
  if (x.dim() != y.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << x.dim() << " vs " << y.dim() << ")";
    throw ShapeError(os.str());
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(CMatrix m, std::vector<int> subsystem_dims, Strictness strictness)
    : m_(std::move(m)), dims_(std::move(subsystem_dims)) {
  if (m_.rows() != m_.cols()) throw ShapeError("hermitian matrix must be square");
  check_layout(dim(), dims_);
  if (strictness == Strictness::strict && m_.size() > 0) {
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kStrictAsymmetryTol * scale) {
      std::ostringstream os;
      os << "matrix is not hermitian (max |x - x*| = " << asym << ")";
      throw ValidationError(os.str());
    }
  }
  m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

HermitianMatrix HermitianMatrix::zero(int dim, std::vector<int> subsystem_dims) {
  return HermitianMatrix(CMatrix::Zero(dim, dim), std::move(subsystem_dims));
}

HermitianMatrix HermitianMatrix::identity(int dim, std::vector<int> subsystem_dims) {
  return HermitianMatrix(CMatrix::Identity(dim, dim), std::move(subsystem_dims));
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& diag) {
  return HermitianMatrix(diag.cast<Complex>().asDiagonal().toDenseMatrix());
}

HermitianMatrix HermitianMatrix::projector(const CVector& v) {
  return HermitianMatrix(v * v.adjoint());
}

std::vector<int> HermitianMatrix::layout() const {
  if (dims_.empty()) return {dim()};
  return dims_;
}

HermitianMatrix HermitianMatrix::with_subsystem_dims(std::vector<int> dims) const {
  check_layout(dim(), dims);
  HermitianMatrix out = *this;
  out.dims_ = std::move(dims);
  return out;
}

double HermitianMatrix::trace() const { return m_.trace().real(); }

double HermitianMatrix::inner(const HermitianMatrix& y) const {
  check_same_dim(*this, y, "inner");
  // Tr(xy) = sum_ij x_ij y_ji = sum_ij x_ij conj(y_ij) for hermitian y.
  return (m_.array() * y.m_.conjugate().array()).sum().real();
}

double HermitianMatrix::max_abs_entry() const {
  return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff();
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& y) {
  check_same_dim(*this, y, "operator+");
  m_ += y.m_;
  if (dims_.empty()) dims_ = y.dims_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& y) {
  check_same_dim(*this, y, "operator-");
  m_ -= y.m_;
  if (dims_.empty()) dims_ = y.dims_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

Spectrum eig(const HermitianMatrix& x) {
  if (x.dim() == 0) return {RVector(), CMatrix()};
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian eigensolver did not converge");
  }
  Spectrum s;
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return s;
}

double trace_norm(const HermitianMatrix& x) {
  if (x.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian eigensolver did not converge");
  return solver.eigenvalues().cwiseAbs().sum();
}

double op_norm(const HermitianMatrix& x) {
  if (x.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian eigensolver did not converge");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double min_eigenvalue(const HermitianMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian eigensolver did not converge");
  return solver.eigenvalues()(0);
}

double max_eigenvalue(const HermitianMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian eigensolver did not converge");
  return solver.eigenvalues()(x.dim() - 1);
}

double support_cutoff(const HermitianMatrix& x) {
  const double top = x.dim() == 0 ? 0.0 : max_eigenvalue(x);
  return kSupportCutoff * std::max(1.0, top);
}

bool psd_check(const HermitianMatrix& x, double tol) {
  if (x.dim() == 0) return true;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(x.dim() - 1)));
  return ev(0) >= -tol * (1.0 + norm);
}

CMatrix support_isometry(const HermitianMatrix& x, double cutoff) {
  const Spectrum s = eig(x);
  int rank = 0;
  while (rank < x.dim() && s.eigenvalues(rank) > cutoff) ++rank;
  return s.eigenvectors.leftCols(rank);
}

CMatrix support_isometry(const HermitianMatrix& x) { return support_isometry(x, support_cutoff(x)); }

HermitianMatrix support_projection(const HermitianMatrix& x, double cutoff) {
  const CMatrix v = support_isometry(x, cutoff);
  return HermitianMatrix(v * v.adjoint(), x.subsystem_dims());
}

HermitianMatrix support_projection(const HermitianMatrix& x) {
  return support_projection(x, support_cutoff(x));
}

HermitianMatrix spectral_map(const HermitianMatrix& x, const std::function<double(double)>& f) {
  const Spectrum s = eig(x);
  RVector mapped(x.dim());
  for (int i = 0; i < x.dim(); ++i) mapped(i) = f(s.eigenvalues(i));
  CMatrix m = s.eigenvectors * mapped.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
  return HermitianMatrix(std::move(m), x.subsystem_dims());
}

AbsPosNeg abs_pos_neg(const HermitianMatrix& x) {
  const Spectrum s = eig(x);
  const int n = x.dim();
  RVector pos(n), neg(n);
  for (int i = 0; i < n; ++i) {
    pos(i) = std::max(s.eigenvalues(i), 0.0);
    neg(i) = std::max(-s.eigenvalues(i), 0.0);
  }
  const auto& u = s.eigenvectors;
  HermitianMatrix p(u * pos.cast<Complex>().asDiagonal() * u.adjoint(), x.subsystem_dims());
  HermitianMatrix m(u * neg.cast<Complex>().asDiagonal() * u.adjoint(), x.subsystem_dims());
  HermitianMatrix a = p + m;
  return {std::move(a), std::move(p), std::move(m)};
}

namespace {

void require_psd(const Spectrum& s, double tol, const char* what) {
  if (s.eigenvalues.size() == 0) return;
  const double lo = s.eigenvalues(s.eigenvalues.size() - 1);
  const double norm = std::max(std::abs(lo), std::abs(s.eigenvalues(0)));
  if (lo < -tol * (1.0 + norm)) {
    std::ostringstream os;
    os << what << ": matrix is not positive semidefinite (lambda_min = " << lo << ")";
    throw DomainError(os.str());
  }
}

HermitianMatrix rebuild(const Spectrum& s, const RVector& values, const std::vector<int>& dims) {
  const auto& u = s.eigenvectors;
  return HermitianMatrix(u * values.cast<Complex>().asDiagonal() * u.adjoint(), dims);
}

}  // namespace

HermitianMatrix sqrt_psd(const HermitianMatrix& x, double tol) {
  const Spectrum s = eig(x);
  require_psd(s, tol, "sqrt_psd");
  RVector v = s.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return rebuild(s, v, x.subsystem_dims());
}

HermitianMatrix pinv_sqrt(const HermitianMatrix& x, double tol) {
  const Spectrum s = eig(x);
  require_psd(s, tol, "pinv_sqrt");
  const double cutoff = kSupportCutoff * std::max(1.0, s.eigenvalues.size() ? s.eigenvalues(0) : 0.0);
  RVector v(x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    v(i) = s.eigenvalues(i) > cutoff ? 1.0 / std::sqrt(s.eigenvalues(i)) : 0.0;
  }
  return rebuild(s, v, x.subsystem_dims());
}

HermitianMatrix pinv(const HermitianMatrix& x) {
  const Spectrum s = eig(x);
  double top = 0.0;
  for (int i = 0; i < x.dim(); ++i) top = std::max(top, std::abs(s.eigenvalues(i)));
  const double cutoff = kSupportCutoff * std::max(1.0, top);
  RVector v(x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    v(i) = std::abs(s.eigenvalues(i)) > cutoff ? 1.0 / s.eigenvalues(i) : 0.0;
  }
  return rebuild(s, v, x.subsystem_dims());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianMatrix tensor(const HermitianMatrix& x, const HermitianMatrix& y) {
  std::vector<int> dims = x.layout();
  const std::vector<int> ydims = y.layout();
  dims.insert(dims.end(), ydims.begin(), ydims.end());
  return HermitianMatrix(kron(x.matrix(), y.matrix()), std::move(dims));
}

HermitianMatrix partial_trace(const HermitianMatrix& x, int index) {
  const auto& dims = x.subsystem_dims();
  if (dims.empty()) throw ShapeError("partial_trace: matrix has no subsystem layout");
  if (index < 0 || index >= static_cast<int>(dims.size())) {
    throw ShapeError("partial_trace: subsystem index out of range");
  }
  int left = 1, right = 1;
  for (int i = 0; i < index; ++i) left *= dims[i];
  for (int i = index + 1; i < static_cast<int>(dims.size()); ++i) right *= dims[i];
  const int traced = dims[index];
  const int out_dim = left * right;
  CMatrix out = CMatrix::Zero(out_dim, out_dim);
  const CMatrix& m = x.matrix();
  for (int a = 0; a < left; ++a) {
    for (int c = 0; c < right; ++c) {
      for (int a2 = 0; a2 < left; ++a2) {
        for (int c2 = 0; c2 < right; ++c2) {
          Complex sum = 0.0;
          for (int s = 0; s < traced; ++s) {
            sum += m((a * traced + s) * right + c, (a2 * traced + s) * right + c2);
          }
          out(a * right + c, a2 * right + c2) = sum;
        }
      }
    }
  }
  std::vector<int> rest = dims;
  rest.erase(rest.begin() + index);
  if (rest.size() == 1) rest.clear();
  return HermitianMatrix(std::move(out), std::move(rest));
}

HermitianMatrix transpose_in_basis(const HermitianMatrix& x) {
  return HermitianMatrix(x.matrix().transpose(), x.subsystem_dims());
}

HermitianMatrix congruence(const CMatrix& v, const HermitianMatrix& x) {
  if (v.cols() != x.dim()) throw ShapeError("congruence: dimension mismatch");
  std::vector<int> dims = v.rows() == v.cols() ? x.subsystem_dims() : std::vector<int>{};
  return HermitianMatrix(v * x.matrix() * v.adjoint(), std::move(dims));
}

void to_real(const HermitianMatrix& x, Eigen::Ref<RVector> out) {
  const int n = x.dim();
  if (out.size() != n * n) throw ShapeError("to_real: output size mismatch");
  const double r2 = std::sqrt(2.0);
  const CMatrix& m = x.matrix();
  int k = 0;
  for (int i = 0; i < n; ++i) out(k++) = m(i, i).real();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out(k++) = r2 * m(i, j).real();
      out(k++) = r2 * m(i, j).imag();
    }
  }
}

RVector to_real(const HermitianMatrix& x) {
  RVector out(x.dim() * x.dim());
  to_real(x, out);
  return out;
}

HermitianMatrix from_real(std::span<const double> v, int n, std::vector<int> subsystem_dims) {
  if (static_cast<int>(v.size()) != n * n) throw ShapeError("from_real: coordinate count mismatch");
  const double inv = 1.0 / std::sqrt(2.0);
  CMatrix m(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) m(i, i) = v[k++];
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Complex z(inv * v[k], inv * v[k + 1]);
      k += 2;
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return HermitianMatrix(std::move(m), std::move(subsystem_dims));
}

HermitianMatrix from_real(const RVector& v, int n, std::vector<int> subsystem_dims) {
  return from_real(std::span<const double>(v.data(), static_cast<size_t>(v.size())), n,
                   std::move(subsystem_dims));
}

}  // namespace gnorm
