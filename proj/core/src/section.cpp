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

#include "gnorm/section.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gnorm/errors.hpp"
#include "section_internal.hpp"

namespace gnorm {

const char* to_string(SectionKind kind) {
  switch (kind) {
    case SectionKind::states: return "states";
    case SectionKind::singleton: return "singleton";
    case SectionKind::channels: return "channels";
    case SectionKind::combs: return "combs";
    case SectionKind::generalized: return "generalized";
    case SectionKind::povm: return "povm";
    case SectionKind::identity_tensor: return "identity_tensor";
    case SectionKind::dual: return "dual";
    case SectionKind::custom: return "custom";
  }
  return "unknown";
}

std::string SectionLabel::to_string() const {
  std::ostringstream os;
  os << gnorm::to_string(kind);
  if (!dims.empty()) {
    os << "(";
    for (size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    os << ")";
  }
  if (!parent.empty()) os << "[" << parent << "]";
  return os.str();
}

namespace detail {

RMatrix to_columns(const std::vector<HermitianMatrix>& v, int n) {
  RMatrix cols(n * n, static_cast<Eigen::Index>(v.size()));
  for (size_t k = 0; k < v.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = to_real(v[k]);
  return cols;
}

std::vector<HermitianMatrix> from_columns(const RMatrix& cols, int n) {
  std::vector<HermitianMatrix> out;
  out.reserve(static_cast<size_t>(cols.cols()));
  for (Eigen::Index k = 0; k < cols.cols(); ++k) out.push_back(from_real(RVector(cols.col(k)), n));
  return out;
}

RMatrix orthogonal_complement(const RMatrix& orthonormal_cols) {
  const Eigen::Index total = orthonormal_cols.rows();
  const Eigen::Index k = orthonormal_cols.cols();
  if (k == 0) return RMatrix::Identity(total, total);
  if (k == total) return RMatrix::Zero(total, 0);
  Eigen::HouseholderQR<RMatrix> qr(orthonormal_cols);
  RMatrix q = qr.householderQ() * RMatrix::Identity(total, total);
  return q.rightCols(total - k);
}

RMatrix gram_schmidt_columns(const RMatrix& cols, double drop_tol, double scale_floor) {
  RMatrix out(cols.rows(), cols.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    RVector v = cols.col(j);
    const double original = v.norm();
    if (original == 0.0) continue;
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < kept; ++i) v -= out.col(i).dot(v) * out.col(i);
    }
    const double residual = v.norm();
    if (residual <= drop_tol * std::max(original, scale_floor)) continue;
    out.col(kept++) = v / residual;
  }
  return out.leftCols(kept);
}

RMatrix span_without(const RMatrix& span_cols, const RVector& f) {
  const RVector fh = f / f.norm();
  RMatrix projected = span_cols - fh * (fh.transpose() * span_cols);
  // Columns of span_cols have unit norm, so the drop test is absolute.
  RMatrix basis = gram_schmidt_columns(projected, 1e-9, 1.0);
  // Exactly one direction (f itself) is lost.
  if (basis.cols() > span_cols.cols() - 1) basis.conservativeResize(Eigen::NoChange, span_cols.cols() - 1);
  return basis;
}

InteriorPoint solve_interior(const std::vector<HermitianMatrix>& rows, const std::vector<double>& rhs,
                             const SolverOptions& options, double cap) {
  const int r = rows.empty() ? 1 : rows.front().dim();
  ConeProgram p("interior element: max t, b - t I >= 0, b on an affine slice");
  const int s = p.add_block(r, ConeKind::psd);
  const int t = p.add_block(1, ConeKind::free);
  for (size_t i = 0; i < rows.size(); ++i) {
    const int row = p.add_row(rhs[i]);
    p.add_term(row, s, rows[i]);
    p.add_coordinate(row, t, 0, rows[i].trace());
  }
  if (std::isfinite(cap)) {
    const int u = p.add_block(1, ConeKind::psd);
    const int row = p.add_row(cap);
    p.add_coordinate(row, t, 0, 1.0);
    p.add_coordinate(row, u, 0, 1.0);
  }
  p.add_objective(t, HermitianMatrix::identity(1) * -1.0);

  const ConeSolution sol = solve(p, options);
  InteriorPoint out;
  out.status = sol.status;
  if (sol.status == SolveStatus::infeasible || sol.status == SolveStatus::unbounded) return out;
  const double tval = sol.primal_point(p.block_offset(t));
  HermitianMatrix b = sol.primal_block(p, s) + tval * HermitianMatrix::identity(r);
  out.feasible = true;
  out.min_eigenvalue = min_eigenvalue(b);
  out.point = std::move(b);
  return out;
}

InteriorPoint solve_interior(const std::vector<HermitianMatrix>& complement, const HermitianMatrix& normalizer,
                             const SolverOptions& options) {
  std::vector<HermitianMatrix> rows = complement;
  std::vector<double> rhs(complement.size(), 0.0);
  rows.push_back(normalizer);
  rhs.push_back(1.0);
  return solve_interior(rows, rhs, options, std::numeric_limits<double>::infinity());
}

}  // namespace detail

Section::Section(Parts parts)
    : ambient_dim_(parts.ambient_dim),
      dims_(std::move(parts.subsystem_dims)),
      span_(std::move(parts.span_basis)),
      complement_(std::move(parts.complement_basis)),
      normalizer_(std::move(parts.normalizer)),
      reference_(std::move(parts.reference_point)),
      label_(std::move(parts.label)) {
  const int r = normalizer_.dim();
  if (r < 1) throw ShapeError("section: empty working space");
  if (ambient_dim_ == 0) ambient_dim_ = r;
  if (reference_.dim() != r) throw ShapeError("section: reference point dimension mismatch");
  if (parts.support) {
    support_ = *parts.support;
    if (support_.rows() != ambient_dim_ || support_.cols() != r) throw ShapeError("section: support isometry shape");
  } else {
    if (ambient_dim_ != r) throw ShapeError("section: working space differs from ambient without a support");
    support_ = CMatrix::Identity(r, r);
  }
  restricted_ = r < ambient_dim_;
  if (static_cast<int>(span_.size() + complement_.size()) != r * r) {
    throw ShapeError("section: span and complement do not split B_h");
  }
  const double pairing = reference_.inner(normalizer_);
  if (std::abs(pairing - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "section: reference point and normalizer pair to " << pairing << ", expected 1";
    throw ValidationError(os.str());
  }
  normalizer_ = normalizer_.with_subsystem_dims({});
  reference_ = reference_.with_subsystem_dims({});
}

Section Section::from_span(Parts parts) {
  const int r = parts.normalizer.dim();
  const RMatrix cols = detail::to_columns(parts.span_basis, r);
  parts.complement_basis = detail::from_columns(detail::orthogonal_complement(cols), r);
  return Section(std::move(parts));
}

Section Section::from_complement(Parts parts) {
  const int r = parts.normalizer.dim();
  const RMatrix cols = detail::to_columns(parts.complement_basis, r);
  parts.span_basis = detail::from_columns(detail::orthogonal_complement(cols), r);
  return Section(std::move(parts));
}

HermitianMatrix Section::compress(const HermitianMatrix& x) const {
  if (x.dim() != ambient_dim_) {
    std::ostringstream os;
    os << "section on dimension " << ambient_dim_ << " given a matrix of dimension " << x.dim();
    throw ShapeError(os.str());
  }
  if (!restricted_) return x.with_subsystem_dims({});
  return HermitianMatrix(support_.adjoint() * x.matrix() * support_);
}

HermitianMatrix Section::expand(const HermitianMatrix& y) const {
  if (y.dim() != dim()) throw ShapeError("section: working-space dimension mismatch");
  if (!restricted_) return y.with_subsystem_dims(dims_);
  return HermitianMatrix(support_ * y.matrix() * support_.adjoint(), dims_);
}

double Section::support_leakage(const HermitianMatrix& x) const {
  if (!restricted_) return 0.0;
  const CMatrix p = support_ * support_.adjoint();
  return (x.matrix() - p * x.matrix() * p).norm();
}

HermitianMatrix Section::project_span(const HermitianMatrix& y) const {
  if (span_.size() <= complement_.size()) {
    HermitianMatrix out = HermitianMatrix::zero(dim());
    for (const auto& j : span_) out += y.inner(j) * j;
    return out;
  }
  return y.with_subsystem_dims({}) - project_complement(y);
}

HermitianMatrix Section::project_complement(const HermitianMatrix& y) const {
  if (complement_.size() < span_.size()) {
    HermitianMatrix out = HermitianMatrix::zero(dim());
    for (const auto& k : complement_) out += y.inner(k) * k;
    return out;
  }
  return y.with_subsystem_dims({}) - project_span(y);
}

bool Section::contains(const HermitianMatrix& x, double tol) const {
  if (x.dim() != ambient_dim_) return false;
  const double scale = 1.0 + x.frobenius_norm();
  if (support_leakage(x) > tol * scale) return false;
  const HermitianMatrix y = compress(x);
  if (project_complement(y).frobenius_norm() > tol * scale) return false;
  if (std::abs(y.inner(normalizer_) - 1.0) > tol) return false;
  return psd_check(y, tol);
}

bool Section::dual_contains(const HermitianMatrix& y, double tol) const {
  if (y.dim() != ambient_dim_) return false;
  if (!psd_check(y, tol)) return false;
  const HermitianMatrix d = compress(y) - normalizer_;
  return project_span(d).frobenius_norm() <= tol * (1.0 + y.frobenius_norm());
}

HermitianMatrix Section::nearest_dual_member(const HermitianMatrix& y) const {
  const HermitianMatrix d = project_complement(y.with_subsystem_dims({}) - normalizer_);
  const HermitianMatrix w = pinv_sqrt(normalizer_);
  const double mu = min_eigenvalue(congruence(w.matrix(), d));
  const double step = mu >= -1.0 ? 1.0 : -1.0 / mu;
  return normalizer_ + step * d;
}

std::vector<HermitianMatrix> orthonormalize(const std::vector<HermitianMatrix>& vectors, double drop_tol) {
  if (vectors.empty()) return {};
  const int n = vectors.front().dim();
  for (const auto& v : vectors) {
    if (v.dim() != n) throw ShapeError("orthonormalize: inconsistent dimensions");
  }
  return detail::from_columns(detail::gram_schmidt_columns(detail::to_columns(vectors, n), drop_tol, 0.0), n);
}

InteriorPoint interior_element(const Section& section, const SolverOptions& options) {
  InteriorPoint out = detail::solve_interior(section.complement_basis(), section.normalizer(), options);
  if (out.feasible) out.point = section.expand(out.point);
  return out;
}

namespace {

constexpr double kFaithfulTol = 1e-7;

// Coefficients c with sum_k c_k j_k supported inside p, as a new basis of
// J ∩ B_h(pH) compressed to the range of v.
std::vector<HermitianMatrix> restrict_span(const std::vector<HermitianMatrix>& span, const CMatrix& v) {
  const int n = span.front().dim();
  const CMatrix p = v * v.adjoint();
  RMatrix leak(n * n, static_cast<Eigen::Index>(span.size()));
  for (size_t k = 0; k < span.size(); ++k) {
    const HermitianMatrix outside(span[k].matrix() - p * span[k].matrix() * p);
    leak.col(static_cast<Eigen::Index>(k)) = to_real(outside);
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(leak.transpose() * leak);
  const RVector& lam = es.eigenvalues();
  const double cut = 1e-12 * std::max(1.0, lam(lam.size() - 1));
  std::vector<HermitianMatrix> compressed;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > cut) break;
    HermitianMatrix combo = HermitianMatrix::zero(n);
    for (size_t k = 0; k < span.size(); ++k) combo += es.eigenvectors()(static_cast<Eigen::Index>(k), i) * span[k];
    compressed.push_back(HermitianMatrix(v.adjoint() * combo.matrix() * v));
  }
  return orthonormalize(compressed);
}

}  // namespace

Section custom_section(const std::vector<HermitianMatrix>& basis, const HermitianMatrix& normalizer,
                       const std::optional<HermitianMatrix>& interior_hint, std::vector<int> subsystem_dims) {
  if (basis.empty()) throw ValidationError("custom section: empty basis");
  const int n = normalizer.dim();
  for (const auto& j : basis) {
    if (j.dim() != n) throw ShapeError("custom section: basis and normalizer dimensions differ");
  }
  if (!psd_check(normalizer)) throw DomainError("custom section: normalizer is not positive semidefinite");

  std::vector<HermitianMatrix> span = orthonormalize(basis);
  HermitianMatrix norm_w = normalizer.with_subsystem_dims({});
  CMatrix support = CMatrix::Identity(n, n);
  std::optional<HermitianMatrix> reference;

  // A singular normalizer is replaced by a positive definite element of
  // b̃ + J^⊥ (same functional on J).
  if (min_eigenvalue(norm_w) <= kFaithfulTol * std::max(1.0, max_eigenvalue(norm_w))) {
    std::vector<double> rhs;
    for (const auto& j : span) rhs.push_back(norm_w.inner(j));
    const InteriorPoint ip = detail::solve_interior(span, rhs, {}, 1.0 + op_norm(norm_w));
    if (!ip.feasible || ip.min_eigenvalue <= kFaithfulTol * std::max(1.0, max_eigenvalue(ip.point))) {
      throw DomainError("custom section: the normalizer is not strictly positive on the section");
    }
    HermitianMatrix shift = HermitianMatrix::zero(n);
    for (const auto& j : span) shift += (ip.point - norm_w).inner(j) * j;
    norm_w = ip.point - shift;
  }

  if (interior_hint && interior_hint->dim() == n) {
    const HermitianMatrix h = interior_hint->with_subsystem_dims({});
    const RMatrix cols = detail::to_columns(span, n);
    const RVector hv = to_real(h);
    const double off_span = (hv - cols * (cols.transpose() * hv)).norm();
    if (off_span <= 1e-8 * (1.0 + hv.norm()) && std::abs(h.inner(norm_w) - 1.0) <= 1e-8 &&
        min_eigenvalue(h) > kFaithfulTol * std::max(1.0, max_eigenvalue(h))) {
      reference = h;
    }
  }

  bool restricted = false;
  while (!reference) {
    const int r = norm_w.dim();
    const RMatrix cols = detail::to_columns(span, r);
    const auto complement = detail::from_columns(detail::orthogonal_complement(cols), r);
    const InteriorPoint ip = detail::solve_interior(complement, norm_w, {});
    if (!ip.feasible) throw DomainError("custom section is empty: no PSD element of the span is normalized");
    const double top = std::max(1.0, max_eigenvalue(ip.point));
    if (ip.min_eigenvalue > kFaithfulTol * top) {
      // Pull the point into J exactly and renormalize.
      HermitianMatrix b = HermitianMatrix::zero(r);
      for (const auto& j : span) b += ip.point.inner(j) * j;
      b = b / b.inner(norm_w);
      reference = b;
      break;
    }
    const CMatrix v = support_isometry(ip.point, 1e-6 * top);
    if (v.cols() == 0) throw DomainError("custom section is empty");
    span = restrict_span(span, v);
    if (span.empty()) throw DomainError("custom section has no element on the support of its interior point");
    norm_w = HermitianMatrix(v.adjoint() * norm_w.matrix() * v);
    support = (support * v).eval();
    restricted = true;
  }

  Section::Parts parts;
  parts.ambient_dim = n;
  parts.subsystem_dims = restricted ? std::vector<int>{} : std::move(subsystem_dims);
  if (restricted) parts.support = support;
  parts.span_basis = span;
  const int r = norm_w.dim();
  parts.complement_basis = detail::from_columns(detail::orthogonal_complement(detail::to_columns(span, r)), r);
  parts.reference_point = *reference;
  parts.label = {SectionKind::custom, {}, restricted ? "restricted" : ""};

  parts.normalizer = norm_w;
  return Section(std::move(parts));
}

HermitianMatrix povm_to_block(const std::vector<HermitianMatrix>& effects) {
  if (effects.empty()) throw ShapeError("povm_to_block: no effects");
  const int d = effects.front().dim();
  const int k = static_cast<int>(effects.size());
  CMatrix m = CMatrix::Zero(k * d, k * d);
  for (int i = 0; i < k; ++i) {
    if (effects[i].dim() != d) throw ShapeError("povm_to_block: effects have different dimensions");
    m.block(i * d, i * d, d, d) = effects[i].matrix().transpose();
  }
  std::vector<int> dims{k};
  const auto inner = effects.front().layout();
  dims.insert(dims.end(), inner.begin(), inner.end());
  return HermitianMatrix(std::move(m), std::move(dims));
}

std::vector<HermitianMatrix> block_to_povm(const HermitianMatrix& m, int outcomes) {
  if (outcomes < 1 || m.dim() % outcomes != 0) throw ShapeError("block_to_povm: dimension not divisible by outcomes");
  const int d = m.dim() / outcomes;
  std::vector<HermitianMatrix> out;
  for (int i = 0; i < outcomes; ++i) {
    out.emplace_back(CMatrix(m.matrix().block(i * d, i * d, d, d).transpose()));
  }
  return out;
}

}  // namespace gnorm
