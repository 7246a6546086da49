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

#include "gnorm/cone_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <memory>
#include <mutex>
#include <sstream>

#include "gnorm/errors.hpp"

namespace gnorm {

ConeProgram::ConeProgram(std::string description) : description_(std::move(description)) {}

int ConeProgram::add_block(int dim, ConeKind cone) {
  if (dim < 1) throw ShapeError("cone program block dimension must be positive");
  blocks_.push_back({dim, cone});
  offsets_.push_back(num_vars_);
  num_vars_ += dim * dim;
  RVector grown = RVector::Zero(num_vars_);
  grown.head(objective_.size()) = objective_;
  objective_ = std::move(grown);
  return static_cast<int>(blocks_.size()) - 1;
}

void ConeProgram::check_block(int block) const {
  if (block < 0 || block >= static_cast<int>(blocks_.size())) {
    throw ShapeError("cone program: block index out of range");
  }
}

void ConeProgram::add_objective(int block, const HermitianMatrix& coef) {
  check_block(block);
  if (coef.dim() != blocks_[block].dim) throw ShapeError("cone program: objective block dimension mismatch");
  const int n = coef.dim() * coef.dim();
  objective_.segment(offsets_[block], n) += to_real(coef);
}

int ConeProgram::add_row(double rhs) {
  rhs_.push_back(rhs);
  return static_cast<int>(rhs_.size()) - 1;
}

void ConeProgram::add_term(int row, int block, const HermitianMatrix& coef) {
  check_block(block);
  if (row < 0 || row >= num_rows()) throw ShapeError("cone program: row index out of range");
  if (coef.dim() != blocks_[block].dim) throw ShapeError("cone program: constraint block dimension mismatch");
  const RVector v = to_real(coef);
  for (int k = 0; k < v.size(); ++k) {
    if (v(k) != 0.0) entries_.push_back({row, offsets_[block] + k, v(k)});
  }
}

void ConeProgram::add_coordinate(int row, int block, int coord, double value) {
  check_block(block);
  if (row < 0 || row >= num_rows()) throw ShapeError("cone program: row index out of range");
  if (coord < 0 || coord >= blocks_[block].dim * blocks_[block].dim) {
    throw ShapeError("cone program: coordinate out of range");
  }
  if (value != 0.0) entries_.push_back({row, offsets_[block] + coord, value});
}

void ConeProgram::add_matrix_equality(const std::vector<BlockWeight>& lhs, const HermitianMatrix& rhs) {
  for (const auto& bw : lhs) {
    check_block(bw.block);
    if (blocks_[bw.block].dim != rhs.dim()) throw ShapeError("cone program: matrix equality dimension mismatch");
  }
  const RVector r = to_real(rhs);
  for (int k = 0; k < r.size(); ++k) {
    const int row = add_row(r(k));
    for (const auto& bw : lhs) add_coordinate(row, bw.block, k, bw.weight);
  }
}

std::string ConeProgram::dump() const {
  std::ostringstream os;
  os.precision(17);
  os << "# " << description_ << "\n";
  os << "blocks " << blocks_.size() << "\n";
  for (const auto& b : blocks_) os << b.dim << (b.cone == ConeKind::psd ? " psd" : " free") << "\n";
  os << "objective " << num_vars_ << "\n";
  for (int i = 0; i < num_vars_; ++i) {
    if (objective_(i) != 0.0) os << i << " " << objective_(i) << "\n";
  }
  os << "constraints " << num_rows() << " " << entries_.size() << "\n";
  for (const auto& e : entries_) os << e.row << " " << e.col << " " << e.value << "\n";
  os << "rhs\n";
  for (double r : rhs_) os << r << "\n";
  return os.str();
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// Rows of A are normalized; A^T A = W diag(lambda) W^T splits R^n into the
// row space (lambda > 0) and the null space of A.
struct Factorization {
  int rows = 0;
  int cols = 0;
  std::vector<ConeProgram::Entry> entries;
  RMatrix a;            // row-normalized A
  RVector row_scale;    // a = diag(row_scale) A
  RMatrix range_basis;  // n x r, orthonormal
  RMatrix null_basis;   // n x (n - r), orthonormal
  RMatrix pinv_t;       // m x n, maps v to the least-squares y of a^T y = v
  RMatrix pinv;         // n x m, least-norm solution map of a x = rhs
};

bool same_structure(const Factorization& f, const ConeProgram& p) {
  if (f.rows != p.num_rows() || f.cols != p.num_variables()) return false;
  const auto& e = p.entries();
  if (e.size() != f.entries.size()) return false;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i].row != f.entries[i].row || e[i].col != f.entries[i].col || e[i].value != f.entries[i].value) {
      return false;
    }
  }
  return true;
}

std::shared_ptr<const Factorization> factorize(const ConeProgram& p) {
  auto f = std::make_shared<Factorization>();
  const int m = p.num_rows();
  const int n = p.num_variables();
  f->rows = m;
  f->cols = n;
  f->entries = p.entries();
  f->a = RMatrix::Zero(m, n);
  for (const auto& e : p.entries()) f->a(e.row, e.col) += e.value;
  f->row_scale = RVector::Ones(m);
  for (int i = 0; i < m; ++i) {
    const double norm = f->a.row(i).norm();
    if (norm > 0.0) {
      f->row_scale(i) = 1.0 / norm;
      f->a.row(i) *= f->row_scale(i);
    }
  }
  if (m == 0) {
    f->range_basis = RMatrix::Zero(n, 0);
    f->null_basis = RMatrix::Identity(n, n);
    f->pinv_t = RMatrix::Zero(0, n);
    f->pinv = RMatrix::Zero(n, 0);
    return f;
  }
  const RMatrix gram = f->a.transpose() * f->a;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(gram);
  if (es.info() != Eigen::Success) throw NumericalError("cone solver: constraint factorization failed");
  const RVector& lam = es.eigenvalues();
  const double top = std::max(lam(n - 1), 0.0);
  const double cut = 1e-11 * std::max(1.0, top);
  int nullity = 0;
  while (nullity < n && lam(nullity) <= cut) ++nullity;
  const int rank = n - nullity;
  f->null_basis = es.eigenvectors().leftCols(nullity);
  f->range_basis = es.eigenvectors().rightCols(rank);
  const RVector inv = lam.tail(rank).cwiseInverse();
  // (A^T A)^+ restricted to the range.
  const RMatrix gram_pinv = f->range_basis * inv.asDiagonal() * f->range_basis.transpose();
  f->pinv = gram_pinv * f->a.transpose();
  f->pinv_t = f->a * gram_pinv;
  return f;
}

std::shared_ptr<const Factorization> cached_factorization(const ConeProgram& p) {
  static std::mutex mutex;
  static std::list<std::shared_ptr<const Factorization>> cache;
  constexpr size_t kCapacity = 16;
  {
    std::lock_guard<std::mutex> lock(mutex);
    for (auto it = cache.begin(); it != cache.end(); ++it) {
      if (same_structure(**it, p)) {
        auto hit = *it;
        cache.erase(it);
        cache.push_front(hit);
        return hit;
      }
    }
  }
  auto f = factorize(p);
  std::lock_guard<std::mutex> lock(mutex);
  cache.push_front(f);
  if (cache.size() > kCapacity) cache.pop_back();
  return f;
}

class BlockProjector {
 public:
  explicit BlockProjector(const ConeProgram& p) : program_(p) {}

  // Projects v onto K in place.
  void project(Eigen::Ref<RVector> v) const {
    for (size_t b = 0; b < program_.blocks().size(); ++b) {
      const auto& blk = program_.blocks()[b];
      if (blk.cone == ConeKind::free) continue;
      const int off = program_.block_offset(static_cast<int>(b));
      const int d = blk.dim;
      if (d == 1) {
        v(off) = std::max(v(off), 0.0);
        continue;
      }
      auto seg = v.segment(off, d * d);
      const HermitianMatrix x = from_real(std::span<const double>(seg.data(), static_cast<size_t>(d * d)), d);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(x.matrix());
      if (es.info() != Eigen::Success) throw NumericalError("cone solver: block eigensolver failed");
      const RVector& lam = es.eigenvalues();
      if (lam(0) >= 0.0) continue;
      const CMatrix& u = es.eigenvectors();
      const RVector clipped = lam.cwiseMax(0.0);
      const HermitianMatrix y(u * clipped.cast<Complex>().asDiagonal() * u.adjoint());
      to_real(y, seg);
    }
  }

 private:
  const ConeProgram& program_;
};

}  // namespace

HermitianMatrix project_psd(const HermitianMatrix& x) { return abs_pos_neg(x).pos; }

HermitianMatrix ConeSolution::primal_block(const ConeProgram& p, int block) const {
  const int d = p.blocks().at(block).dim;
  return from_real(std::span<const double>(primal_point.data() + p.block_offset(block), static_cast<size_t>(d * d)), d);
}

HermitianMatrix ConeSolution::slack_block(const ConeProgram& p, int block) const {
  const int d = p.blocks().at(block).dim;
  return from_real(std::span<const double>(dual_slack.data() + p.block_offset(block), static_cast<size_t>(d * d)), d);
}

ConeSolution solve(const ConeProgram& program, double tol, int max_iter) {
  SolverOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return solve(program, opts);
}

ConeSolution solve(const ConeProgram& program, const SolverOptions& options) {
  const int n = program.num_variables();
  const int m = program.num_rows();
  if (n == 0) throw ShapeError("cone program has no variables");

  const auto fac = cached_factorization(program);
  const RVector b = Eigen::Map<const RVector>(program.rhs().data(), m);
  const RVector& c = program.objective();
  const RVector b_rows = b.cwiseProduct(fac->row_scale);

  ConeSolution sol;

  // Affine feasibility of A x = b.
  const RVector x_min = fac->pinv * b_rows;
  {
    const double inconsistency = (fac->a * x_min - b_rows).norm();
    if (inconsistency > 1e-9 * (1.0 + b_rows.norm())) {
      sol.status = SolveStatus::infeasible;
      sol.primal_value = std::numeric_limits<double>::infinity();
      sol.dual_value = std::numeric_limits<double>::infinity();
      sol.primal_point = x_min;
      sol.dual_point = RVector::Zero(m);
      sol.dual_slack = RVector::Zero(n);
      sol.primal_residual = inconsistency / (1.0 + b_rows.norm());
      return sol;
    }
  }

  // Scale so that the least-norm point and the cost have unit size.
  const double primal_scale = x_min.norm() > 1e-12 ? x_min.norm() : 1.0;
  const double dual_scale = c.norm() > 1e-12 ? c.norm() : 1.0;
  const RVector x0 = x_min / primal_scale;
  const RVector cs = c / dual_scale;

  const bool use_null = fac->null_basis.cols() <= fac->range_basis.cols();
  auto project_affine = [&](const RVector& v, RVector& out) {
    if (use_null) {
      out.noalias() = fac->null_basis * (fac->null_basis.transpose() * v);
    } else {
      out = v;
      out.noalias() -= fac->range_basis * (fac->range_basis.transpose() * v);
    }
    out += x0;
  };

  const BlockProjector cone(program);
  const double alpha = options.relaxation;
  double rho = 1.0;

  RVector x = RVector::Zero(n), z = RVector::Zero(n), u = RVector::Zero(n);
  RVector v(n), w(n), z_prev(n);

  const double c_norm = c.norm();

  struct Snapshot {
    double worst = std::numeric_limits<double>::infinity();
    RVector z, s, y;
    double pres = 0, dres = 0, gap = 0, pobj = 0, dobj = 0;
    int iter = 0;
  } best;

  int last_improvement = 0;
  SolveStatus status = SolveStatus::max_iter;
  int iter = 0;
  double prev_s_norm = 0.0, prev_z_norm = 0.0;
  int diverge_s = 0, diverge_z = 0;
  RVector u_prev_check = RVector::Zero(n), d(n), probe(n);
  int separations = 0;

  for (iter = 1; iter <= options.max_iter; ++iter) {
    v = z - u - cs / rho;
    project_affine(v, x);
    w = alpha * x + (1.0 - alpha) * z + u;
    z_prev = z;
    z = w;
    cone.project(z);
    u = w - z;

    const bool check = iter % options.check_every == 0 || iter == options.max_iter;
    if (!check) continue;

    // Original units.
    const RVector s = (-rho * dual_scale) * u;
    const RVector zo = primal_scale * z;
    RVector y = fac->pinv_t * (c - s);
    const double pres = (fac->a * zo - b_rows).norm() / (1.0 + b_rows.norm());
    const RVector yo = y.cwiseProduct(fac->row_scale);
    const double dres = (c - fac->a.transpose() * y - s).norm() / (1.0 + c_norm);
    const double pobj = c.dot(zo);
    const double dobj = b.dot(yo);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double worst = std::max({pres, dres, gap});

    if (worst < best.worst) {
      if (worst < 0.999 * best.worst) last_improvement = iter;
      best.worst = worst;
      best.z = zo;
      best.s = s;
      best.y = yo;
      best.pres = pres;
      best.dres = dres;
      best.gap = gap;
      best.pobj = pobj;
      best.dobj = dobj;
      best.iter = iter;
    }
    if (worst <= options.tol) {
      status = SolveStatus::optimal;
      break;
    }

    // Primal infeasibility certificate: the increments of u converge to a
    // direction d in the polar cone, orthogonal to the affine null space,
    // with <d, x0> > 0. Such a d separates the affine set from the cone.
    d = u - u_prev_check;
    u_prev_check = u;
    const double d_norm = d.norm();
    if (d_norm > 1e-12 * (1.0 + u.norm())) {
      d /= d_norm;
      probe = d;
      cone.project(probe);
      const double cone_res = probe.norm();
      project_affine(d, probe);
      const double null_res = (probe - x0).norm();
      separations = (cone_res < 1e-7 && null_res < 1e-7 && d.dot(x0) > 1e-4) ? separations + 1 : 0;
      if (separations >= 3) {
        status = SolveStatus::infeasible;
        break;
      }
    } else {
      separations = 0;
    }

    // Divergence heuristics: the scaled dual slack grows without bound on
    // primal infeasible programs, the primal iterate on unbounded ones.
    const double s_norm = (rho * u).norm();
    const double z_norm = z.norm();
    diverge_s = (s_norm > prev_s_norm && s_norm > options.divergence_threshold) ? diverge_s + 1 : 0;
    diverge_z = (z_norm > prev_z_norm && z_norm > options.divergence_threshold * (1.0 + x0.norm())) ? diverge_z + 1 : 0;
    prev_s_norm = s_norm;
    prev_z_norm = z_norm;
    if (diverge_s >= 3) {
      status = SolveStatus::infeasible;
      break;
    }
    if (diverge_z >= 3) {
      status = SolveStatus::unbounded;
      break;
    }
    if (iter - last_improvement >= options.stall_window) break;

    // Residual balancing on the splitting residuals.
    if (iter % (5 * options.check_every) == 0) {
      const double r_prim = (x - z).norm() / std::max({x.norm(), z.norm(), 1e-12});
      const double r_dual = rho * (z - z_prev).norm() / std::max((rho * u).norm(), 1e-12);
      if (r_prim > 0.0 && r_dual > 0.0) {
        const double ratio = r_prim / r_dual;
        if (ratio > 5.0 || ratio < 0.2) {
          const double factor = std::clamp(std::sqrt(ratio), 0.1, 10.0);
          const double new_rho = std::clamp(rho * factor, 1e-6, 1e6);
          u *= rho / new_rho;
          rho = new_rho;
        }
      }
    }
  }

  sol.iterations = std::min(iter, options.max_iter);
  sol.status = status;
  if (status == SolveStatus::infeasible) {
    sol.primal_value = std::numeric_limits<double>::infinity();
    sol.dual_value = std::numeric_limits<double>::infinity();
  } else if (status == SolveStatus::unbounded) {
    sol.primal_value = -std::numeric_limits<double>::infinity();
    sol.dual_value = -std::numeric_limits<double>::infinity();
  }
  if (best.z.size() == 0) {
    best.z = primal_scale * z;
    best.s = RVector::Zero(n);
    best.y = RVector::Zero(m);
  }
  sol.primal_point = best.z;
  sol.dual_slack = best.s;
  sol.dual_point = best.y;
  sol.primal_residual = best.pres;
  sol.dual_residual = best.dres;
  sol.gap = best.gap;
  if (status == SolveStatus::optimal || status == SolveStatus::max_iter) {
    sol.primal_value = best.pobj;
    sol.dual_value = best.dobj;
  }
  return sol;
}

}  // namespace gnorm
