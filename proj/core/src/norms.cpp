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

#include "gnorm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gnorm/errors.hpp"

namespace gnorm {

double default_tolerance() {
  if (const char* env = std::getenv("GNORM_DEFAULT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
  }
  return 1e-8;
}

const char* to_string(NormMethod method) {
  return method == NormMethod::closed_form ? "closed_form" : "conic";
}

double NormResult::achieved_tolerance() const { return gap / std::max(1.0, std::abs(value)); }

namespace {

constexpr double kLeakageTol = 1e-9;

void check_square(const HermitianMatrix& a, const HermitianMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimensions " << a.dim() << " and " << b.dim() << " differ";
    throw ShapeError(os.str());
  }
}

HermitianMatrix to_working(const Section& s, const HermitianMatrix& x) {
  const HermitianMatrix w = s.compress(x);
  if (s.restricted() && s.support_leakage(x) > kLeakageTol * (1.0 + x.frobenius_norm())) {
    throw DomainError("argument has support outside the section's working space; the norm is infinite");
  }
  return w;
}

// Fills the value fields from the two certified bounds.
void set_bounds(NormResult& r, double upper, double lower) {
  r.primal_value = upper;
  r.dual_value = lower;
  r.value = upper;
  r.gap = std::abs(upper - lower);
}

void expand_witnesses(const Section& s, NormResult& r) {
  r.primal_witness = s.expand(r.primal_witness);
  r.dual_witness_pos = s.expand(r.dual_witness_pos);
  r.dual_witness_neg = s.expand(r.dual_witness_neg);
}

// Sectionless S_c with c = b̃: ||c^{1/2} x c^{1/2}||_1.
NormResult closed_form_full(const HermitianMatrix& normalizer, const HermitianMatrix& x) {
  const HermitianMatrix c = sqrt_psd(normalizer);
  const HermitianMatrix ci = pinv(c);
  const HermitianMatrix z = congruence(c.matrix(), x);
  const Spectrum sp = eig(z);
  const int n = z.dim();
  CMatrix pos = CMatrix::Zero(n, n);
  double value = 0.0;
  RVector absval(n);
  for (int i = 0; i < n; ++i) {
    const double l = sp.eigenvalues(i);
    value += std::abs(l);
    absval(i) = std::abs(l);
    if (l > 0.0) pos += sp.eigenvectors.col(i) * sp.eigenvectors.col(i).adjoint();
  }
  const CMatrix abs_z = sp.eigenvectors * absval.cast<Complex>().asDiagonal() * sp.eigenvectors.adjoint();
  NormResult r;
  r.primal_witness = congruence(ci.matrix(), HermitianMatrix(abs_z));
  r.dual_witness_pos = congruence(c.matrix(), HermitianMatrix(pos));
  r.dual_witness_neg = congruence(c.matrix(), HermitianMatrix(CMatrix(CMatrix::Identity(n, n) - pos)));
  set_bounds(r, value, value);
  r.method = NormMethod::closed_form;
  return r;
}

// B = {b}: order-unit norm of x with respect to b.
NormResult closed_form_single(const HermitianMatrix& b, const HermitianMatrix& x) {
  const HermitianMatrix m = pinv_sqrt(b);
  const Spectrum sp = eig(congruence(m.matrix(), x));
  const int n = x.dim();
  const bool top_wins = std::abs(sp.eigenvalues(0)) >= std::abs(sp.eigenvalues(n - 1));
  const int idx = top_wins ? 0 : n - 1;
  const double lambda = std::abs(sp.eigenvalues(idx));
  const CVector v = m.matrix() * sp.eigenvectors.col(idx);
  const HermitianMatrix y = HermitianMatrix::projector(v);
  NormResult r;
  r.primal_witness = lambda * b;
  const bool positive = sp.eigenvalues(idx) >= 0.0;
  r.dual_witness_pos = positive ? y : HermitianMatrix::zero(n);
  r.dual_witness_neg = positive ? HermitianMatrix::zero(n) : y;
  set_bounds(r, lambda, lambda);
  r.method = NormMethod::closed_form;
  return r;
}

// Smallest t >= 0 with t * b >= y.
double domination_shift(const HermitianMatrix& b_inv_sqrt, const HermitianMatrix& y) {
  return std::max(0.0, max_eigenvalue(congruence(b_inv_sqrt.matrix(), y)));
}

struct Attempt {
  double upper = 0.0;
  double lower = 0.0;
  HermitianMatrix q, ypos, yneg;
  SolveStatus status = SolveStatus::max_iter;
  int iterations = 0;
};

Attempt conic_general(const Section& s, const HermitianMatrix& x, const SolverOptions& opts) {
  const int r = s.dim();
  ConeProgram p("base norm: min <q, n> s.t. q in J, q - x >= 0, q + x >= 0");
  const int s1 = p.add_block(r, ConeKind::psd);  // q - x
  const int s2 = p.add_block(r, ConeKind::psd);  // q + x
  p.add_matrix_equality({{s2, 1.0}, {s1, -1.0}}, 2.0 * x);
  for (const auto& k : s.complement_basis()) {
    const int row = p.add_row(-x.inner(k));
    p.add_term(row, s1, k);
  }
  p.add_objective(s1, s.normalizer());
  const ConeSolution sol = solve(p, opts);

  Attempt a;
  a.status = sol.status;
  a.iterations = sol.iterations;
  const HermitianMatrix m = pinv_sqrt(s.reference_point());
  HermitianMatrix q = s.project_span(sol.primal_block(p, s1) + x);
  const double t = std::max(domination_shift(m, x - q), domination_shift(m, -x - q));
  q += t * s.reference_point();
  a.upper = q.inner(s.normalizer());
  a.q = q;

  const HermitianMatrix sum = s.nearest_dual_member(sol.slack_block(p, s1) + sol.slack_block(p, s2));
  const HermitianMatrix c = sqrt_psd(project_psd(sum));
  const Spectrum sp = eig(congruence(c.matrix(), x));
  CMatrix pos = CMatrix::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    a.lower += std::abs(sp.eigenvalues(i));
    if (sp.eigenvalues(i) > 0.0) pos += sp.eigenvectors.col(i) * sp.eigenvectors.col(i).adjoint();
  }
  a.ypos = congruence(c.matrix(), HermitianMatrix(pos));
  a.yneg = congruence(c.matrix(), HermitianMatrix(CMatrix(CMatrix::Identity(r, r) - pos)));
  return a;
}

// max <a, y> over y in B̃; a need not be PSD.
Attempt conic_psd(const Section& s, const HermitianMatrix& a, const SolverOptions& opts) {
  const int r = s.dim();
  ConeProgram p("support function: max <a, y> s.t. y >= 0, y in n + J^perp");
  const int yb = p.add_block(r, ConeKind::psd);
  for (const auto& j : s.span_basis()) {
    const int row = p.add_row(s.normalizer().inner(j));
    p.add_term(row, yb, j);
  }
  p.add_objective(yb, -a);
  const ConeSolution sol = solve(p, opts);

  Attempt out;
  out.status = sol.status;
  out.iterations = sol.iterations;
  const HermitianMatrix m = pinv_sqrt(s.reference_point());
  HermitianMatrix q = s.project_span(sol.slack_block(p, yb) + a);
  q += domination_shift(m, a - q) * s.reference_point();
  out.upper = q.inner(s.normalizer());
  out.q = q;
  out.ypos = s.nearest_dual_member(sol.primal_block(p, yb));
  out.yneg = HermitianMatrix::zero(r);
  out.lower = a.inner(out.ypos);
  return out;
}

template <typename Run>
NormResult certified_loop(const Run& run, const NormOptions& options) {
  SolverOptions so;
  so.max_iter = options.max_iter;
  so.tol = std::max(options.tol / 10.0, 1e-13);
  NormResult best;
  int total_iterations = 0;
  for (int round = 0; round < 3; ++round) {
    const Attempt a = run(so);
    total_iterations += a.iterations;
    const bool ok = std::abs(a.upper - a.lower) <= options.tol * std::max(1.0, std::abs(a.upper));
    if (round == 0 || ok || std::abs(a.upper - a.lower) < best.gap) {
      best.primal_witness = a.q;
      best.dual_witness_pos = a.ypos;
      best.dual_witness_neg = a.yneg;
      set_bounds(best, a.upper, a.lower);
      best.method = NormMethod::conic;
      best.status = ok ? SolveStatus::optimal
                       : (a.status == SolveStatus::optimal ? SolveStatus::max_iter : a.status);
    }
    best.iterations = total_iterations;
    best.solves = round + 1;
    if (ok || a.status == SolveStatus::infeasible || a.status == SolveStatus::unbounded) break;
    if (so.tol <= 1e-13) break;
    so.tol = std::max(so.tol / 100.0, 1e-13);
  }
  return best;
}

}  // namespace

double base_norm_singleton(const HermitianMatrix& b, const HermitianMatrix& x) {
  check_square(b, x, "base_norm_singleton");
  const HermitianMatrix c = sqrt_psd(b);
  return trace_norm(congruence(c.matrix(), x));
}

double order_unit_norm_singleton(const HermitianMatrix& b, const HermitianMatrix& x) {
  check_square(b, x, "order_unit_norm_singleton");
  if (!psd_check(b)) throw DomainError("order_unit_norm_singleton: b is not positive semidefinite");
  const HermitianMatrix p = support_projection(b);
  const CMatrix outside = x.matrix() - p.matrix() * x.matrix() * p.matrix();
  if (outside.norm() > kLeakageTol * (1.0 + x.frobenius_norm())) return kInfinity;
  return op_norm(congruence(pinv_sqrt(b).matrix(), x));
}

double dmax(const HermitianMatrix& a, const HermitianMatrix& b) {
  check_square(a, b, "dmax");
  if (!psd_check(a)) throw DomainError("dmax: first argument is not positive semidefinite");
  if (a.max_abs_entry() == 0.0) return -kInfinity;
  const double t = order_unit_norm_singleton(b, a);
  if (std::isinf(t)) return kInfinity;
  return std::log2(t);
}

NormResult base_norm(const Section& section, const HermitianMatrix& x, const NormOptions& options) {
  const HermitianMatrix xw = to_working(section, x);
  NormResult r;
  if (xw.max_abs_entry() == 0.0) {
    r.primal_witness = HermitianMatrix::zero(section.dim());
    r.dual_witness_pos = section.normalizer();
    r.dual_witness_neg = HermitianMatrix::zero(section.dim());
    r.method = NormMethod::closed_form;
  } else if (section.complement_basis().empty()) {
    r = closed_form_full(section.normalizer(), xw);
  } else if (section.span_dimension() == 1) {
    r = closed_form_single(section.reference_point(), xw);
  } else {
    r = certified_loop([&](const SolverOptions& so) { return conic_general(section, xw, so); }, options);
  }
  expand_witnesses(section, r);
  return r;
}

NormResult dual_base_norm(const Section& section, const HermitianMatrix& x, const NormOptions& options) {
  return base_norm(dual_section(section), x, options);
}

NormResult support_function(const Section& section, const HermitianMatrix& a, const NormOptions& options) {
  const HermitianMatrix aw = to_working(section, a);
  NormResult r;
  if (section.complement_basis().empty()) {
    // B̃ is the single point b̃.
    const double v = aw.inner(section.normalizer());
    r.primal_witness = aw;
    r.dual_witness_pos = section.normalizer();
    r.dual_witness_neg = HermitianMatrix::zero(section.dim());
    set_bounds(r, v, v);
    r.method = NormMethod::closed_form;
  } else if (section.span_dimension() == 1) {
    const HermitianMatrix& b = section.reference_point();
    const HermitianMatrix m = pinv_sqrt(b);
    const Spectrum sp = eig(congruence(m.matrix(), aw));
    const double top = sp.eigenvalues(0);
    r.primal_witness = top * b;
    r.dual_witness_pos = HermitianMatrix::projector(m.matrix() * sp.eigenvectors.col(0));
    r.dual_witness_neg = HermitianMatrix::zero(section.dim());
    set_bounds(r, top, top);
    r.method = NormMethod::closed_form;
  } else {
    r = certified_loop([&](const SolverOptions& so) { return conic_psd(section, aw, so); }, options);
  }
  expand_witnesses(section, r);
  return r;
}

NormResult base_norm_psd(const Section& section, const HermitianMatrix& a, const NormOptions& options) {
  if (!psd_check(section.compress(a))) throw DomainError("base_norm_psd: argument is not positive semidefinite");
  return support_function(section, a, options);
}

NormResult diamond_norm(const ChoiMatrix& x, const NormOptions& options) {
  return base_norm(channels_section(x.dim_in(), x.dim_out()), x.matrix(), options);
}

NormResult ncomb_norm(const std::vector<int>& dims, const HermitianMatrix& x, const NormOptions& options) {
  long total = 1;
  for (int d : dims) total *= d;
  if (total != x.dim()) {
    std::ostringstream os;
    os << "ncomb_norm: product of dims is " << total << " but the matrix has dimension " << x.dim();
    throw ShapeError(os.str());
  }
  const Section s = dims.size() == 2 ? channels_section(dims[0], dims[1]) : comb_section(dims);
  return base_norm(s, x, options);
}

HminResult hmin(const HermitianMatrix& sigma, int dim_in, int dim_out, const NormOptions& options) {
  if (dim_in < 1 || dim_out < 1 || sigma.dim() != dim_in * dim_out) {
    throw ShapeError("hmin: state dimension does not match dim_out * dim_in");
  }
  if (!psd_check(sigma)) throw DomainError("hmin: state is not positive semidefinite");
  const Section s = identity_tensor_section(states_section(dim_in), dim_out);
  HminResult out;
  out.norm = base_norm_psd(s, sigma.with_subsystem_dims({dim_out, dim_in}), options);
  out.value = out.norm.value > 0.0 ? -std::log2(out.norm.value) : kInfinity;
  return out;
}

Certificate certify_extremal_psd(const Section& section, const HermitianMatrix& a, const HermitianMatrix& candidate,
                                 ExtremalCandidate kind, const NormOptions& options) {
  check_square(a, candidate, "certify_extremal_psd");
  NormOptions inner = options;
  inner.tol = options.tol / 10.0;
  const NormResult n = base_norm_psd(section, a, inner);
  Certificate c;
  c.optimum = n.value;
  const double threshold = options.tol * std::max(1.0, n.value);
  if (kind == ExtremalCandidate::dual_maximizer) {
    const HermitianMatrix cw = section.compress(candidate);
    const double off = section.project_span(cw - section.normalizer()).frobenius_norm();
    if (!psd_check(cw, 1e-8) || off > 1e-8 * (1.0 + cw.frobenius_norm())) {
      throw ValidationError("certify_extremal_psd: candidate is not in the dual section");
    }
    c.candidate_value = a.inner(candidate);
    const HermitianMatrix diff = n.primal_witness - a;
    c.slack = diff.inner(candidate);
    c.product_residual = (diff.matrix() * candidate.matrix()).norm();
    c.witness_q = n.primal_witness;
  } else {
    if (!section.contains(candidate, 1e-8)) {
      throw ValidationError("certify_extremal_psd: candidate is not in the section");
    }
    const double t = order_unit_norm_singleton(candidate, a);
    c.candidate_value = t;
    if (std::isinf(t)) {
      c.slack = kInfinity;
      c.product_residual = kInfinity;
      return c;
    }
    const HermitianMatrix q = t * candidate;
    const HermitianMatrix diff = q - a;
    c.slack = diff.inner(n.dual_witness_pos);
    c.product_residual = (diff.matrix() * n.dual_witness_pos.matrix()).norm();
    c.witness_q = q;
  }
  c.feasible = c.slack <= threshold;
  return c;
}

}  // namespace gnorm
