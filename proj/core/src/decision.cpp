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

#include "gnorm/decision.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gnorm/errors.hpp"

namespace gnorm {

namespace {

std::vector<int> with_leading(int d, const Section& s) {
  std::vector<int> dims{d};
  if (s.subsystem_dims().empty()) {
    dims.push_back(s.ambient_dim());
  } else {
    dims.insert(dims.end(), s.subsystem_dims().begin(), s.subsystem_dims().end());
  }
  return dims;
}

void check_prior(const std::vector<double>& prior, size_t expected) {
  if (prior.size() != expected) {
    std::ostringstream os;
    os << "prior has " << prior.size() << " entries, expected " << expected;
    throw ShapeError(os.str());
  }
  double sum = 0.0;
  for (double p : prior) {
    if (!(p >= 0.0)) throw ValidationError("prior entries must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "prior sums to " << sum << ", expected 1";
    throw ValidationError(os.str());
  }
}

// Candidate tolerance for membership checks of solver output.
double membership_tol(const NormOptions& o) { return std::max(1e-8, 10.0 * o.tol); }

void check_procedure(const HermitianMatrix& x, const Experiment& e, int d, double tol) {
  const int n = e.section.ambient_dim();
  if (x.dim() != d * n) {
    std::ostringstream os;
    os << "procedure has dimension " << x.dim() << ", expected " << d * n;
    throw ShapeError(os.str());
  }
  if (!psd_check(x, tol)) throw ValidationError("procedure is not positive semidefinite");
  const HermitianMatrix xt(x.matrix().transpose(), {d, n});
  if (!e.section.dual_contains(partial_trace(xt, 0), tol)) {
    throw ValidationError("procedure is not a channel on the section: its marginal is not in the dual section");
  }
}

}  // namespace

Experiment::Experiment(Section s, std::vector<HermitianMatrix> f, std::vector<double> p, double tol)
    : section(std::move(s)), family(std::move(f)), prior(std::move(p)) {
  if (family.empty()) throw ShapeError("experiment: empty family");
  check_prior(prior, family.size());
  for (size_t i = 0; i < family.size(); ++i) {
    if (!section.contains(family[i], tol)) {
      std::ostringstream os;
      os << "experiment: family member " << i << " is not in the section";
      throw ValidationError(os.str());
    }
  }
}

DecisionProblem DecisionProblem::classical(std::vector<std::vector<double>> table) {
  if (table.empty() || table.front().empty()) throw ShapeError("decision problem: empty payoff table");
  for (const auto& row : table) {
    if (row.size() != table.front().size()) throw ShapeError("decision problem: ragged payoff table");
    for (double w : row) {
      if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("decision problem: payoff entries must lie in [0, 1]");
    }
  }
  DecisionProblem p;
  p.kind = ProblemKind::classical;
  p.table = std::move(table);
  return p;
}

DecisionProblem DecisionProblem::quantum(std::vector<HermitianMatrix> operators) {
  if (operators.empty()) throw ShapeError("decision problem: no payoff operators");
  for (const auto& w : operators) {
    if (w.dim() != operators.front().dim()) throw ShapeError("decision problem: operators differ in dimension");
    if (!psd_check(w) || max_eigenvalue(w) > 1.0 + 1e-10) {
      throw ValidationError("decision problem: payoff operators must satisfy 0 <= W <= I");
    }
  }
  DecisionProblem p;
  p.kind = ProblemKind::quantum;
  p.operators = std::move(operators);
  return p;
}

DecisionProblem DecisionProblem::discrimination(int k) {
  std::vector<std::vector<double>> table(static_cast<size_t>(k), std::vector<double>(static_cast<size_t>(k), 0.0));
  for (int i = 0; i < k; ++i) table[i][i] = 1.0;
  return classical(std::move(table));
}

int DecisionProblem::num_hypotheses() const {
  return static_cast<int>(kind == ProblemKind::classical ? table.size() : operators.size());
}

int DecisionProblem::decision_dim() const {
  return kind == ProblemKind::classical ? static_cast<int>(table.front().size()) : operators.front().dim();
}

HermitianMatrix DecisionProblem::payoff_operator(int theta) const {
  if (kind == ProblemKind::quantum) return operators.at(static_cast<size_t>(theta));
  const auto& row = table.at(static_cast<size_t>(theta));
  return HermitianMatrix::diagonal(Eigen::Map<const RVector>(row.data(), static_cast<Eigen::Index>(row.size())));
}

DecisionProblem DecisionProblem::complement() const {
  DecisionProblem p = *this;
  for (auto& row : p.table) {
    for (double& w : row) w = 1.0 - w;
  }
  for (auto& w : p.operators) w = HermitianMatrix::identity(w.dim()) - w;
  return p;
}

GeneralizedPOVM::GeneralizedPOVM(Section s, std::vector<HermitianMatrix> e, double tol)
    : section(std::move(s)), effects(std::move(e)) {
  if (effects.empty()) throw ShapeError("povm: no effects");
  for (size_t i = 0; i < effects.size(); ++i) {
    if (effects[i].dim() != section.ambient_dim()) throw ShapeError("povm: effect dimension mismatch");
    if (!psd_check(effects[i], tol)) {
      std::ostringstream os;
      os << "povm: effect " << i << " is not positive semidefinite";
      throw ValidationError(os.str());
    }
  }
  if (!section.dual_contains(total(), tol)) throw ValidationError("povm: effects do not sum to a dual-section element");
}

HermitianMatrix GeneralizedPOVM::total() const {
  HermitianMatrix c = HermitianMatrix::zero(effects.front().dim());
  for (const auto& m : effects) c += m;
  return c;
}

HermitianMatrix build_xi(const Experiment& e, const DecisionProblem& p) {
  if (p.num_hypotheses() != e.size()) {
    std::ostringstream os;
    os << "decision problem has " << p.num_hypotheses() << " hypotheses, experiment has " << e.size();
    throw ShapeError(os.str());
  }
  const int d = p.decision_dim();
  const int n = e.section.ambient_dim();
  CMatrix xi = CMatrix::Zero(d * n, d * n);
  for (int t = 0; t < e.size(); ++t) {
    if (e.prior[t] == 0.0) continue;
    xi += e.prior[t] * kron(p.payoff_operator(t).matrix().transpose(), e.family[t].matrix());
  }
  return HermitianMatrix(std::move(xi), with_leading(d, e.section));
}

double average_payoff(const Experiment& e, const DecisionProblem& p, const HermitianMatrix& procedure) {
  const HermitianMatrix xi = build_xi(e, p);
  if (procedure.dim() != xi.dim()) throw ShapeError("average_payoff: procedure dimension mismatch");
  return (xi.matrix().cwiseProduct(procedure.matrix())).sum().real();  // Tr(xi X^T)
}

double average_payoff(const Experiment& e, const DecisionProblem& p, const std::vector<HermitianMatrix>& effects) {
  if (p.kind != ProblemKind::classical) throw DomainError("average_payoff: POVM candidates need a classical problem");
  if (static_cast<int>(effects.size()) != p.decision_dim()) throw ShapeError("average_payoff: wrong number of effects");
  double total = 0.0;
  for (int t = 0; t < e.size(); ++t) {
    for (int d = 0; d < p.decision_dim(); ++d) total += e.prior[t] * p.table[t][d] * e.family[t].inner(effects[d]);
  }
  return total;
}

DecisionResult max_payoff(const Experiment& e, const DecisionProblem& p, const NormOptions& options) {
  const HermitianMatrix xi = build_xi(e, p);
  const int d = p.decision_dim();
  DecisionResult r;
  r.norm = base_norm_psd(identity_tensor_section(e.section, d), xi, options);
  r.value = r.norm.value;
  const HermitianMatrix& y = r.norm.dual_witness_pos;  // X^T
  r.procedure = HermitianMatrix(y.matrix().transpose(), xi.subsystem_dims());
  if (p.kind == ProblemKind::classical) {
    r.effects = block_to_povm(r.procedure, d);
  }
  return r;
}

DecisionResult min_loss(const Experiment& e, const DecisionProblem& loss, const NormOptions& options) {
  const HermitianMatrix xi = build_xi(e, loss);
  const int d = loss.decision_dim();
  DecisionResult r;
  r.norm = support_function(identity_tensor_section(e.section, d), -xi, options);
  r.value = -r.norm.value;
  const HermitianMatrix& y = r.norm.dual_witness_pos;
  r.procedure = HermitianMatrix(y.matrix().transpose(), xi.subsystem_dims());
  if (loss.kind == ProblemKind::classical) r.effects = block_to_povm(r.procedure, d);
  return r;
}

TestResult bayes_error(const Section& section, const HermitianMatrix& b0, const HermitianMatrix& b1, double lambda,
                       const NormOptions& options) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("bayes_error: lambda must lie in [0, 1]");
  if (!section.contains(b0, 1e-8)) throw ValidationError("bayes_error: b0 is not in the section");
  if (!section.contains(b1, 1e-8)) throw ValidationError("bayes_error: b1 is not in the section");
  TestResult r;
  r.norm = base_norm(section, lambda * b0 - (1.0 - lambda) * b1, options);
  r.error = 0.5 * (1.0 - r.norm.value);
  r.effects = {r.norm.dual_witness_pos, r.norm.dual_witness_neg};
  return r;
}

TestResult multi_hypothesis_error(const Section& section, const std::vector<HermitianMatrix>& family,
                                  const std::vector<double>& prior, const NormOptions& options) {
  const Experiment e(section, family, prior);
  const DecisionResult d = max_payoff(e, DecisionProblem::discrimination(e.size()), options);
  TestResult r;
  r.error = 1.0 - d.value;
  r.effects = d.effects;
  r.norm = d.norm;
  return r;
}

TestResult helstrom(const HermitianMatrix& rho0, const HermitianMatrix& rho1, double lambda) {
  if (rho0.dim() != rho1.dim()) throw ShapeError("helstrom: states differ in dimension");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("helstrom: lambda must lie in [0, 1]");
  const HermitianMatrix diff = lambda * rho0 - (1.0 - lambda) * rho1;
  const Spectrum sp = eig(diff);
  const double cut = support_cutoff(diff);
  const int n = diff.dim();
  CMatrix m0 = CMatrix::Zero(n, n);
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    norm += std::abs(sp.eigenvalues(i));
    if (sp.eigenvalues(i) > cut) m0 += sp.eigenvectors.col(i) * sp.eigenvectors.col(i).adjoint();
  }
  TestResult r;
  r.error = 0.5 * (1.0 - norm);
  r.effects = {HermitianMatrix(m0), HermitianMatrix(CMatrix(CMatrix::Identity(n, n) - m0))};
  r.norm.value = r.norm.primal_value = r.norm.dual_value = norm;
  r.norm.method = NormMethod::closed_form;
  return r;
}

Certificate certify_optimal(const HermitianMatrix& procedure, const Experiment& e, const DecisionProblem& p,
                            const NormOptions& options) {
  const int d = p.decision_dim();
  check_procedure(procedure, e, d, membership_tol(options));
  NormOptions inner = options;
  inner.tol = options.tol / 10.0;
  const DecisionResult opt = max_payoff(e, p, inner);
  const HermitianMatrix xi = build_xi(e, p);
  const HermitianMatrix slack_op = opt.norm.primal_witness - xi;  // I (x) q - xi >= 0
  const CMatrix xt = procedure.matrix().transpose();
  Certificate c;
  c.optimum = opt.value;
  c.candidate_value = average_payoff(e, p, procedure);
  c.slack = (slack_op.matrix().cwiseProduct(xt.transpose())).sum().real();
  c.product_residual = (slack_op.matrix() * xt).norm();
  c.witness_q = partial_trace(opt.norm.primal_witness.with_subsystem_dims(xi.subsystem_dims()), 0) /
                static_cast<double>(d);
  c.feasible = c.slack <= options.tol * std::max(1.0, opt.value);
  return c;
}

Certificate certify_optimal(const std::vector<HermitianMatrix>& effects, const Experiment& e,
                            const DecisionProblem& p, const NormOptions& options) {
  if (p.kind != ProblemKind::classical) throw DomainError("certify_optimal: POVM candidates need a classical problem");
  if (static_cast<int>(effects.size()) != p.decision_dim()) {
    std::ostringstream os;
    os << "certify_optimal: " << effects.size() << " effects for " << p.decision_dim() << " decisions";
    throw ShapeError(os.str());
  }
  return certify_optimal(povm_to_block(effects), e, p, options);
}

PovmDecomposition decompose_povm(const GeneralizedPOVM& m) {
  PovmDecomposition out;
  out.c = m.total();
  const HermitianMatrix w = pinv_sqrt(out.c);
  for (const auto& e : m.effects) out.lambda.push_back(congruence(w.matrix(), e));
  out.support = support_projection(out.c);
  return out;
}

TesterCheck max_entangled_tester_exists(const ChoiMatrix& x0, const ChoiMatrix& x1, double lambda, double tol) {
  if (x0.dim_in() != x1.dim_in() || x0.dim_out() != x1.dim_out()) {
    throw ShapeError("tester check: Choi matrices have different dimensions");
  }
  if (!is_channel(x0, 1e-8)) throw ValidationError("tester check: first operator is not a channel Choi matrix");
  if (!is_channel(x1, 1e-8)) throw ValidationError("tester check: second operator is not a channel Choi matrix");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("tester check: lambda must lie in [0, 1]");
  const HermitianMatrix diff = lambda * x0.matrix() - (1.0 - lambda) * x1.matrix();
  const HermitianMatrix abs_diff = abs_pos_neg(diff).abs.with_subsystem_dims({x0.dim_out(), x0.dim_in()});
  TesterCheck r;
  r.marginal = partial_trace(abs_diff, 0);
  const double mean = r.marginal.trace() / x0.dim_in();
  if (mean <= 1e-14) {
    r.exists = true;
    r.residual = 0.0;
    return r;
  }
  r.residual = op_norm(r.marginal - mean * HermitianMatrix::identity(x0.dim_in())) / mean;
  r.exists = r.residual <= tol;
  return r;
}

}  // namespace gnorm
