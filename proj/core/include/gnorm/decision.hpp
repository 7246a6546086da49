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
#include <vector>

#include "gnorm/norms.hpp"
#include "gnorm/section.hpp"

namespace gnorm {

/// A family {b_theta} of members of a section with a prior.
struct Experiment {
  Experiment(Section section, std::vector<HermitianMatrix> family, std::vector<double> prior, double tol = 1e-8);

  Section section;
  std::vector<HermitianMatrix> family;
  std::vector<double> prior;

  int size() const { return static_cast<int>(family.size()); }
};

enum class ProblemKind { classical, quantum };

/// Payoff w(theta, d) in [0, 1] for finitely many decisions, or payoff
/// operators 0 <= W_theta <= I on a decision space.
struct DecisionProblem {
  ProblemKind kind = ProblemKind::classical;
  std::vector<std::vector<double>> table;    ///< table[theta][d]
  std::vector<HermitianMatrix> operators;    ///< W_theta

  static DecisionProblem classical(std::vector<std::vector<double>> table);
  static DecisionProblem quantum(std::vector<HermitianMatrix> operators);
  /// w(theta, d) = [theta == d] on k hypotheses.
  static DecisionProblem discrimination(int k);

  int num_hypotheses() const;
  /// Number of outcomes (classical) or dimension of the decision space.
  int decision_dim() const;
  /// Payoff operator W_theta (diagonal in the classical case).
  HermitianMatrix payoff_operator(int theta) const;
  /// 1 - w, or I - W.
  DecisionProblem complement() const;
};

/// Effects M_d >= 0 with sum_d M_d in the dual of `section`.
struct GeneralizedPOVM {
  GeneralizedPOVM(Section section, std::vector<HermitianMatrix> effects, double tol = 1e-8);

  Section section;
  std::vector<HermitianMatrix> effects;

  HermitianMatrix total() const;
};

/// sum_theta prior_theta W_theta^T (x) b_theta on D (x) H.
HermitianMatrix build_xi(const Experiment& e, const DecisionProblem& p);

/// Average payoff Tr(xi X^T) of a procedure X in C_B(H, D).
double average_payoff(const Experiment& e, const DecisionProblem& p, const HermitianMatrix& procedure);
/// Average payoff of a generalized POVM for a classical problem.
double average_payoff(const Experiment& e, const DecisionProblem& p, const std::vector<HermitianMatrix>& effects);

struct DecisionResult {
  double value = 0.0;
  NormResult norm;
  /// Optimal procedure: Choi matrix X on D (x) H of a B-channel.
  HermitianMatrix procedure;
  /// Classical problems: the diagonal blocks of X^T as a B-POVM.
  std::vector<HermitianMatrix> effects;
};

/// Maximal average payoff, the I_D (x) B norm of xi.
DecisionResult max_payoff(const Experiment& e, const DecisionProblem& p, const NormOptions& options = {});
/// Minimal average loss for loss table/operators `loss`, solved directly
/// as a minimum over procedures.
DecisionResult min_loss(const Experiment& e, const DecisionProblem& loss, const NormOptions& options = {});

struct TestResult {
  double error = 0.0;
  std::vector<HermitianMatrix> effects;  ///< M_0, ..., M_{k-1}
  NormResult norm;
};

/// Minimal Bayes error 1/2 (1 - ||lambda b0 - (1 - lambda) b1||_B) and an
/// optimal binary B-POVM.
TestResult bayes_error(const Section& section, const HermitianMatrix& b0, const HermitianMatrix& b1, double lambda,
                       const NormOptions& options = {});
/// Minimal average error for k hypotheses.
TestResult multi_hypothesis_error(const Section& section, const std::vector<HermitianMatrix>& family,
                                  const std::vector<double>& prior, const NormOptions& options = {});
/// Closed-form binary test for density matrices. The kernel of
/// lambda rho0 - (1 - lambda) rho1 is assigned to outcome 1.
TestResult helstrom(const HermitianMatrix& rho0, const HermitianMatrix& rho1, double lambda);

/// Optimality of a procedure X in C_B(H, D): searches for q in span(B) with
/// xi <= I (x) q minimizing Tr((I (x) q - xi) X^T), which is zero exactly
/// when the complementary slackness conditions hold. Throws ValidationError
/// if X is not a B-channel.
Certificate certify_optimal(const HermitianMatrix& procedure, const Experiment& e, const DecisionProblem& p,
                            const NormOptions& options = {});
/// Same for a B-POVM candidate of a classical problem.
Certificate certify_optimal(const std::vector<HermitianMatrix>& effects, const Experiment& e,
                            const DecisionProblem& p, const NormOptions& options = {});

struct PovmDecomposition {
  HermitianMatrix c;                      ///< sum_d M_d
  std::vector<HermitianMatrix> lambda;    ///< c^{-1/2} M_d c^{-1/2}
  HermitianMatrix support;                ///< projection onto supp(c)
};
PovmDecomposition decompose_povm(const GeneralizedPOVM& m);

struct TesterCheck {
  bool exists = false;
  double residual = 0.0;
  HermitianMatrix marginal;  ///< Tr_K |lambda X0 - (1 - lambda) X1|
};
/// Whether an optimal 1-tester with maximally entangled input exists for
/// discriminating two channels with prior (lambda, 1 - lambda).
TesterCheck max_entangled_tester_exists(const ChoiMatrix& x0, const ChoiMatrix& x1, double lambda, double tol = 1e-7);

}  // namespace gnorm
