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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gnorm/decision.hpp"
#include "gnorm/errors.hpp"
#include "oracles.hpp"

using namespace gnorm;

namespace {

HermitianMatrix ket_proj(std::initializer_list<Complex> v) {
  CVector c(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex z : v) c(i++) = z;
  return HermitianMatrix::projector(c.normalized());
}

const double kS = 1.0 / std::numbers::sqrt2;

// Binary error of a POVM {m0, m1}.
double povm_error(const HermitianMatrix& r0, const HermitianMatrix& r1, double lambda, const HermitianMatrix& m0,
                  const HermitianMatrix& m1) {
  return lambda * r0.inner(m1) + (1.0 - lambda) * r1.inner(m0);
}

// Tr_K |lambda X0 - (1 - lambda) X1| computed from an eigendecomposition on
// K (x) H with the K index outermost.
double tester_residual_oracle(const HermitianMatrix& x0, const HermitianMatrix& x1, double lambda, int dk, int dh) {
  const CMatrix diff = lambda * x0.matrix() - (1.0 - lambda) * x1.matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(diff);
  const CMatrix absd = es.eigenvectors() * es.eigenvalues().cwiseAbs().asDiagonal() * es.eigenvectors().adjoint();
  CMatrix m = CMatrix::Zero(dh, dh);
  for (int k = 0; k < dk; ++k) m += absd.block(k * dh, k * dh, dh, dh);
  const double mean = m.trace().real() / dh;
  if (mean <= 1e-14) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es2(m - mean * CMatrix::Identity(dh, dh));
  return es2.eigenvalues().cwiseAbs().maxCoeff() / mean;
}

std::vector<std::vector<double>> random_table(int thetas, int decisions, oracles::Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> t(thetas, std::vector<double>(decisions));
  for (auto& row : t)
    for (auto& w : row) w = u(rng);
  return t;
}

}  // namespace

TEST_SUITE("decision-theory") {

TEST_CASE("experiments validate their members and prior") {
  const Section s = states_section(2);
  CHECK_NOTHROW(Experiment(s, {ket_proj({1, 0}), ket_proj({0, 1})}, {0.5, 0.5}));
  CHECK_THROWS_AS(Experiment(s, {ket_proj({1, 0}), ket_proj({0, 1})}, {0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(Experiment(s, {ket_proj({1, 0}), HermitianMatrix::identity(2)}, {0.5, 0.5}), ValidationError);
  CHECK_NOTHROW(GeneralizedPOVM(s, {HermitianMatrix::identity(2) / 2.0, HermitianMatrix::identity(2) / 2.0}));
  CHECK_THROWS_AS(GeneralizedPOVM(s, {HermitianMatrix::identity(2), HermitianMatrix::identity(2) / 2.0}),
                  ValidationError);
  const Section ch = channels_section(2, 2);
  const HermitianMatrix half = HermitianMatrix::identity(4) / 4.0;  // I (x) I/2, split in two
  CHECK_NOTHROW(GeneralizedPOVM(ch, {half, half}));
}

TEST_CASE("maximal payoff examples") {
  const Section s = states_section(2);
  const Experiment single(s, {ket_proj({1, 0})}, {1.0});
  CHECK(max_payoff(single, DecisionProblem::quantum({HermitianMatrix::identity(3)})).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  const Experiment ortho(s, {ket_proj({1, 0}), ket_proj({0, 1})}, {0.5, 0.5});
  CHECK(max_payoff(ortho, DecisionProblem::discrimination(2)).value == doctest::Approx(1.0).epsilon(1e-8));
  const Experiment plus(s, {ket_proj({1, 0}), ket_proj({kS, kS})}, {0.5, 0.5});
  const DecisionResult r = max_payoff(plus, DecisionProblem::discrimination(2));
  CHECK(r.value == doctest::Approx((1.0 + kS) / 2.0).epsilon(1e-8));
  REQUIRE(r.effects.size() == 2);
  CHECK(average_payoff(plus, DecisionProblem::discrimination(2), r.effects) == doctest::Approx(r.value).epsilon(1e-7));
  CHECK(average_payoff(plus, DecisionProblem::discrimination(2), r.procedure) ==
        doctest::Approx(r.value).epsilon(1e-7));
}

TEST_CASE("Bayes error and the closed form") {
  const Section s = states_section(2);
  const HermitianMatrix z0 = ket_proj({1, 0});
  const HermitianMatrix z1 = ket_proj({0, 1});
  const HermitianMatrix p = ket_proj({kS, kS});
  CHECK(bayes_error(s, z0, z0, 0.5).error == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(bayes_error(s, z0, z0, 0.3).error == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(std::abs(bayes_error(s, z0, z1, 0.5).error) < 1e-9);
  const double expected = (1.0 - kS) / 2.0;
  CHECK(bayes_error(s, z0, p, 0.5).error == doctest::Approx(expected).epsilon(1e-9));
  const TestResult h = helstrom(z0, p, 0.5);
  CHECK(h.error == doctest::Approx(expected).epsilon(1e-12));
  CHECK(povm_error(z0, p, 0.5, h.effects[0], h.effects[1]) == doctest::Approx(expected).epsilon(1e-12));

  oracles::Rng rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const HermitianMatrix r0 = oracles::random_density(3, rng);
    const HermitianMatrix r1 = oracles::random_density(3, rng);
    const double lambda = u(rng);
    const TestResult b = bayes_error(states_section(3), r0, r1, lambda);
    CHECK(b.error == doctest::Approx(helstrom(r0, r1, lambda).error).epsilon(1e-8));
    CHECK(b.error == doctest::Approx(bayes_error(states_section(3), r1, r0, 1.0 - lambda).error).epsilon(1e-8));
    CHECK(povm_error(r0, r1, lambda, b.effects[0], b.effects[1]) == doctest::Approx(b.error).epsilon(1e-7));
  }
}

TEST_CASE("Helstrom kernel goes to the second outcome") {
  const HermitianMatrix z0 = ket_proj({1, 0});
  const TestResult h = helstrom(z0, z0, 0.5);
  CHECK(h.effects[0].frobenius_norm() < 1e-12);
  CHECK((h.effects[1] - HermitianMatrix::identity(2)).frobenius_norm() < 1e-12);
}

TEST_CASE("multiple hypotheses") {
  const Section s = states_section(2);
  const HermitianMatrix z0 = ket_proj({1, 0});
  const HermitianMatrix p = ket_proj({kS, kS});
  CHECK(multi_hypothesis_error(s, {z0, p}, {0.4, 0.6}).error ==
        doctest::Approx(bayes_error(s, z0, p, 0.4).error).epsilon(1e-8));
  const Section s3 = states_section(3);
  std::vector<HermitianMatrix> basis;
  for (int i = 0; i < 3; ++i) {
    CVector v = CVector::Zero(3);
    v(i) = 1.0;
    basis.push_back(HermitianMatrix::projector(v));
  }
  CHECK(std::abs(multi_hypothesis_error(s3, basis, {0.2, 0.3, 0.5}).error) < 1e-8);

  // Qubit trine, checked against random POVMs built from rank-one effects.
  std::vector<HermitianMatrix> trine;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 3.0;
    trine.push_back(ket_proj({std::cos(a / 2.0), std::sin(a / 2.0)}));
  }
  const std::vector<double> uniform(3, 1.0 / 3.0);
  const TestResult t = multi_hypothesis_error(s, trine, uniform);
  oracles::Rng rng(72);
  double best = 1.0;
  for (int n = 0; n < 4000; ++n) {
    // M_d = S^{-1/2} v_d v_d^* S^{-1/2} for random vectors v_d.
    std::vector<HermitianMatrix> raw;
    HermitianMatrix sum = HermitianMatrix::zero(2);
    for (int d = 0; d < 3; ++d) {
      raw.push_back(HermitianMatrix::projector(oracles::random_pure(2, rng)));
      sum += raw.back();
    }
    const HermitianMatrix is = pinv_sqrt(sum);
    double success = 0.0;
    for (int d = 0; d < 3; ++d) success += uniform[d] * trine[d].inner(congruence(is.matrix(), raw[d]));
    best = std::min(best, 1.0 - success);
  }
  CHECK(t.error <= best + 1e-9);
  CHECK(t.error >= best - 0.02);
  double err = 0.0;
  for (int d = 0; d < 3; ++d) err += uniform[d] * (1.0 - trine[d].inner(t.effects[d]));
  CHECK(err == doctest::Approx(t.error).epsilon(1e-7));
}

TEST_CASE("loss and payoff are complementary") {
  oracles::Rng rng(73);
  for (int i = 0; i < 5; ++i) {
    const Section s = i % 2 == 0 ? states_section(2) : channels_section(2, 2);
    const auto fam = oracles::sample_section(s, 2, 80 + i).points;
    const Experiment e(s, fam, {0.3, 0.7});
    const DecisionProblem p = DecisionProblem::classical(random_table(2, 3, rng));
    const double payoff = max_payoff(e, p).value;
    const double loss = min_loss(e, p.complement()).value;
    CHECK(payoff + loss == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("certify_optimal") {
  const Section s = states_section(2);
  const HermitianMatrix z0 = ket_proj({1, 0});
  const HermitianMatrix z1 = ket_proj({0, 1});
  const HermitianMatrix p = ket_proj({kS, kS});
  const DecisionProblem delta = DecisionProblem::discrimination(2);
  const std::vector<HermitianMatrix> uniform{HermitianMatrix::identity(2) / 2.0, HermitianMatrix::identity(2) / 2.0};

  const Experiment plus(s, {z0, p}, {0.5, 0.5});
  const TestResult h = helstrom(z0, p, 0.5);
  const Certificate ok = certify_optimal(h.effects, plus, delta);
  CHECK(ok.feasible);
  CHECK(ok.witness_q.has_value());
  CHECK(ok.candidate_value == doctest::Approx(1.0 - h.error).epsilon(1e-9));

  const Experiment ortho(s, {z0, z1}, {0.5, 0.5});
  const Certificate bad = certify_optimal(uniform, ortho, delta);
  CHECK_FALSE(bad.feasible);
  CHECK(bad.slack == doctest::Approx(0.5).epsilon(1e-6));

  const Experiment same(s, {z0, z0}, {0.5, 0.5});
  CHECK(certify_optimal(uniform, same, delta).feasible);

  // Not a member: effects sum to 2I.
  CHECK_THROWS_AS(certify_optimal({HermitianMatrix::identity(2), HermitianMatrix::identity(2)}, plus, delta),
                  ValidationError);
}

TEST_CASE("optimizers certify on channel testers") {
  oracles::Rng rng(74);
  const Section ch = channels_section(2, 2);
  for (int i = 0; i < 3; ++i) {
    const HermitianMatrix x0 = oracles::random_channel_choi(2, 2, 2, rng);
    const HermitianMatrix x1 = oracles::random_channel_choi(2, 2, 2, rng);
    const TestResult b = bayes_error(ch, x0, x1, 0.5);
    const Experiment e(ch, {x0, x1}, {0.5, 0.5});
    CHECK(certify_optimal(b.effects, e, DecisionProblem::discrimination(2)).feasible);
    CHECK(GeneralizedPOVM(ch, b.effects, 1e-7).total().dim() == 4);
  }
}

TEST_CASE("POVM decomposition") {
  oracles::Rng rng(75);
  const HermitianMatrix m0 = oracles::random_density(2, rng) * 0.5;
  const HermitianMatrix m1 = HermitianMatrix::identity(2) - m0;
  const PovmDecomposition d = decompose_povm(GeneralizedPOVM(states_section(2), {m0, m1}));
  CHECK((d.c - HermitianMatrix::identity(2)).frobenius_norm() < 1e-10);
  CHECK((d.lambda[0] - m0).frobenius_norm() < 1e-10);

  // A tester on channels(2,2): effects sum to I (x) sigma with sigma of rank one.
  const Section ch = channels_section(2, 2);
  const HermitianMatrix sigma = ket_proj({1, 0});
  const HermitianMatrix total = tensor(HermitianMatrix::identity(2), sigma);
  const HermitianMatrix e0 = tensor(ket_proj({1, 0}), sigma);
  const PovmDecomposition t = decompose_povm(GeneralizedPOVM(ch, {e0, total - e0}));
  HermitianMatrix sum = HermitianMatrix::zero(4);
  for (const auto& l : t.lambda) sum += l;
  CHECK((sum - t.support).frobenius_norm() < 1e-9);
  CHECK(t.support.trace() == doctest::Approx(2.0));

  const PovmDecomposition single = decompose_povm(GeneralizedPOVM(states_section(2), {HermitianMatrix::identity(2)}));
  CHECK((single.lambda[0] - single.support).frobenius_norm() < 1e-10);
}

TEST_CASE("maximally entangled testers") {
  CMatrix z = CMatrix::Identity(2, 2);
  z(1, 1) = -1.0;
  const ChoiMatrix id = choi_of_unitary(CMatrix::Identity(2, 2));
  const ChoiMatrix zc = choi_of_unitary(z);
  const TesterCheck c = max_entangled_tester_exists(id, zc, 0.5);
  CHECK(c.exists);
  CHECK(c.residual < 1e-12);
  const TesterCheck zero = max_entangled_tester_exists(id, id, 0.5);
  CHECK(zero.exists);
  CHECK(zero.residual == 0.0);

  // Amplitude damping with gamma = 1/2.
  CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(0.5);
  k1(0, 1) = std::sqrt(0.5);
  const HermitianMatrix ad = oracles::choi_from_kraus({k0, k1});
  const TesterCheck a = max_entangled_tester_exists(id, ChoiMatrix(ad, 2, 2), 0.5);
  const double res = tester_residual_oracle(id.matrix(), ad, 0.5, 2, 2);
  CHECK(a.residual == doctest::Approx(res).epsilon(1e-9));
  CHECK(a.exists == (res <= 1e-7));

  CHECK_THROWS_AS(max_entangled_tester_exists(id, ChoiMatrix(HermitianMatrix::identity(4), 2, 2), 0.5),
                  ValidationError);
}

}  // TEST_SUITE
