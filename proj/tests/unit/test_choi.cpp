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

#include "doctest.h"
#include "gnorm/choi.hpp"
#include "gnorm/errors.hpp"
#include "oracles.hpp"

using namespace gnorm;

namespace {

CMatrix pauli_z() {
  CMatrix z = CMatrix::Identity(2, 2);
  z(1, 1) = -1.0;
  return z;
}

std::vector<CMatrix> random_kraus(int din, int dout, int k, oracles::Rng& rng) {
  const CMatrix u = oracles::random_unitary(dout * k, rng);
  std::vector<CMatrix> ops;
  for (int i = 0; i < k; ++i) ops.push_back(u.block(i * dout, 0, dout, din));
  return ops;
}

}  // namespace

TEST_SUITE("choi-calculus") {

TEST_CASE("Choi matrix of a Kraus map matches the vectorization oracle") {
  oracles::Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const auto ops = random_kraus(2, 3, 2, rng);
    const ChoiMatrix x = choi_of_kraus(KrausMap(ops));
    const HermitianMatrix ref = oracles::choi_from_kraus(ops);
    CHECK(x.dim_out() == 3);
    CHECK(x.dim_in() == 2);
    CHECK((x.matrix().matrix() - ref.matrix()).norm() < 1e-12);
    CHECK(is_channel(x));
  }
}

TEST_CASE("applying a Choi matrix reproduces the Kraus action") {
  oracles::Rng rng(22);
  const auto ops = random_kraus(3, 2, 3, rng);
  const KrausMap k(ops);
  const ChoiMatrix x = choi_of_kraus(k);
  for (int trial = 0; trial < 5; ++trial) {
    const HermitianMatrix a = oracles::random_hermitian(3, rng);
    CHECK((apply_choi(x, a).matrix() - k.apply(a).matrix()).norm() < 1e-12);
    const CMatrix g = oracles::random_unitary(3, rng) * Complex(0.3, 0.7);
    CHECK((apply_choi(x, g) - k.apply(g)).norm() < 1e-12);
  }
}

TEST_CASE("identity extension on a maximally entangled input returns the Choi matrix") {
  const ChoiMatrix x = choi_of_unitary(pauli_z());
  const HermitianMatrix out = apply_choi_tensor_id(x, 2, max_entangled_projector(2));
  CHECK((out.matrix() - x.matrix().matrix()).norm() < 1e-12);
  CHECK(out.subsystem_dims() == std::vector<int>{2, 2});
  CHECK_THROWS_AS(apply_choi_tensor_id(x, 3, max_entangled_projector(2)), ShapeError);
}

TEST_CASE("identity extension agrees with Kraus operators tensored with the identity") {
  oracles::Rng rng(23);
  const auto ops = random_kraus(2, 2, 2, rng);
  const ChoiMatrix x = choi_of_kraus(KrausMap(ops));
  const HermitianMatrix sigma = oracles::random_density(6, rng);  // H (x) L with L = 3
  CMatrix expected = CMatrix::Zero(6, 6);
  for (const auto& v : ops) {
    const CMatrix big = kron(v, CMatrix::Identity(3, 3));
    expected += big * sigma.matrix() * big.adjoint();
  }
  CHECK((apply_choi_tensor_id(x, 3, sigma).matrix() - expected).norm() < 1e-12);
}

TEST_CASE("maximally entangled objects") {
  const CVector v = max_entangled_vector(3);
  CHECK(v.squaredNorm() == doctest::Approx(3.0));
  CHECK(max_entangled_state(3).trace() == doctest::Approx(1.0));
  CHECK(max_entangled_projector(3).trace() == doctest::Approx(3.0));
  CHECK(max_eigenvalue(max_entangled_state(2)) == doctest::Approx(1.0));
}

TEST_CASE("is_channel rejects non trace-preserving maps") {
  const ChoiMatrix id = choi_of_unitary(CMatrix::Identity(2, 2));
  CHECK(is_channel(id));
  CHECK_FALSE(is_channel(ChoiMatrix(id.matrix() * 0.5, 2, 2)));
  CHECK_FALSE(is_channel(ChoiMatrix(id.matrix() - choi_of_unitary(pauli_z()).matrix(), 2, 2)));
  CHECK_THROWS_AS(ChoiMatrix(HermitianMatrix::identity(4), 3, 2), ShapeError);
}

}  // TEST_SUITE
