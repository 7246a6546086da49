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

#include <vector>

#include "gnorm/hermitian.hpp"

namespace gnorm {

/// Choi matrix X = (Phi (x) id)(Psi) of a map Phi: B(H) -> B(K), living on
/// K (x) H with layout {dim_out, dim_in}. Psi = |psi><psi| with the
/// unnormalized |psi> = sum_i |i>|i>.
class ChoiMatrix {
 public:
  ChoiMatrix() = default;
  /// `x` must be (dim_out * dim_in)-dimensional; its layout is overwritten.
  ChoiMatrix(HermitianMatrix x, int dim_out, int dim_in);
  /// Takes the layout from `x`, which must have exactly two subsystems.
  explicit ChoiMatrix(HermitianMatrix x);

  const HermitianMatrix& matrix() const { return x_; }
  int dim_in() const { return x_.subsystem_dims()[1]; }
  int dim_out() const { return x_.subsystem_dims()[0]; }

 private:
  HermitianMatrix x_;
};

/// Kraus representation a -> sum_i V_i a V_i*, each V_i is dim_out x dim_in.
class KrausMap {
 public:
  explicit KrausMap(std::vector<CMatrix> operators);

  const std::vector<CMatrix>& operators() const { return ops_; }
  int dim_in() const { return static_cast<int>(ops_.front().cols()); }
  int dim_out() const { return static_cast<int>(ops_.front().rows()); }

  CMatrix apply(const CMatrix& a) const;
  HermitianMatrix apply(const HermitianMatrix& a) const;

 private:
  std::vector<CMatrix> ops_;
};

ChoiMatrix choi_of_kraus(const KrausMap& m);
ChoiMatrix choi_of_unitary(const CMatrix& u);

/// Phi_X(a) = Tr_H[(I_K (x) a^T) X].
HermitianMatrix apply_choi(const ChoiMatrix& x, const HermitianMatrix& a);
/// Linear extension of Phi_X to arbitrary (non-hermitian) a.
CMatrix apply_choi(const ChoiMatrix& x, const CMatrix& a);

/// (Phi_X (x) id_L)(sigma) for sigma on H (x) L; the result lives on K (x) L.
HermitianMatrix apply_choi_tensor_id(const ChoiMatrix& x, int ancilla_dim, const HermitianMatrix& sigma);

/// sum_i |i>|i>, norm^2 = d.
CVector max_entangled_vector(int d);
/// Psi / d, a pure state on C^d (x) C^d.
HermitianMatrix max_entangled_state(int d);
/// Psi itself (unnormalized), layout {d, d}.
HermitianMatrix max_entangled_projector(int d);

/// X >= 0 and Tr_K X = I_H within tol.
bool is_channel(const ChoiMatrix& x, double tol = 1e-9);

}  // namespace gnorm
