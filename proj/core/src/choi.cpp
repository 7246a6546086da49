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

#include "gnorm/choi.hpp"

#include <sstream>

#include "gnorm/errors.hpp"

namespace gnorm {

ChoiMatrix::ChoiMatrix(HermitianMatrix x, int dim_out, int dim_in) {
  if (dim_out < 1 || dim_in < 1) throw ShapeError("Choi matrix dimensions must be positive");
  if (x.dim() != dim_out * dim_in) {
    std::ostringstream os;
    os << "Choi matrix of dimension " << x.dim() << " does not match " << dim_out << " x " << dim_in;
    throw ShapeError(os.str());
  }
  x_ = x.with_subsystem_dims({dim_out, dim_in});
}

ChoiMatrix::ChoiMatrix(HermitianMatrix x) {
  if (x.subsystem_dims().size() != 2) {
    throw ShapeError("Choi matrix needs a two-factor layout {dim_out, dim_in}");
  }
  x_ = std::move(x);
}

KrausMap::KrausMap(std::vector<CMatrix> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw ShapeError("Kraus map needs at least one operator");
  for (const auto& v : ops_) {
    if (v.rows() != ops_.front().rows() || v.cols() != ops_.front().cols() || v.size() == 0) {
      throw ShapeError("Kraus operators have inconsistent shapes");
    }
  }
}

CMatrix KrausMap::apply(const CMatrix& a) const {
  if (a.rows() != dim_in() || a.cols() != dim_in()) throw ShapeError("Kraus map input dimension mismatch");
  CMatrix out = CMatrix::Zero(dim_out(), dim_out());
  for (const auto& v : ops_) out += v * a * v.adjoint();
  return out;
}

HermitianMatrix KrausMap::apply(const HermitianMatrix& a) const { return HermitianMatrix(apply(a.matrix())); }

CVector max_entangled_vector(int d) {
  if (d < 1) throw ShapeError("max_entangled_vector: dimension must be positive");
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return v;
}

HermitianMatrix max_entangled_projector(int d) {
  return HermitianMatrix::projector(max_entangled_vector(d)).with_subsystem_dims({d, d});
}

HermitianMatrix max_entangled_state(int d) { return max_entangled_projector(d) / static_cast<double>(d); }

ChoiMatrix choi_of_kraus(const KrausMap& m) {
  const int din = m.dim_in();
  const int dout = m.dim_out();
  CMatrix x = CMatrix::Zero(dout * din, dout * din);
  for (const auto& v : m.operators()) {
    // |v> = sum_j V|j> (x) |j>
    CVector vec = CVector::Zero(dout * din);
    for (int j = 0; j < din; ++j) {
      for (int k = 0; k < dout; ++k) vec(k * din + j) = v(k, j);
    }
    x += vec * vec.adjoint();
  }
  return ChoiMatrix(HermitianMatrix(std::move(x)), dout, din);
}

ChoiMatrix choi_of_unitary(const CMatrix& u) { return choi_of_kraus(KrausMap({u})); }

CMatrix apply_choi(const ChoiMatrix& x, const CMatrix& a) {
  const int din = x.dim_in();
  const int dout = x.dim_out();
  if (a.rows() != din || a.cols() != din) {
    std::ostringstream os;
    os << "apply_choi: input of dimension " << a.rows() << " for a map on dimension " << din;
    throw ShapeError(os.str());
  }
  const CMatrix& m = x.matrix().matrix();
  CMatrix out = CMatrix::Zero(dout, dout);
  // sum_{h,h'} a(h', h) X((k, h'), (k2, h))
  for (int k = 0; k < dout; ++k) {
    for (int k2 = 0; k2 < dout; ++k2) {
      Complex sum = 0.0;
      for (int h = 0; h < din; ++h) {
        for (int hp = 0; hp < din; ++hp) sum += a(hp, h) * m(k * din + hp, k2 * din + h);
      }
      out(k, k2) = sum;
    }
  }
  return out;
}

HermitianMatrix apply_choi(const ChoiMatrix& x, const HermitianMatrix& a) {
  return HermitianMatrix(apply_choi(x, a.matrix()));
}

HermitianMatrix apply_choi_tensor_id(const ChoiMatrix& x, int ancilla_dim, const HermitianMatrix& sigma) {
  const int din = x.dim_in();
  const int dout = x.dim_out();
  const int l = ancilla_dim;
  if (l < 1 || sigma.dim() != din * l) {
    std::ostringstream os;
    os << "apply_choi_tensor_id: state of dimension " << sigma.dim() << " is not " << din << " x " << l;
    throw ShapeError(os.str());
  }
  // sigma = sum_{l1,l2} sigma_{l1 l2} (x) |l1><l2|, image = sum Phi(sigma_{l1 l2}) (x) |l1><l2|.
  CMatrix out = CMatrix::Zero(dout * l, dout * l);
  CMatrix block(din, din);
  for (int l1 = 0; l1 < l; ++l1) {
    for (int l2 = 0; l2 < l; ++l2) {
      for (int h = 0; h < din; ++h) {
        for (int h2 = 0; h2 < din; ++h2) block(h, h2) = sigma(h * l + l1, h2 * l + l2);
      }
      const CMatrix image = apply_choi(x, block);
      for (int k = 0; k < dout; ++k) {
        for (int k2 = 0; k2 < dout; ++k2) out(k * l + l1, k2 * l + l2) = image(k, k2);
      }
    }
  }
  return HermitianMatrix(std::move(out), {dout, l});
}

bool is_channel(const ChoiMatrix& x, double tol) {
  if (!psd_check(x.matrix(), tol)) return false;
  const HermitianMatrix reduced = partial_trace(x.matrix(), 0);
  const double dev = (reduced - HermitianMatrix::identity(x.dim_in())).max_abs_entry();
  return dev <= tol * std::max(1.0, static_cast<double>(x.dim_in()));
}

}  // namespace gnorm
