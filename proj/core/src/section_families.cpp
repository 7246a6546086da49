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
#include <sstream>

#include "gnorm/errors.hpp"
#include "gnorm/section.hpp"
#include "section_internal.hpp"

namespace gnorm {

namespace {

std::vector<int> layout_of(const Section& s) {
  if (!s.subsystem_dims().empty()) return s.subsystem_dims();
  return {s.ambient_dim()};
}

std::vector<int> prepend(int d, const std::vector<int>& rest) {
  std::vector<int> out{d};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

void require_faithful(const Section& base, const char* what) {
  if (base.restricted()) {
    std::ostringstream os;
    os << what << ": base section " << base.label().to_string() << " is restricted to a proper support";
    throw DomainError(os.str());
  }
}

// Orthonormal basis of J ∩ f^⊥ for the base section.
std::vector<HermitianMatrix> span_without_functional(const Section& base) {
  const int d = base.dim();
  const RMatrix cols = detail::to_columns(base.span_basis(), d);
  return detail::from_columns(detail::span_without(cols, to_real(base.functional())), d);
}

}  // namespace

Section states_section(int d) {
  if (d < 1) throw ShapeError("states section: dimension must be positive");
  Section::Parts parts;
  parts.ambient_dim = d;
  parts.span_basis = detail::from_columns(RMatrix::Identity(d * d, d * d), d);
  parts.normalizer = HermitianMatrix::identity(d);
  parts.reference_point = HermitianMatrix::identity(d) / static_cast<double>(d);
  parts.label = {SectionKind::states, {d}, ""};
  return Section(std::move(parts));
}

Section singleton_section(const HermitianMatrix& b) {
  if (!psd_check(b)) throw DomainError("singleton section: element is not positive semidefinite");
  if (b.max_abs_entry() == 0.0) throw DomainError("singleton section: element is zero");
  const CMatrix v = support_isometry(b);
  const int r = static_cast<int>(v.cols());
  Section::Parts parts;
  parts.ambient_dim = b.dim();
  HermitianMatrix bc = b;
  if (r < b.dim()) {
    bc = HermitianMatrix(v.adjoint() * b.matrix() * v);
    parts.support = v;
  } else {
    parts.subsystem_dims = b.subsystem_dims();
    bc = b.with_subsystem_dims({});
  }
  parts.span_basis = {bc / bc.frobenius_norm()};
  parts.normalizer = pinv(bc) / static_cast<double>(r);
  parts.reference_point = bc;
  parts.label = {SectionKind::singleton, {}, ""};
  return Section::from_span(std::move(parts));
}

Section generalized_section(const Section& base, int dim_out) {
  require_faithful(base, "generalized section");
  if (dim_out < 1) throw ShapeError("generalized section: output dimension must be positive");
  const HermitianMatrix id_out = HermitianMatrix::identity(dim_out);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim_out));
  Section::Parts parts;
  parts.ambient_dim = dim_out * base.dim();
  parts.subsystem_dims = prepend(dim_out, layout_of(base));
  for (const auto& w : span_without_functional(base)) {
    parts.complement_basis.push_back(tensor(id_out, transpose_in_basis(w)) * scale);
  }
  parts.normalizer = tensor(id_out, transpose_in_basis(base.reference_point()));
  parts.reference_point = tensor(id_out / static_cast<double>(dim_out), transpose_in_basis(base.normalizer()));
  parts.label = {SectionKind::generalized, {dim_out}, base.label().to_string()};
  return Section::from_complement(std::move(parts));
}

Section channels_section(int dim_in, int dim_out) {
  Section s = generalized_section(states_section(dim_in), dim_out);
  Section::Parts parts{s.ambient_dim(), s.subsystem_dims(), std::nullopt, s.span_basis(), s.complement_basis(),
                       s.normalizer(), s.reference_point(), {SectionKind::channels, {dim_in, dim_out}, ""}};
  return Section(std::move(parts));
}

Section comb_section(const std::vector<int>& dims) {
  if (dims.size() < 2) throw ShapeError("comb section: needs at least two systems");
  for (int d : dims) {
    if (d < 1) throw ShapeError("comb section: dimensions must be positive");
  }
  Section s = generalized_section(states_section(dims[0]), dims[1]);
  for (size_t i = 2; i < dims.size(); ++i) s = generalized_section(s, dims[i]);
  Section::Parts parts{s.ambient_dim(), s.subsystem_dims(), std::nullopt, s.span_basis(), s.complement_basis(),
                       s.normalizer(), s.reference_point(), {SectionKind::combs, dims, ""}};
  return Section(std::move(parts));
}

Section povm_section(const Section& base, int outcomes) {
  require_faithful(base, "povm section");
  if (outcomes < 1) throw ShapeError("povm section: number of outcomes must be positive");
  const int d = base.dim();
  const int n = outcomes * d;
  const double r2 = 1.0 / std::sqrt(2.0);
  Section::Parts parts;
  parts.ambient_dim = n;
  parts.subsystem_dims = prepend(outcomes, layout_of(base));
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (p / d == q / d) continue;
      CMatrix re = CMatrix::Zero(n, n);
      re(p, q) = r2;
      re(q, p) = r2;
      parts.complement_basis.emplace_back(std::move(re));
      CMatrix im = CMatrix::Zero(n, n);
      im(p, q) = Complex(0.0, r2);
      im(q, p) = Complex(0.0, -r2);
      parts.complement_basis.emplace_back(std::move(im));
    }
  }
  const HermitianMatrix id = HermitianMatrix::identity(outcomes);
  const double scale = 1.0 / std::sqrt(static_cast<double>(outcomes));
  for (const auto& w : span_without_functional(base)) {
    parts.complement_basis.push_back(tensor(id, transpose_in_basis(w)) * scale);
  }
  parts.normalizer = tensor(id, transpose_in_basis(base.reference_point()));
  parts.reference_point = tensor(id / static_cast<double>(outcomes), transpose_in_basis(base.normalizer()));
  parts.label = {SectionKind::povm, {outcomes}, base.label().to_string()};
  return Section::from_complement(std::move(parts));
}

Section identity_tensor_section(const Section& base, int k) {
  require_faithful(base, "identity tensor section");
  if (k < 1) throw ShapeError("identity tensor section: multiplicity must be positive");
  const HermitianMatrix id = HermitianMatrix::identity(k);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  Section::Parts parts;
  parts.ambient_dim = k * base.dim();
  parts.subsystem_dims = prepend(k, layout_of(base));
  for (const auto& j : base.span_basis()) parts.span_basis.push_back(tensor(id, j) * scale);
  parts.normalizer = tensor(id / static_cast<double>(k), base.normalizer());
  parts.reference_point = tensor(id, base.reference_point());
  parts.label = {SectionKind::identity_tensor, {k}, base.label().to_string()};
  return Section::from_span(std::move(parts));
}

Section dual_section(const Section& base) {
  Section::Parts parts;
  parts.ambient_dim = base.ambient_dim();
  parts.subsystem_dims = base.subsystem_dims();
  if (base.restricted()) parts.support = base.support();
  const HermitianMatrix f = base.functional();
  parts.span_basis = {f / f.frobenius_norm()};
  for (const auto& k : base.complement_basis()) parts.span_basis.push_back(k);
  parts.complement_basis = span_without_functional(base);
  parts.normalizer = base.reference_point();
  parts.reference_point = base.normalizer();
  parts.label = {SectionKind::dual, {}, base.label().to_string()};
  return Section(std::move(parts));
}

}  // namespace gnorm
