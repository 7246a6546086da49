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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/Eigenvalues>

namespace gnorm::oracles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

Eigen::SelfAdjointEigenSolver<CMatrix> spectrum(const HermitianMatrix& x) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(x.matrix());
}

// f applied to the eigenvalues of a PSD matrix; eigenvalues at or below
// cut are mapped to zero.
CMatrix psd_function(const HermitianMatrix& x, double (*f)(double), double cut) {
  const auto es = spectrum(x);
  RVector v = es.eigenvalues();
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = v(i) > cut ? f(v(i)) : 0.0;
  return es.eigenvectors() * v.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double inv_sqrt(double v) { return 1.0 / std::sqrt(v); }
double sqrt_fn(double v) { return std::sqrt(v); }

}  // namespace

HermitianMatrix random_hermitian(int d, Rng& rng) {
  const CMatrix g = ginibre(d, d, rng);
  return HermitianMatrix(CMatrix(0.5 * (g + g.adjoint())));
}

HermitianMatrix random_density(int d, Rng& rng, int rank) {
  const CMatrix g = ginibre(d, rank > 0 ? rank : d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return HermitianMatrix(rho);
}

CMatrix random_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(ginibre(d, d, rng));
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR();
  for (int i = 0; i < d; ++i) {
    const Complex ph = r(i, i) / std::abs(r(i, i));
    q.col(i) *= ph;
  }
  return q;
}

CVector random_pure(int d, Rng& rng) {
  CVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

HermitianMatrix choi_from_kraus(const std::vector<CMatrix>& kraus) {
  const int dout = static_cast<int>(kraus.front().rows());
  const int din = static_cast<int>(kraus.front().cols());
  CMatrix x = CMatrix::Zero(dout * din, dout * din);
  for (const auto& v : kraus) {
    CVector vec(dout * din);
    for (int k = 0; k < dout; ++k) {
      for (int h = 0; h < din; ++h) vec(k * din + h) = v(k, h);
    }
    x += vec * vec.adjoint();
  }
  return HermitianMatrix(x, {dout, din});
}

HermitianMatrix random_channel_choi(int dim_in, int dim_out, int kraus, Rng& rng) {
  // Isometry C^{dim_in} -> C^{dim_out * kraus} from a Haar unitary; an
  // isometry needs at least ceil(dim_in / dim_out) Kraus operators.
  kraus = std::max(kraus, (dim_in + dim_out - 1) / dim_out);
  const CMatrix u = random_unitary(dim_out * kraus, rng);
  std::vector<CMatrix> ops;
  for (int i = 0; i < kraus; ++i) ops.push_back(u.block(i * dim_out, 0, dim_out, dim_in));
  return choi_from_kraus(ops);
}

SampleSet sample_section(const Section& section, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const HermitianMatrix& b0 = section.reference_point();
  const HermitianMatrix& nrm = section.normalizer();
  const int r = section.dim();
  const CMatrix m = psd_function(b0, &inv_sqrt, 0.0);
  SampleSet out;
  out.seed = seed;
  const auto& span = section.span_basis();
  for (int s = 0; s < n; ++s) {
    CMatrix h = CMatrix::Zero(r, r);
    for (const auto& j : span) h += normal(rng) * j.matrix();
    // Stay on the hyperplane Tr(h n) = 0.
    const double along = (h.cwiseProduct(nrm.matrix().conjugate())).sum().real();
    h -= along * b0.matrix();
    const HermitianMatrix hh(h);
    if (hh.frobenius_norm() < 1e-12) {
      out.points.push_back(section.expand(b0));
      continue;
    }
    // Largest t with b0 + t h >= 0, from the spectrum of m h m.
    const auto es = spectrum(HermitianMatrix(CMatrix(m * h * m)));
    const double lo = es.eigenvalues()(0);
    if (lo >= 0.0) continue;  // unbounded direction: cannot happen for a base
    const double tmax = -1.0 / lo;
    // Bias the mixing weight toward the boundary.
    const double w = std::pow(unit(rng), 0.25);
    const HermitianMatrix p(CMatrix(b0.matrix() + (w * tmax) * h));
    out.points.push_back(section.expand(p));
  }
  return out;
}

double trace_norm_eig(const HermitianMatrix& x) { return spectrum(x).eigenvalues().cwiseAbs().sum(); }

double norm_lower_bound(const HermitianMatrix& x, const SampleSet& dual_samples) {
  double best = 0.0;
  for (const auto& s : dual_samples.points) {
    const CMatrix c = psd_function(s, &sqrt_fn, 0.0);
    best = std::max(best, trace_norm_eig(HermitianMatrix(CMatrix(c * x.matrix() * c))));
  }
  return best;
}

double norm_upper_bound(const HermitianMatrix& x, const SampleSet& samples) {
  double best = kInf;
  for (const auto& b : samples.points) {
    const auto es = spectrum(b);
    const double top = std::max(1.0, es.eigenvalues().maxCoeff());
    const double cut = 1e-10 * top;
    RVector v = es.eigenvalues();
    CMatrix p = CMatrix::Zero(b.dim(), b.dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v(i) > cut) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      v(i) = v(i) > cut ? 1.0 / std::sqrt(v(i)) : 0.0;
    }
    const CMatrix outside = x.matrix() - p * x.matrix() * p;
    if (outside.norm() > 1e-9 * (1.0 + x.matrix().norm())) continue;
    const CMatrix w = es.eigenvectors() * v.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    const auto ex = spectrum(HermitianMatrix(CMatrix(w * x.matrix() * w)));
    best = std::min(best, ex.eigenvalues().cwiseAbs().maxCoeff());
  }
  return best;
}

double pure_input_lower_bound(const HermitianMatrix& x, int dim_in, int dim_out, int samples, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix id_out = CMatrix::Identity(dim_out, dim_out);
  auto value = [&](const CMatrix& c) {
    // (I_K (x) C) X (I_K (x) C)^*, psi_{h,l} = C(l, h).
    CMatrix k(dim_out * dim_in, dim_out * dim_in);
    for (int a = 0; a < dim_out; ++a) {
      for (int b = 0; b < dim_out; ++b) k.block(a * dim_in, b * dim_in, dim_in, dim_in) = id_out(a, b) * c;
    }
    return trace_norm_eig(HermitianMatrix(CMatrix(k * x.matrix() * k.adjoint())));
  };
  double best = value(CMatrix::Identity(dim_in, dim_in) / std::sqrt(static_cast<double>(dim_in)));
  for (int s = 0; s < samples; ++s) {
    CMatrix c = ginibre(dim_in, dim_in, rng);
    c /= c.norm();
    best = std::max(best, value(c));
  }
  return best;
}

double grid_hmin(const HermitianMatrix& sigma, int resolution, int threads) {
  const int dk = sigma.dim() / 2;
  const int n = sigma.dim();
  const int pts = resolution + 1;
  const CMatrix& s = sigma.matrix();
  auto lambda_at = [&](double rx, double ry, double rz) -> double {
    const double len = std::sqrt(rx * rx + ry * ry + rz * rz);
    if (len > 1.0 + 1e-12) return kInf;
    // rho = (I + r.sigma) / 2; w = rho^{-1/2} on supp(rho).
    Eigen::Matrix2cd w;
    if (len > 1.0 - 1e-12) {
      const double ux = rx / len, uy = ry / len, uz = rz / len;
      Eigen::Matrix2cd p;
      p << 0.5 * (1 + uz), Complex(0.5 * ux, -0.5 * uy), Complex(0.5 * ux, 0.5 * uy), 0.5 * (1 - uz);
      w = p;  // the pure state is its own pseudo-inverse square root
    } else {
      const double fp = 1.0 / std::sqrt(0.5 * (1 + len));
      const double fm = 1.0 / std::sqrt(0.5 * (1 - len));
      const double a = 0.5 * (fp + fm);
      const double b = len > 0 ? 0.5 * (fp - fm) / len : 0.0;
      w << a + b * rz, Complex(b * rx, -b * ry), Complex(b * rx, b * ry), a - b * rz;
    }
    CMatrix big = CMatrix::Zero(n, n);
    for (int k = 0; k < dk; ++k) big.block(2 * k, 2 * k, 2, 2) = w;
    if (len > 1.0 - 1e-12) {
      const CMatrix outside = s - big * s * big;
      if (outside.norm() > 1e-9 * (1.0 + s.norm())) return kInf;
    }
    const CMatrix t = big * s * big;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(t, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  };
  const int workers = std::max(1, threads);
  std::vector<double> best(static_cast<size_t>(workers), kInf);
  auto run = [&](int id) {
    for (int i = id; i < pts; i += workers) {
      const double rx = -1.0 + 2.0 * i / resolution;
      for (int j = 0; j < pts; ++j) {
        const double ry = -1.0 + 2.0 * j / resolution;
        if (rx * rx + ry * ry > 1.0 + 1e-12) continue;
        for (int k = 0; k < pts; ++k) {
          const double rz = -1.0 + 2.0 * k / resolution;
          best[id] = std::min(best[id], lambda_at(rx, ry, rz));
        }
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int id = 0; id < workers; ++id) pool.emplace_back(run, id);
    for (auto& t : pool) t.join();
  }
  const double lam = *std::min_element(best.begin(), best.end());
  return -std::log2(lam);
}

}  // namespace gnorm::oracles
