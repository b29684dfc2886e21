// Copyright 2026 The admm-forge Authors
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

#include "admm_forge/prox_fn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace admmforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSingularCutoff = 1e-10;

struct EqualityProjection {
  Matrix pinv;
  Matrix null_basis;
  Vector particular;
};

// Pseudo-inverse projection data for {x : C x = d}, singular values below
// 1e-10·σ_max treated as zero.
EqualityProjection build_projection(const Matrix& C, const Vector& d) {
  Eigen::JacobiSVD<Matrix> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double smax = s.size() > 0 ? s.maxCoeff() : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > kSingularCutoff * smax) ++rank;
  }
  const Matrix& U = svd.matrixU();
  const Matrix& V = svd.matrixV();
  EqualityProjection p;
  p.pinv = Matrix::Zero(C.cols(), C.rows());
  for (int i = 0; i < rank; ++i) {
    p.pinv += (V.col(i) / s[i]) * U.col(i).transpose();
  }
  p.null_basis = V.rightCols(C.cols() - rank);
  p.particular = p.pinv * d;
  const double resid = (C * p.particular - d).cwiseAbs().maxCoeff();
  if (resid > kIndicatorTolerance * std::max(1.0, d.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("ProxFn::affine_subspace: inconsistent system C x = d");
  }
  return p;
}

}  // namespace

ProxFn ProxFn::zero(int dim) {
  if (dim <= 0) throw std::invalid_argument("ProxFn: dimension must be positive");
  ProxFn g;
  g.kind_ = Kind::Zero;
  g.dim_ = dim;
  return g;
}

ProxFn ProxFn::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw std::invalid_argument("ProxFn::box: bound vectors must match and be non-empty");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i]) {
      throw std::invalid_argument("ProxFn::box: empty or invalid interval at index " +
                                  std::to_string(i));
    }
  }
  ProxFn g;
  g.kind_ = Kind::Box;
  g.dim_ = static_cast<int>(lower.size());
  g.lower_ = std::move(lower);
  g.upper_ = std::move(upper);
  return g;
}

ProxFn ProxFn::affine_subspace(Matrix C, Vector d) {
  if (C.rows() != d.size() || C.rows() == 0 || C.cols() == 0) {
    throw std::invalid_argument("ProxFn::affine_subspace: C rows must match d");
  }
  if (!C.allFinite() || !d.allFinite()) {
    throw std::invalid_argument("ProxFn::affine_subspace: non-finite data");
  }
  auto proj = build_projection(C, d);
  ProxFn g;
  g.kind_ = Kind::AffineSubspace;
  g.dim_ = static_cast<int>(C.cols());
  g.mat_ = std::move(C);
  g.rhs_ = std::move(d);
  g.pinv_ = std::move(proj.pinv);
  g.null_basis_ = std::move(proj.null_basis);
  g.particular_ = std::move(proj.particular);
  return g;
}

ProxFn ProxFn::sum_to_constant(Vector target, int arity) {
  if (arity < 1 || target.size() == 0) {
    throw std::invalid_argument("ProxFn::sum_to_constant: arity and target must be positive");
  }
  const auto m = target.size();
  ProxFn g;
  g.kind_ = Kind::SumToConstant;
  g.dim_ = static_cast<int>(m * arity);
  g.arity_ = arity;
  g.rhs_ = target;
  g.mat_ = Matrix::Zero(m, g.dim_);
  for (int k = 0; k < arity; ++k) g.mat_.middleCols(k * m, m).setIdentity();
  // CCᵀ = arity·I, so pinv(C) = Cᵀ / arity.
  g.pinv_ = g.mat_.transpose() / arity;
  g.particular_ = g.pinv_ * target;
  // Orthonormal basis of {Σ_k y_k = 0}: per coordinate, Helmert contrasts
  // across the arity copies.
  g.null_basis_ = Matrix::Zero(g.dim_, m * (arity - 1));
  for (Eigen::Index j = 0; j < m; ++j) {
    for (int k = 1; k < arity; ++k) {
      const double norm = std::sqrt(static_cast<double>(k * (k + 1)));
      const Eigen::Index col = j * (arity - 1) + (k - 1);
      for (int t = 0; t < k; ++t) g.null_basis_(t * m + j, col) = 1.0 / norm;
      g.null_basis_(k * m + j, col) = -static_cast<double>(k) / norm;
    }
  }
  return g;
}

ProxFn ProxFn::l1(int dim, double weight) {
  if (dim <= 0 || !(weight >= 0.0)) {
    throw std::invalid_argument("ProxFn::l1: need positive dimension and weight >= 0");
  }
  ProxFn g;
  g.kind_ = Kind::L1;
  g.dim_ = dim;
  g.weight_ = weight;
  return g;
}

Vector ProxFn::prox(const Vector& z, double gamma) const {
  if (!(gamma > 0.0)) throw std::invalid_argument("ProxFn::prox: gamma must be positive");
  if (z.size() != dim_) throw std::invalid_argument("ProxFn::prox: dimension mismatch");
  switch (kind_) {
    case Kind::Zero: return z;
    case Kind::Box: return z.cwiseMax(lower_).cwiseMin(upper_);
    case Kind::AffineSubspace: return z - pinv_ * (mat_ * z - rhs_);
    case Kind::SumToConstant: {
      const auto m = rhs_.size();
      Vector sum = -rhs_;
      for (int k = 0; k < arity_; ++k) sum += z.segment(k * m, m);
      Vector out = z;
      for (int k = 0; k < arity_; ++k) out.segment(k * m, m) -= sum / arity_;
      return out;
    }
    case Kind::L1: {
      const double t = gamma * weight_;
      return z.unaryExpr([t](double v) {
        return v > t ? v - t : (v < -t ? v + t : 0.0);
      });
    }
  }
  return z;
}

double ProxFn::value(const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("ProxFn::value: dimension mismatch");
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Box:
      return ((x.array() >= lower_.array()) && (x.array() <= upper_.array())).all() ? 0.0 : kInf;
    case Kind::AffineSubspace:
    case Kind::SumToConstant: {
      const double viol = (mat_ * x - rhs_).cwiseAbs().maxCoeff();
      return viol <= kIndicatorTolerance ? 0.0 : kInf;
    }
    case Kind::L1: return weight_ * x.lpNorm<1>();
  }
  return 0.0;
}

const Matrix& ProxFn::null_space_basis() const {
  if (kind_ != Kind::AffineSubspace && kind_ != Kind::SumToConstant) {
    throw std::logic_error("ProxFn::null_space_basis: not an equality set");
  }
  return null_basis_;
}

const Vector& ProxFn::particular_solution() const {
  if (kind_ != Kind::AffineSubspace && kind_ != Kind::SumToConstant) {
    throw std::logic_error("ProxFn::particular_solution: not an equality set");
  }
  return particular_;
}

}  // namespace admmforge
