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

#include "admm_forge/smooth_fn.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace admmforge {

SmoothFn SmoothFn::zero(int dim) {
  if (dim <= 0) throw std::invalid_argument("SmoothFn: dimension must be positive");
  SmoothFn f;
  f.kind_ = Kind::Zero;
  f.dim_ = dim;
  return f;
}

SmoothFn SmoothFn::linear(Vector q) {
  if (q.size() == 0) throw std::invalid_argument("SmoothFn: empty linear term");
  SmoothFn f;
  f.kind_ = Kind::Linear;
  f.dim_ = static_cast<int>(q.size());
  f.vec_ = std::move(q);
  return f;
}

SmoothFn SmoothFn::quadratic(Matrix P, Vector q) {
  if (P.rows() != P.cols() || P.rows() != q.size() || q.size() == 0) {
    throw std::invalid_argument("SmoothFn::quadratic: P must be square and match q");
  }
  if (!P.allFinite() || !q.allFinite()) {
    throw std::invalid_argument("SmoothFn::quadratic: non-finite data");
  }
  const double asym = (P - P.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, P.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("SmoothFn::quadratic: P is not symmetric");
  }
  const Matrix sym = 0.5 * (P + P.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("SmoothFn::quadratic: P is not positive semidefinite");
  }
  SmoothFn f;
  f.kind_ = Kind::Quadratic;
  f.dim_ = static_cast<int>(q.size());
  f.mat_ = sym;
  f.vec_ = std::move(q);
  f.lipschitz_ = std::max(0.0, power_iteration_max_eigenvalue(f.mat_));
  return f;
}

SmoothFn SmoothFn::least_squares(Matrix Q, Vector q) {
  if (Q.rows() != q.size() || Q.cols() == 0 || Q.rows() == 0) {
    throw std::invalid_argument("SmoothFn::least_squares: Q rows must match q");
  }
  SmoothFn f;
  f.kind_ = Kind::LeastSquares;
  f.dim_ = static_cast<int>(Q.cols());
  f.lipschitz_ = 2.0 * power_iteration_max_eigenvalue(Q.transpose() * Q);
  f.mat_ = std::move(Q);
  f.vec_ = std::move(q);
  return f;
}

SmoothFn SmoothFn::with_lipschitz_bound(double l) const {
  if (!(l >= 0.0)) throw std::invalid_argument("SmoothFn: lipschitz bound must be >= 0");
  SmoothFn f = *this;
  f.lipschitz_ = l;
  return f;
}

double SmoothFn::value(const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("SmoothFn::value: dimension mismatch");
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return vec_.dot(x);
    case Kind::Quadratic: return 0.5 * x.dot(mat_ * x) + vec_.dot(x);
    case Kind::LeastSquares: return (mat_ * x - vec_).squaredNorm();
  }
  return 0.0;
}

Vector SmoothFn::gradient(const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("SmoothFn::gradient: dimension mismatch");
  switch (kind_) {
    case Kind::Zero: return Vector::Zero(dim_);
    case Kind::Linear: return vec_;
    case Kind::Quadratic: return mat_ * x + vec_;
    case Kind::LeastSquares: return 2.0 * mat_.transpose() * (mat_ * x - vec_);
  }
  return {};
}

Matrix SmoothFn::hessian() const {
  switch (kind_) {
    case Kind::Zero:
    case Kind::Linear: return Matrix::Zero(dim_, dim_);
    case Kind::Quadratic: return mat_;
    case Kind::LeastSquares: return 2.0 * mat_.transpose() * mat_;
  }
  return {};
}

Vector SmoothFn::linear_term() const {
  switch (kind_) {
    case Kind::Zero: return Vector::Zero(dim_);
    case Kind::Linear:
    case Kind::Quadratic: return vec_;
    case Kind::LeastSquares: return -2.0 * mat_.transpose() * vec_;
  }
  return {};
}

}  // namespace admmforge
