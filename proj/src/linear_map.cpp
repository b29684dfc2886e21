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

#include "admm_forge/linear_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace admmforge {

namespace {

void require_positive(int rows, int cols) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("LinearMap: dimensions must be positive, got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

LinearMap LinearMap::identity(int dim) {
  require_positive(dim, dim);
  LinearMap m;
  m.kind_ = Kind::Identity;
  m.out_dim_ = m.in_dim_ = dim;
  return m;
}

LinearMap LinearMap::scaled_identity(int dim, double scale) {
  require_positive(dim, dim);
  LinearMap m;
  m.kind_ = Kind::ScaledIdentity;
  m.out_dim_ = m.in_dim_ = dim;
  m.scale_ = scale;
  return m;
}

LinearMap LinearMap::dense(Matrix mat) {
  require_positive(static_cast<int>(mat.rows()), static_cast<int>(mat.cols()));
  LinearMap m;
  m.kind_ = Kind::Dense;
  m.out_dim_ = static_cast<int>(mat.rows());
  m.in_dim_ = static_cast<int>(mat.cols());
  m.dense_ = std::move(mat);
  return m;
}

LinearMap LinearMap::sparse(int rows, int cols, const std::vector<Triplet>& entries) {
  require_positive(rows, cols);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(entries.size());
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw std::invalid_argument("LinearMap: triplet (" + std::to_string(t.row) + ", " +
                                  std::to_string(t.col) + ") outside " +
                                  std::to_string(rows) + "x" + std::to_string(cols));
    }
    trips.emplace_back(t.row, t.col, t.value);
  }
  LinearMap m;
  m.kind_ = Kind::Sparse;
  m.out_dim_ = rows;
  m.in_dim_ = cols;
  m.sparse_.resize(rows, cols);
  m.sparse_.setFromTriplets(trips.begin(), trips.end());
  m.sparse_.prune(0.0);
  m.sparse_.makeCompressed();
  return m;
}

Vector LinearMap::apply(const Vector& x) const {
  Vector y = Vector::Zero(out_dim_);
  apply_add(x, y);
  return y;
}

Vector LinearMap::apply_transpose(const Vector& y) const {
  Vector x = Vector::Zero(in_dim_);
  apply_transpose_add(y, x);
  return x;
}

void LinearMap::apply_add(const Vector& x, Eigen::Ref<Vector> y) const {
  if (x.size() != in_dim_ || y.size() != out_dim_) {
    throw std::invalid_argument("LinearMap::apply: dimension mismatch");
  }
  switch (kind_) {
    case Kind::Identity: y += x; break;
    case Kind::ScaledIdentity: y += scale_ * x; break;
    case Kind::Dense: y.noalias() += dense_ * x; break;
    case Kind::Sparse: y += sparse_ * x; break;
  }
}

void LinearMap::apply_transpose_add(const Vector& y, Eigen::Ref<Vector> x) const {
  if (y.size() != out_dim_ || x.size() != in_dim_) {
    throw std::invalid_argument("LinearMap::apply_transpose: dimension mismatch");
  }
  switch (kind_) {
    case Kind::Identity: x += y; break;
    case Kind::ScaledIdentity: x += scale_ * y; break;
    case Kind::Dense: x.noalias() += dense_.transpose() * y; break;
    case Kind::Sparse: x += sparse_.transpose() * y; break;
  }
}

Matrix LinearMap::to_dense() const {
  switch (kind_) {
    case Kind::Identity: return Matrix::Identity(out_dim_, in_dim_);
    case Kind::ScaledIdentity: return scale_ * Matrix::Identity(out_dim_, in_dim_);
    case Kind::Dense: return dense_;
    case Kind::Sparse: return Matrix(sparse_);
  }
  return {};
}

std::vector<Triplet> LinearMap::triplets() const {
  std::vector<Triplet> out;
  switch (kind_) {
    case Kind::Identity:
    case Kind::ScaledIdentity:
      if (scale_ != 0.0) {
        for (int i = 0; i < out_dim_; ++i) out.push_back({i, i, scale_});
      }
      break;
    case Kind::Dense:
      for (int r = 0; r < out_dim_; ++r) {
        for (int c = 0; c < in_dim_; ++c) {
          if (dense_(r, c) != 0.0) out.push_back({r, c, dense_(r, c)});
        }
      }
      break;
    case Kind::Sparse:
      for (int r = 0; r < sparse_.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(sparse_, r); it; ++it) {
          out.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()), it.value()});
        }
      }
      break;
  }
  return out;
}

Matrix LinearMap::gram() const {
  switch (kind_) {
    case Kind::Identity: return Matrix::Identity(in_dim_, in_dim_);
    case Kind::ScaledIdentity: return scale_ * scale_ * Matrix::Identity(in_dim_, in_dim_);
    case Kind::Dense: return dense_.transpose() * dense_;
    case Kind::Sparse: return Matrix(SparseMatrix(sparse_.transpose() * sparse_));
  }
  return {};
}

double LinearMap::frobenius_norm() const {
  switch (kind_) {
    case Kind::Identity: return std::sqrt(static_cast<double>(in_dim_));
    case Kind::ScaledIdentity: return std::abs(scale_) * std::sqrt(static_cast<double>(in_dim_));
    case Kind::Dense: return dense_.norm();
    case Kind::Sparse: return sparse_.norm();
  }
  return 0.0;
}

double LinearMap::spectral_norm() const {
  switch (kind_) {
    case Kind::Identity: return 1.0;
    case Kind::ScaledIdentity: return std::abs(scale_);
    default: return std::sqrt(power_iteration_max_eigenvalue(gram()));
  }
}

int LinearMap::nnz() const {
  switch (kind_) {
    case Kind::Identity: return in_dim_;
    case Kind::ScaledIdentity: return scale_ == 0.0 ? 0 : in_dim_;
    case Kind::Dense: return static_cast<int>((dense_.array() != 0.0).count());
    case Kind::Sparse: return static_cast<int>(sparse_.nonZeros());
  }
  return 0;
}

bool LinearMap::all_finite() const {
  switch (kind_) {
    case Kind::Identity: return true;
    case Kind::ScaledIdentity: return std::isfinite(scale_);
    case Kind::Dense: return dense_.allFinite();
    case Kind::Sparse:
      return std::all_of(sparse_.valuePtr(), sparse_.valuePtr() + sparse_.nonZeros(),
                         [](double v) { return std::isfinite(v); });
  }
  return true;
}

LinearMap LinearMap::transposed() const {
  LinearMap m = *this;
  m.out_dim_ = in_dim_;
  m.in_dim_ = out_dim_;
  if (kind_ == Kind::Dense) m.dense_ = dense_.transpose();
  if (kind_ == Kind::Sparse) m.sparse_ = SparseMatrix(sparse_.transpose());
  return m;
}

LinearMap LinearMap::scaled(double s) const {
  LinearMap m = *this;
  switch (kind_) {
    case Kind::Identity:
      m.kind_ = Kind::ScaledIdentity;
      m.scale_ = s;
      break;
    case Kind::ScaledIdentity: m.scale_ = scale_ * s; break;
    case Kind::Dense: m.dense_ *= s; break;
    case Kind::Sparse: m.sparse_ *= s; break;
  }
  if (m.kind_ == Kind::ScaledIdentity && m.scale_ == 1.0) m.kind_ = Kind::Identity;
  return m;
}

bool LinearMap::is_signed_identity(double* sign) const {
  double s = 0.0;
  if (kind_ == Kind::Identity) {
    s = 1.0;
  } else if (kind_ == Kind::ScaledIdentity && (scale_ == 1.0 || scale_ == -1.0)) {
    s = scale_;
  } else if (out_dim_ == in_dim_ && (kind_ == Kind::Dense || kind_ == Kind::Sparse)) {
    const Matrix d = to_dense();
    for (double cand : {1.0, -1.0}) {
      if (d == cand * Matrix::Identity(out_dim_, in_dim_)) s = cand;
    }
  }
  if (s == 0.0) return false;
  if (sign) *sign = s;
  return true;
}

LinearMap operator+(const LinearMap& a, const LinearMap& b) {
  if (a.out_dim_ != b.out_dim_ || a.in_dim_ != b.in_dim_) {
    throw std::invalid_argument("LinearMap: cannot add maps of different shapes");
  }
  using K = LinearMap::Kind;
  const bool a_id = a.kind_ == K::Identity || a.kind_ == K::ScaledIdentity;
  const bool b_id = b.kind_ == K::Identity || b.kind_ == K::ScaledIdentity;
  if (a_id && b_id) return LinearMap::scaled_identity(a.in_dim_, a.scale_ + b.scale_);
  if (a.kind_ == K::Dense || b.kind_ == K::Dense) {
    return LinearMap::dense(a.to_dense() + b.to_dense());
  }
  std::vector<Triplet> t = a.triplets();
  const auto tb = b.triplets();
  t.insert(t.end(), tb.begin(), tb.end());
  return LinearMap::sparse(a.out_dim_, a.in_dim_, t);
}

LinearMap LinearMap::vstack(const std::vector<LinearMap>& maps) {
  if (maps.empty()) throw std::invalid_argument("LinearMap::vstack: no maps");
  if (maps.size() == 1) return maps.front();
  const int cols = maps.front().in_dim();
  int rows = 0;
  bool any_dense = false;
  for (const auto& m : maps) {
    if (m.in_dim() != cols) {
      throw std::invalid_argument("LinearMap::vstack: in_dim mismatch");
    }
    rows += m.out_dim();
    any_dense = any_dense || m.kind() == Kind::Dense;
  }
  if (any_dense) {
    Matrix out(rows, cols);
    int offset = 0;
    for (const auto& m : maps) {
      out.middleRows(offset, m.out_dim()) = m.to_dense();
      offset += m.out_dim();
    }
    return dense(std::move(out));
  }
  std::vector<Triplet> t;
  int offset = 0;
  for (const auto& m : maps) {
    for (auto e : m.triplets()) {
      e.row += offset;
      t.push_back(e);
    }
    offset += m.out_dim();
  }
  return sparse(rows, cols, t);
}

double power_iteration_max_eigenvalue(const Matrix& sym, int max_iters, double tol) {
  const auto n = sym.rows();
  if (n == 0) return 0.0;
  if (n <= 64) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  }
  // Deterministic start with no special alignment to any eigenvector.
  Vector v(n);
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  for (Eigen::Index i = 0; i < n; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    v[i] = 0.5 + static_cast<double>(state >> 11) / 9007199254740992.0;
  }
  v.normalize();
  double lambda = 0.0;
  bool converged = false;
  for (int k = 0; k < max_iters; ++k) {
    Vector w = sym * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    const double next = v.dot(w);
    v = w / norm;
    if (k > 0 && std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
      lambda = next;
      converged = true;
      break;
    }
    lambda = next;
  }
  if (!converged && n <= 2000) {
    // Slow spectral gap: fall back to a direct symmetric eigensolve.
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  }
  return lambda;
}

}  // namespace admmforge
