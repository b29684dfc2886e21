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

#ifndef ADMM_FORGE_LINEAR_MAP_HPP_
#define ADMM_FORGE_LINEAR_MAP_HPP_

#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace admmforge {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// A linear operator between real vector spaces. Identity and scaled identity
/// are kept symbolic so that coupling structure (the +-Id maps created by
/// reformulation) stays recognizable downstream.
class LinearMap {
 public:
  enum class Kind { Identity, ScaledIdentity, Dense, Sparse };

  static LinearMap identity(int dim);
  static LinearMap scaled_identity(int dim, double scale);
  static LinearMap dense(Matrix m);
  /// Duplicate (row, col) entries are summed; explicit zeros are dropped.
  static LinearMap sparse(int rows, int cols, const std::vector<Triplet>& entries);

  Kind kind() const { return kind_; }
  int out_dim() const { return out_dim_; }
  int in_dim() const { return in_dim_; }
  double scale() const { return scale_; }
  const Matrix& dense_matrix() const { return dense_; }
  const SparseMatrix& sparse_matrix() const { return sparse_; }

  Vector apply(const Vector& x) const;
  Vector apply_transpose(const Vector& y) const;
  /// y += M x, without temporaries for the symbolic kinds.
  void apply_add(const Vector& x, Eigen::Ref<Vector> y) const;
  void apply_transpose_add(const Vector& y, Eigen::Ref<Vector> x) const;

  Matrix to_dense() const;
  /// Canonical triplets in row-major order (zeros omitted).
  std::vector<Triplet> triplets() const;
  /// Mᵀ M as a dense matrix.
  Matrix gram() const;

  double frobenius_norm() const;
  /// Largest singular value, from the top eigenvalue of Mᵀ M.
  double spectral_norm() const;
  int nnz() const;
  bool all_finite() const;

  LinearMap transposed() const;
  LinearMap scaled(double s) const;
  LinearMap negated() const { return scaled(-1.0); }

  /// True when this map is exactly +Id (sign = 1) or -Id (sign = -1).
  bool is_signed_identity(double* sign = nullptr) const;

  friend LinearMap operator+(const LinearMap& a, const LinearMap& b);
  /// Stacks maps with equal in_dim on top of each other.
  static LinearMap vstack(const std::vector<LinearMap>& maps);

 private:
  LinearMap() = default;

  Kind kind_ = Kind::Identity;
  int out_dim_ = 0;
  int in_dim_ = 0;
  double scale_ = 1.0;
  Matrix dense_;
  SparseMatrix sparse_;
};

/// Largest eigenvalue of a symmetric PSD matrix. Matrices up to 64×64 go
/// to a direct eigensolver; larger ones use power iteration (100
/// iterations, relative tolerance 1e-8 unless overridden).
double power_iteration_max_eigenvalue(const Matrix& sym, int max_iters = 100,
                                      double tol = 1e-8);

}  // namespace admmforge

#endif  // ADMM_FORGE_LINEAR_MAP_HPP_
