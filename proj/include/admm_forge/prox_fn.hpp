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

#ifndef ADMM_FORGE_PROX_FN_HPP_
#define ADMM_FORGE_PROX_FN_HPP_

#include "admm_forge/linear_map.hpp"

namespace admmforge {

/// Feasibility tolerance used when evaluating equality-set indicators.
inline constexpr double kIndicatorTolerance = 1e-9;

/// Nonsmooth part g_i of a block objective, accessed only through its
/// proximal map argmin_x g(x) + (1/2γ)‖x − z‖².
class ProxFn {
 public:
  enum class Kind { Zero, Box, AffineSubspace, SumToConstant, L1 };

  static ProxFn zero(int dim);
  /// Indicator of [lower, upper]; entries may be infinite.
  static ProxFn box(Vector lower, Vector upper);
  /// Indicator of {x : C x = d}. Throws when the system is inconsistent.
  static ProxFn affine_subspace(Matrix C, Vector d);
  /// Indicator of {(y_1, ..., y_arity) : Σ y_k = target}, each y_k of
  /// length target.size().
  static ProxFn sum_to_constant(Vector target, int arity);
  static ProxFn l1(int dim, double weight);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  Vector prox(const Vector& z, double gamma) const;
  /// 0 or +inf for indicators (equality sets at kIndicatorTolerance).
  double value(const Vector& x) const;
  bool is_indicator() const { return kind_ != Kind::Zero && kind_ != Kind::L1; }

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const Matrix& constraint_matrix() const { return mat_; }
  const Vector& constraint_rhs() const { return rhs_; }
  const Vector& target() const { return rhs_; }
  int arity() const { return arity_; }
  double weight() const { return weight_; }

  /// Orthonormal basis of the null space of C and a particular solution of
  /// C x = d (AffineSubspace and SumToConstant only).
  const Matrix& null_space_basis() const;
  const Vector& particular_solution() const;

 private:
  ProxFn() = default;

  Kind kind_ = Kind::Zero;
  int dim_ = 0;
  Vector lower_, upper_;
  Matrix mat_;
  Vector rhs_;
  int arity_ = 0;
  double weight_ = 0.0;

  // Projection data for equality sets: x ↦ x − pinv_ (C x − d).
  Matrix pinv_;
  Matrix null_basis_;
  Vector particular_;
};

}  // namespace admmforge

#endif  // ADMM_FORGE_PROX_FN_HPP_
