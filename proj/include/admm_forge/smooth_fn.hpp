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

#ifndef ADMM_FORGE_SMOOTH_FN_HPP_
#define ADMM_FORGE_SMOOTH_FN_HPP_

#include <optional>

#include "admm_forge/linear_map.hpp"

namespace admmforge {

/// Smooth part f_i of a block objective. Every supported kind is a convex
/// quadratic, so f(x) = ½ xᵀ H x + hᵀ x + c with constant H; the ADMM engine
/// relies on that through hessian()/linear_term().
class SmoothFn {
 public:
  enum class Kind { Zero, Linear, Quadratic, LeastSquares };

  static SmoothFn zero(int dim);
  static SmoothFn linear(Vector q);
  /// ½ xᵀ P x + qᵀ x. P must be symmetric PSD (smallest eigenvalue >= -1e-10).
  static SmoothFn quadratic(Matrix P, Vector q);
  /// ‖Q x - q‖².
  static SmoothFn least_squares(Matrix Q, Vector q);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Matrix hessian() const;
  /// h in f(x) = ½ xᵀ H x + hᵀ x + c.
  Vector linear_term() const;

  /// Gradient Lipschitz constant. Defaults to λ_max(P) for quadratics and
  /// 2σ_max(Q)² for least squares.
  double lipschitz_bound() const { return lipschitz_; }
  SmoothFn with_lipschitz_bound(double l) const;

  const Matrix& matrix() const { return mat_; }  // P or Q
  const Vector& vector() const { return vec_; }  // q

 private:
  SmoothFn() = default;

  Kind kind_ = Kind::Zero;
  int dim_ = 0;
  Matrix mat_;
  Vector vec_;
  double lipschitz_ = 0.0;
};

}  // namespace admmforge

#endif  // ADMM_FORGE_SMOOTH_FN_HPP_
