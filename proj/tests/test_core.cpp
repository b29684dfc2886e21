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

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <limits>
#include <random>

#include "admm_forge/json_io.hpp"
#include "admm_forge/linear_map.hpp"
#include "admm_forge/problem.hpp"
#include "admm_forge/prox_fn.hpp"
#include "admm_forge/smooth_fn.hpp"
#include "oracles.hpp"

using namespace admmforge;
using Catch::Approx;

TEST_CASE("linear maps agree with their dense form", "[linear_map]") {
  std::mt19937_64 rng(7);
  const Matrix D = oracle::random_matrix(rng, 3, 4);
  const std::vector<Triplet> trips = {{0, 1, 2.0}, {2, 3, -1.5}, {0, 1, 0.5}, {1, 0, 0.0}};
  Matrix S = Matrix::Zero(3, 4);
  S(0, 1) = 2.5;
  S(2, 3) = -1.5;
  const auto dense = LinearMap::dense(D);
  const auto sparse = LinearMap::sparse(3, 4, trips);
  const Vector x = oracle::random_vector(rng, 4), y = oracle::random_vector(rng, 3);

  CHECK((dense.apply(x) - D * x).norm() < 1e-12);
  CHECK((dense.apply_transpose(y) - D.transpose() * y).norm() < 1e-12);
  CHECK((sparse.to_dense() - S).norm() == 0.0);
  CHECK(sparse.nnz() == 2);
  CHECK((sparse.apply(x) - S * x).norm() < 1e-12);
  CHECK((sparse.gram() - S.transpose() * S).norm() < 1e-12);

  const auto I = LinearMap::scaled_identity(4, -2.0);
  CHECK((I.to_dense() + 2.0 * Matrix::Identity(4, 4)).norm() == 0.0);
  double sign = 0;
  CHECK(LinearMap::identity(3).is_signed_identity(&sign));
  CHECK(sign == 1.0);
  CHECK(LinearMap::scaled_identity(3, -1.0).is_signed_identity(&sign));
  CHECK(sign == -1.0);
  CHECK_FALSE(I.is_signed_identity());

  const auto sum = dense + sparse;
  CHECK((sum.to_dense() - (D + S)).norm() < 1e-12);
  const auto stacked = LinearMap::vstack({dense, sparse});
  CHECK(stacked.out_dim() == 6);
  CHECK((stacked.to_dense().bottomRows(3) - S).norm() == 0.0);
}

TEST_CASE("spectral norm matches a dense SVD", "[linear_map]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix M = oracle::random_matrix(rng, 1 + trial % 4, 1 + (trial * 7) % 5);
    Eigen::JacobiSVD<Matrix> svd(M);
    const double expected = svd.singularValues()(0);
    CHECK(LinearMap::dense(M).spectral_norm() == Approx(expected).epsilon(1e-6));
    CHECK(LinearMap::dense(M).frobenius_norm() == Approx(M.norm()).epsilon(1e-12));
  }
  CHECK(LinearMap::scaled_identity(5, -3.0).spectral_norm() == Approx(3.0));
}

TEST_CASE("smooth gradients match finite differences", "[smooth]") {
  std::mt19937_64 rng(3);
  const Matrix M = oracle::random_matrix(rng, 4, 4);
  const Matrix P = M.transpose() * M;
  const Vector q = oracle::random_vector(rng, 4);
  const Matrix Q = oracle::random_matrix(rng, 3, 4);
  const Vector b = oracle::random_vector(rng, 3);
  const std::vector<SmoothFn> fns = {SmoothFn::zero(4), SmoothFn::linear(q), SmoothFn::quadratic(P, q),
                                     SmoothFn::least_squares(Q, b)};
  for (const auto& f : fns) {
    const Vector x = oracle::random_vector(rng, 4);
    const Vector fd = oracle::fd_gradient([&](const Vector& z) { return f.value(z); }, x);
    const Vector g = f.gradient(x);
    CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, g.norm()));
    // ½ xᵀHx + hᵀx reproduces the value up to a constant.
    const Vector x2 = oracle::random_vector(rng, 4);
    const auto model = [&](const Vector& z) { return 0.5 * z.dot(f.hessian() * z) + f.linear_term().dot(z); };
    CHECK(f.value(x2) - f.value(x) == Approx(model(x2) - model(x)).margin(1e-9));
  }
  CHECK(SmoothFn::least_squares(Q, b).lipschitz_bound() ==
        Approx(2.0 * std::pow(Eigen::JacobiSVD<Matrix>(Q).singularValues()(0), 2)).epsilon(1e-6));
  CHECK_THROWS_AS(SmoothFn::quadratic(-Matrix::Identity(2, 2), Vector::Zero(2)), std::invalid_argument);
}

TEST_CASE("prox operators satisfy their optimality conditions", "[prox]") {
  const double inf = std::numeric_limits<double>::infinity();
  Vector lo(3), hi(3);
  lo << -1, 0, -inf;
  hi << 1, inf, 2;
  const auto box = ProxFn::box(lo, hi);
  Vector z(3);
  z << 5, -3, 1;
  const Vector p = box.prox(z, 0.7);
  CHECK(p(0) == 1.0);
  CHECK(p(1) == 0.0);
  CHECK(p(2) == 1.0);
  CHECK(box.value(p) == 0.0);
  CHECK(std::isinf(box.value(z)));

  // Soft thresholding: 0 ∈ γ w ∂|x| + x − z.
  const auto l1 = ProxFn::l1(3, 2.0);
  Vector z2(3);
  z2 << 3.0, -0.5, -4.0;
  const Vector s = l1.prox(z2, 0.5);
  CHECK(s(0) == Approx(2.0));
  CHECK(s(1) == 0.0);
  CHECK(s(2) == Approx(-3.0));
  CHECK(l1.value(s) == Approx(10.0));

  // Projection onto {Cx = d}: feasible and z − x orthogonal to null(C).
  std::mt19937_64 rng(5);
  const Matrix C = oracle::random_matrix(rng, 2, 4);
  const Vector d = oracle::random_vector(rng, 2);
  const auto aff = ProxFn::affine_subspace(C, d);
  const Vector z3 = oracle::random_vector(rng, 4);
  const Vector x3 = aff.prox(z3, 1.0);
  CHECK((C * x3 - d).norm() < 1e-10);
  const Matrix N = aff.null_space_basis();
  CHECK((N.transpose() * (z3 - x3)).norm() < 1e-10);

  const auto sum = ProxFn::sum_to_constant(Vector::Constant(2, 3.0), 3);
  const Vector y = sum.prox(Vector::Zero(6), 1.0);
  for (int k = 0; k < 6; ++k) CHECK(y(k) == Approx(1.0));

  CHECK_THROWS_AS(ProxFn::box(Vector::Constant(1, 2.0), Vector::Constant(1, 1.0)), std::invalid_argument);
}

TEST_CASE("problem validation reports structural errors", "[problem]") {
  MultiblockProblem p;
  p.blocks.push_back({"a", 2, SmoothFn::zero(2), ProxFn::zero(2)});
  p.blocks.push_back({"b", 1, SmoothFn::zero(1), ProxFn::zero(1)});
  p.constraints.push_back({"c", {{"a", LinearMap::identity(2)}, {"b", LinearMap::dense(Matrix::Ones(2, 1))}},
                           Vector::Zero(2)});
  CHECK(validate(p).empty());

  auto bad = p;
  bad.constraints[0].terms[1].block = "missing";
  auto v = validate(bad);
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].kind == Violation::Kind::UnknownBlock);

  bad = p;
  bad.constraints[0].terms.pop_back();
  v = validate(bad);
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].kind == Violation::Kind::TooFewBlocks);

  bad = p;
  bad.constraints[0].rhs = Vector::Zero(3);
  CHECK_FALSE(validate(bad).empty());

  bad = p;
  bad.blocks.push_back(bad.blocks[0]);
  CHECK_FALSE(validate(bad).empty());

  BlockPoint x = {Vector::Ones(2), Vector::Constant(1, -1.0)};
  CHECK(constraint_violation(p, x) == Approx(0.0));
  const auto sys = stacked_constraints(p);
  CHECK(sys.matrix.rows() == 2);
  CHECK(sys.matrix.cols() == 3);
}

TEST_CASE("problem JSON round-trips", "[json]") {
  const double inf = std::numeric_limits<double>::infinity();
  MultiblockProblem p;
  Matrix P(2, 2);
  P << 2, 0.5, 0.5, 1;
  p.blocks.push_back({"a", 2, SmoothFn::quadratic(P, Vector::Ones(2)),
                      ProxFn::box(Vector::Constant(2, -inf), Vector::Constant(2, 0.1))});
  p.blocks.push_back({"b", 1, SmoothFn::least_squares(Matrix::Ones(2, 1), Vector::Ones(2)), ProxFn::l1(1, 0.3)});
  p.blocks.push_back({"c", 3, SmoothFn::linear(Vector::Ones(3)), ProxFn::zero(3)});
  p.constraints.push_back({"k",
                           {{"a", LinearMap::sparse(1, 2, {{0, 1, 1.0 / 3.0}})},
                            {"b", LinearMap::scaled_identity(1, -1.0)},
                            {"c", LinearMap::dense(Matrix::Ones(1, 3))}},
                           Vector::Constant(1, 0.1)});
  const auto path = std::filesystem::temp_directory_path() / "admm_forge_core_roundtrip.json";
  save_problem(p, path);
  const auto q = load_problem(path);
  CHECK(problem_to_json(q) == problem_to_json(p));
  REQUIRE(q.blocks.size() == 3);
  CHECK(std::isinf(q.blocks[0].prox.lower()(0)));
  CHECK(q.constraints[0].terms[0].map.to_dense()(0, 1) == 1.0 / 3.0);
  std::filesystem::remove(path);
}
