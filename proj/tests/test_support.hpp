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

// Random instances shared by unit and acceptance tests.

#ifndef ADMM_FORGE_TESTS_TEST_SUPPORT_HPP_
#define ADMM_FORGE_TESTS_TEST_SUPPORT_HPP_

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "admm_forge/coupling_graph.hpp"
#include "admm_forge/problem.hpp"
#include "oracles.hpp"

namespace testing_support {

using namespace admmforge;

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Coupling graph with dense Gaussian edge maps and random vertex dims.
/// `edges` lists endpoint pairs; vertex ids "v<i>", edge ids "e<k>".
inline CouplingGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges, std::mt19937_64& rng,
                                      int max_dim = 2) {
  CouplingGraph g;
  std::vector<int> dims(n);
  for (int v = 0; v < n; ++v) {
    dims[v] = uniform_int(rng, 1, max_dim);
    g.add_vertex({"v" + std::to_string(v), VertexKind::Variable, "v" + std::to_string(v), dims[v],
                  SmoothFn::zero(dims[v]), ProxFn::zero(dims[v])});
  }
  for (size_t k = 0; k < edges.size(); ++k) {
    const auto [a, b] = edges[k];
    const int rows = uniform_int(rng, 1, max_dim);
    g.add_edge({"e" + std::to_string(k), a, b, LinearMap::dense(oracle::random_matrix(rng, rows, dims[a])),
                LinearMap::dense(oracle::random_matrix(rng, rows, dims[b])), oracle::random_vector(rng, rows),
                {"e" + std::to_string(k)}});
  }
  return g;
}

/// Random simple graph with n vertices and roughly density·n(n−1)/2 edges.
inline CouplingGraph random_graph(std::mt19937_64& rng, int n, double density) {
  std::vector<std::pair<int, int>> edges;
  std::bernoulli_distribution coin(density);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return graph_from_edges(n, edges, rng);
}

/// Random feasible MBP: strongly convex quadratic blocks, constraints on
/// 2..max_arity blocks with rhs = Σ A_k x0_k.
inline MultiblockProblem random_problem(std::mt19937_64& rng, int blocks, int constraints, int max_arity = 4) {
  MultiblockProblem p;
  std::vector<Vector> x0;
  for (int i = 0; i < blocks; ++i) {
    const int d = uniform_int(rng, 1, 3);
    const Matrix M = oracle::random_matrix(rng, d, d);
    const Matrix P = M.transpose() * M + 0.5 * Matrix::Identity(d, d);
    p.blocks.push_back({"x" + std::to_string(i), d, SmoothFn::quadratic(P, oracle::random_vector(rng, d)),
                        ProxFn::zero(d)});
    x0.push_back(oracle::random_vector(rng, d));
  }
  for (int k = 0; k < constraints; ++k) {
    const int arity = uniform_int(rng, 2, std::min(max_arity, blocks));
    std::set<int> members;
    while (static_cast<int>(members.size()) < arity) members.insert(uniform_int(rng, 0, blocks - 1));
    const int rows = uniform_int(rng, 1, 2);
    BlockConstraint c{"c" + std::to_string(k), {}, Vector::Zero(rows)};
    for (int b : members) {
      const Matrix A = oracle::random_matrix(rng, rows, p.blocks[b].dim);
      c.rhs += A * x0[b];
      c.terms.push_back({p.blocks[b].id, LinearMap::dense(A)});
    }
    p.constraints.push_back(std::move(c));
  }
  return p;
}

}  // namespace testing_support

#endif  // ADMM_FORGE_TESTS_TEST_SUPPORT_HPP_
