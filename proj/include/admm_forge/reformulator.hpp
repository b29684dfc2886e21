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

#ifndef ADMM_FORGE_REFORMULATOR_HPP_
#define ADMM_FORGE_REFORMULATOR_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "admm_forge/bipartizer.hpp"

namespace admmforge {

enum class Provenance { Original, ConstraintNode, Subdivision };

const char* to_string(Provenance p);

struct SideBlock {
  std::string id;
  int dim = 0;
  SmoothFn smooth;
  ProxFn prox;
  Provenance provenance = Provenance::Original;
  /// Block id, constraint id or split edge id this block stems from.
  std::string source;
};

/// A x_left + B z_right = rhs.
struct Coupling {
  std::string id;
  int left = -1;
  int right = -1;
  LinearMap A;
  LinearMap B;
  Vector rhs;
};

/// min Σ f_i(x_i) + g_i(x_i) + Σ f_j(z_j) + g_j(z_j)  s.t.  A x + B z = b,
/// with A and B block diagonal up to a row permutation.
struct TwoBlockProblem {
  std::vector<SideBlock> left;
  std::vector<SideBlock> right;
  std::vector<Coupling> couplings;
  /// Upper bounds on ‖A‖ and ‖B‖: the largest per-block contribution.
  double norm_a = 0.0;
  double norm_b = 0.0;
  ContributionMode norm_mode = ContributionMode::Frobenius;

  /// Coupling indices touching each block.
  std::vector<std::vector<int>> left_couplings() const;
  std::vector<std::vector<int>> right_couplings() const;
  int row_count() const;
};

using SideObjectives = std::map<std::string, std::pair<SmoothFn, ProxFn>>;

/// Per side, blocks are ordered original vertices first, then constraint
/// nodes, then subdivision nodes, each group in graph order.
TwoBlockProblem assemble(const BipartiteGraph& bipartite, ContributionMode norm_mode = ContributionMode::Frobenius);
/// Takes objectives from `objectives` instead of the vertices; every vertex
/// id must be present.
TwoBlockProblem assemble(const BipartiteGraph& bipartite, const SideObjectives& objectives,
                         ContributionMode norm_mode = ContributionMode::Frobenius);

using SidePoint = std::vector<Vector>;

/// A_e x + B_e z - b_e for every coupling.
std::vector<Vector> residual(const TwoBlockProblem& p, const SidePoint& x, const SidePoint& z);
double primal_residual_inf(const TwoBlockProblem& p, const SidePoint& x, const SidePoint& z);

/// Σ f + g over both sides.
double eval_objective(const TwoBlockProblem& p, const SidePoint& x, const SidePoint& z);

/// Dense A, B, b in coupling order (columns in block order).
struct DenseTwoBlock {
  Matrix A;
  Matrix B;
  Vector b;
};
DenseTwoBlock to_dense(const TwoBlockProblem& p);

/// Linear system over the original blocks only, columns ordered by block
/// id as given in `block_order` (or by first appearance when empty).
struct ReducedSystem {
  std::vector<std::string> block_ids;
  std::vector<int> dims;
  Matrix matrix;
  Vector rhs;
};

/// Substitutes every auxiliary variable away. Constraint-node variables are
/// handled slice by slice, together with their Σ y_k = b condition.
/// Throws std::invalid_argument when an auxiliary has no ±I coupling to
/// pivot on.
ReducedSystem eliminate_auxiliaries(const TwoBlockProblem& p, const std::vector<std::string>& block_order = {});

Json two_block_to_json(const TwoBlockProblem& p);

}  // namespace admmforge

#endif  // ADMM_FORGE_REFORMULATOR_HPP_
