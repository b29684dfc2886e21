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

#ifndef ADMM_FORGE_PROBLEM_HPP_
#define ADMM_FORGE_PROBLEM_HPP_

#include <string>
#include <vector>

#include "admm_forge/linear_map.hpp"
#include "admm_forge/prox_fn.hpp"
#include "admm_forge/smooth_fn.hpp"

namespace admmforge {

struct Block {
  std::string id;
  int dim = 0;
  SmoothFn smooth;
  ProxFn prox;
};

struct ConstraintTerm {
  std::string block;
  LinearMap map;
};

/// Σ_{terms} map(x_block) = rhs.
struct BlockConstraint {
  std::string id;
  std::vector<ConstraintTerm> terms;
  Vector rhs;
};

/// min Σ_i f_i(x_i) + g_i(x_i)  s.t.  Σ_{i∈S_k} A^k_i x_i = b^k for every k.
struct MultiblockProblem {
  std::vector<Block> blocks;
  std::vector<BlockConstraint> constraints;

  /// Index of a block by id, or -1.
  int block_index(const std::string& id) const;
  int total_dim() const;
};

struct Violation {
  enum class Kind { DuplicateId, UnknownBlock, DimensionMismatch, TooFewBlocks };
  Kind kind;
  std::string where;
  std::string message;
};

/// Every structural problem with the model; empty when valid.
std::vector<Violation> validate(const MultiblockProblem& problem);

/// Per-block vectors in problem.blocks order.
using BlockPoint = std::vector<Vector>;

/// Σ_i f_i(x_i) + g_i(x_i); +inf when an indicator is violated.
double eval_objective(const MultiblockProblem& problem, const BlockPoint& point);

/// ‖Σ A^k_i x_i − b^k‖_∞ over all constraints.
double constraint_violation(const MultiblockProblem& problem, const BlockPoint& point);

/// Dense [M | r] of the stacked constraint system over all blocks, columns in
/// block order. Repeated terms for one block accumulate.
struct DenseSystem {
  Matrix matrix;
  Vector rhs;
};
DenseSystem stacked_constraints(const MultiblockProblem& problem);

}  // namespace admmforge

#endif  // ADMM_FORGE_PROBLEM_HPP_
