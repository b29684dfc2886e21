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

#include "admm_forge/problem.hpp"

#include <set>
#include <stdexcept>
#include <unordered_set>

namespace admmforge {

int MultiblockProblem::block_index(const std::string& id) const {
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

int MultiblockProblem::total_dim() const {
  int n = 0;
  for (const auto& b : blocks) n += b.dim;
  return n;
}

std::vector<Violation> validate(const MultiblockProblem& problem) {
  std::vector<Violation> out;
  std::unordered_set<std::string> seen;
  for (const auto& b : problem.blocks) {
    if (!seen.insert(b.id).second) {
      out.push_back({Violation::Kind::DuplicateId, b.id, "duplicate block id '" + b.id + "'"});
    }
    if (b.dim <= 0 || b.smooth.dim() != b.dim || b.prox.dim() != b.dim) {
      out.push_back({Violation::Kind::DimensionMismatch, b.id,
                     "block '" + b.id + "' objective dimensions disagree with dim " +
                         std::to_string(b.dim)});
    }
  }
  std::unordered_set<std::string> seen_constraints;
  for (const auto& c : problem.constraints) {
    if (!seen_constraints.insert(c.id).second) {
      out.push_back(
          {Violation::Kind::DuplicateId, c.id, "duplicate constraint id '" + c.id + "'"});
    }
    std::set<std::string> distinct;
    for (const auto& t : c.terms) {
      const int bi = problem.block_index(t.block);
      if (bi < 0) {
        out.push_back({Violation::Kind::UnknownBlock, c.id,
                       "constraint '" + c.id + "' references unknown block '" + t.block + "'"});
        continue;
      }
      distinct.insert(t.block);
      if (t.map.out_dim() != c.rhs.size()) {
        out.push_back({Violation::Kind::DimensionMismatch, c.id,
                       "constraint '" + c.id + "' map for block '" + t.block + "' has out_dim " +
                           std::to_string(t.map.out_dim()) + " but rhs has length " +
                           std::to_string(c.rhs.size())});
      }
      if (t.map.in_dim() != problem.blocks[bi].dim) {
        out.push_back({Violation::Kind::DimensionMismatch, c.id,
                       "constraint '" + c.id + "' map for block '" + t.block + "' has in_dim " +
                           std::to_string(t.map.in_dim()) + " but the block has dim " +
                           std::to_string(problem.blocks[bi].dim)});
      }
    }
    if (distinct.size() < 2) {
      out.push_back({Violation::Kind::TooFewBlocks, c.id,
                     "constraint '" + c.id + "' couples " + std::to_string(distinct.size()) +
                         " distinct block(s); |S_k| >= 2 is required"});
    }
  }
  return out;
}

namespace {

void check_point(const MultiblockProblem& problem, const BlockPoint& point) {
  if (point.size() != problem.blocks.size()) {
    throw std::invalid_argument("point has " + std::to_string(point.size()) +
                                " blocks, problem has " +
                                std::to_string(problem.blocks.size()));
  }
  for (size_t i = 0; i < point.size(); ++i) {
    if (point[i].size() != problem.blocks[i].dim) {
      throw std::invalid_argument("point block '" + problem.blocks[i].id +
                                  "' has wrong dimension");
    }
  }
}

}  // namespace

double eval_objective(const MultiblockProblem& problem, const BlockPoint& point) {
  check_point(problem, point);
  double total = 0.0;
  for (size_t i = 0; i < point.size(); ++i) {
    total += problem.blocks[i].smooth.value(point[i]) + problem.blocks[i].prox.value(point[i]);
  }
  return total;
}

double constraint_violation(const MultiblockProblem& problem, const BlockPoint& point) {
  check_point(problem, point);
  double worst = 0.0;
  for (const auto& c : problem.constraints) {
    Vector r = -c.rhs;
    for (const auto& t : c.terms) t.map.apply_add(point[problem.block_index(t.block)], r);
    if (r.size() > 0) worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

DenseSystem stacked_constraints(const MultiblockProblem& problem) {
  std::vector<int> offset(problem.blocks.size(), 0);
  int cols = 0;
  for (size_t i = 0; i < problem.blocks.size(); ++i) {
    offset[i] = cols;
    cols += problem.blocks[i].dim;
  }
  int rows = 0;
  for (const auto& c : problem.constraints) rows += static_cast<int>(c.rhs.size());
  DenseSystem sys{Matrix::Zero(rows, cols), Vector::Zero(rows)};
  int r0 = 0;
  for (const auto& c : problem.constraints) {
    const auto m = c.rhs.size();
    for (const auto& t : c.terms) {
      const int bi = problem.block_index(t.block);
      sys.matrix.block(r0, offset[bi], m, t.map.in_dim()) += t.map.to_dense();
    }
    sys.rhs.segment(r0, m) = c.rhs;
    r0 += static_cast<int>(m);
  }
  return sys;
}

}  // namespace admmforge
