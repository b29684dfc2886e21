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

#ifndef ADMM_FORGE_LP_HPP_
#define ADMM_FORGE_LP_HPP_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "admm_forge/problem.hpp"

namespace admmforge {

/// min cᵀx + obj_constant  s.t.  b_lo <= A x <= b_hi,  l <= x <= u.
/// Infinite bounds are ±infinity. Rows are the non-objective rows in file order.
struct LpData {
  std::string name;
  std::string objective_name = "obj";
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;
  int rows = 0;
  int cols = 0;
  std::vector<Triplet> triplets;  // (row, col) unique, file order
  Vector c;
  double obj_constant = 0.0;
  Vector l, u;
  Vector b_lo, b_hi;
  /// Integrality read from markers or BV/LI/UI bounds; ignored downstream.
  std::vector<bool> is_integer;
  bool maximize = false;

  SparseMatrix matrix() const;
  bool operator==(const LpData& other) const;
};

class MpsError : public std::runtime_error {
 public:
  MpsError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

enum class MpsFormat { Free, Fixed };

/// Parses NAME/ROWS/COLUMNS/RHS/RANGES/BOUNDS/OBJSENSE/ENDATA. Free format
/// splits on whitespace; fixed format reads the classic column fields so
/// names may contain spaces. Throws MpsError with the offending line.
LpData read_mps(std::istream& in, MpsFormat format = MpsFormat::Free, const std::string& source = "<stream>");
LpData read_mps(const std::filesystem::path& path, MpsFormat format = MpsFormat::Free);

/// Free-format writer; values printed with 17 significant digits so
/// read_mps(write_mps(d)) == d. Throws std::invalid_argument for row or
/// column names with whitespace.
void write_mps(const LpData& lp, std::ostream& out);
void write_mps(const LpData& lp, const std::filesystem::path& path);

struct Cocluster {
  std::vector<int> row_cluster;
  std::vector<int> col_cluster;
};

/// Alternating row/column cluster assignment: columns start cyclic
/// (j mod k), rows start in cluster 0; each pass reassigns rows to the most
/// frequent cluster among their columns, then columns likewise from their
/// rows, ties going to the smaller index. Empty rows/columns keep their label.
Cocluster cocluster(const SparseMatrix& A, int k, int passes);

/// One block per non-empty column cluster (Linear c, Box [l, u]); one
/// constraint per row cluster. A cluster holding an inequality row, or
/// touching fewer than two blocks, gets a slack block s ∈ [b_lo, b_hi] with
/// A_r x − s = 0. Block ids "b<c>", slack ids "s<r>", constraint ids "r<r>".
MultiblockProblem lp_cocluster(const SparseMatrix& A, const Vector& c, const Vector& l, const Vector& u,
                               const Vector& b_lo, const Vector& b_hi, int k, int passes);
/// As above; maximization is turned into minimization of −c.
MultiblockProblem lp_cocluster(const LpData& lp, int k, int passes);

}  // namespace admmforge

#endif  // ADMM_FORGE_LP_HPP_
