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

// Bipartization as a 0/1 program.
//
// Binaries per vertex i: xL_i, xR_i (one side each). Per edge e = (i, j):
// z_e (edge subdivided) and xL_e, xR_e (side of the subdivision node).
//
//   xL_i + xR_i = 1
//   xL_e + xR_e = z_e
//   1 - z_e <= xL_i + xL_j <= 1 + z_e
//   z_e <= xL_i + xL_e <= 2 - z_e,   z_e <= xL_j + xL_e <= 2 - z_e
//   tL >= contribution(i) xL_i,  tL >= sqrt(2) xL_e     (and the R analogue)
//
// Objective: tL alone (NormOnly) or tL + tR + Σ xL + Σ xR (NormPlusCounts).

#ifndef ADMM_FORGE_MILP_HPP_
#define ADMM_FORGE_MILP_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "admm_forge/bipartizer.hpp"

namespace admmforge {

enum class MilpObjective { NormOnly, NormPlusCounts };

MilpObjective milp_objective_from(const std::string& s);

/// Soft side-size balance: weight · |n_L − n_R|, or, when `cores` is set,
/// weight · (|n_L − cores| + |n_R − cores|). n counts vertices plus
/// subdivision nodes. Weight 0 disables the term.
struct BalanceOptions {
  double weight = 0.0;
  std::optional<int> cores;
};

struct MilpRow {
  std::string name;
  std::vector<std::pair<int, double>> terms;
  double lo;
  double hi;
};

struct MilpModel {
  int vertex_count = 0;
  int edge_count = 0;
  MilpObjective objective = MilpObjective::NormPlusCounts;
  ContributionMode mode = ContributionMode::Frobenius;
  BalanceOptions balance;

  std::vector<std::string> var_names;
  /// Linear objective coefficients of the binaries (all nonnegative).
  std::vector<double> cost;
  std::vector<MilpRow> rows;
  /// t_L >= coef · x_var for each entry; likewise t_R.
  std::vector<std::pair<int, double>> t_left;
  std::vector<std::pair<int, double>> t_right;
  double t_left_weight = 1.0;
  double t_right_weight = 1.0;

  std::vector<double> contributions;
  std::vector<int> edge_dims;
  std::vector<std::pair<int, int>> edge_endpoints;

  static int xl(int v) { return 2 * v; }
  static int xr(int v) { return 2 * v + 1; }
  int z(int e) const { return 2 * vertex_count + 3 * e; }
  int xl_edge(int e) const { return 2 * vertex_count + 3 * e + 1; }
  int xr_edge(int e) const { return 2 * vertex_count + 3 * e + 2; }

  int binary_count() const { return static_cast<int>(var_names.size()); }
  /// t_L, t_R, plus two deviation variables per balance row when enabled.
  int continuous_count() const;

  /// Every row satisfied (tolerance 1e-9).
  bool feasible(const std::vector<int>& x) const;
  /// Objective with the t variables at their smallest feasible values;
  /// +inf when infeasible.
  double evaluate(const std::vector<int>& x) const;

  std::vector<int> encode(const BipartizationDecision& d) const;
  /// c(i) = xR_i, σ(e) = (z_e, xR_e).
  BipartizationDecision decode(const std::vector<int>& x) const;
};

/// Throws std::invalid_argument when a coupling map has non-finite entries.
MilpModel build_milp(const CouplingGraph& graph, MilpObjective objective = MilpObjective::NormPlusCounts,
                     ContributionMode mode = ContributionMode::Frobenius, BalanceOptions balance = {});

/// CPLEX LP dialect. Two-sided rows are written as a >= and a <= row.
void write_lp(const MilpModel& model, std::ostream& out);

struct MilpOptions {
  double rel_gap = 0.01;
  double time_limit_s = 60.0;
  long long node_limit = 50'000'000;
  /// Accepted for interface compatibility; the search itself is sequential.
  int threads = 1;
  std::size_t max_open_nodes = 200'000;
};

enum class MilpStatus { Optimal, GapLimit, TimeLimit, NodeLimit };

const char* to_string(MilpStatus s);

struct MilpResult {
  BipartizationDecision decision;
  std::vector<int> assignment;
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  MilpStatus status = MilpStatus::Optimal;
  long long nodes = 0;
  double warm_start_objective = 0.0;
  double seconds = 0.0;
};

/// Best-first branch-and-bound with diving. `warm_start` must be a valid
/// decision for the model's graph; it seeds the incumbent.
MilpResult solve_milp(const MilpModel& model, const BipartizationDecision& warm_start,
                      const MilpOptions& options = {});

/// build_milp + BFS warm start + solve_milp.
MilpResult milp_bipartize(const CouplingGraph& graph, const MilpOptions& options = {},
                          MilpObjective objective = MilpObjective::NormPlusCounts,
                          ContributionMode mode = ContributionMode::Frobenius, BalanceOptions balance = {});

}  // namespace admmforge

#endif  // ADMM_FORGE_MILP_HPP_
