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

#ifndef ADMM_FORGE_PIPELINE_HPP_
#define ADMM_FORGE_PIPELINE_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include "admm_forge/admm.hpp"
#include "admm_forge/bipartizer.hpp"
#include "admm_forge/coupling_graph.hpp"
#include "admm_forge/milp.hpp"
#include "admm_forge/problem.hpp"
#include "admm_forge/reformulator.hpp"

namespace admmforge {

enum class Method { Basic, Bfs, Dfs, Milp, Import };

Method method_from(const std::string& s);
const char* to_string(Method m);

struct PipelineOptions {
  Method method = Method::Bfs;
  SolverConfig solver;
  MilpOptions milp;
  MilpObjective milp_objective = MilpObjective::NormPlusCounts;
  ContributionMode contribution = ContributionMode::Frobenius;
  BalanceOptions balance;
  /// Required for Method::Import.
  std::filesystem::path assignment;
};

struct Bipartization {
  CouplingGraph graph;
  BipartizationDecision decision;
  BipartiteGraph bipartite;
  /// Decision plus materialization, wall clock.
  double partition_time_s = 0.0;
  std::optional<MilpResult> milp;
};

Bipartization bipartize(const MultiblockProblem& problem, const PipelineOptions& options);
/// Same, on an already built coupling graph.
Bipartization bipartize(CouplingGraph graph, const PipelineOptions& options);

struct RunResult {
  Bipartization partition;
  TwoBlockProblem two_block;
  AdmmState state;
  AdmmTrace trace;
  /// Original block values recovered from the final iterate.
  BlockPoint point;
  double objective = 0.0;
  double total_time_s = 0.0;
};

/// graph → decision → bipartite graph → two-block problem → ADMM.
RunResult run_pipeline(const MultiblockProblem& problem, const PipelineOptions& options);

/// Values of the original blocks inside a two-block iterate, in
/// problem.blocks order.
BlockPoint recover_blocks(const MultiblockProblem& problem, const TwoBlockProblem& p, const AdmmState& s);

/// {method, instance, iterations, partition_time_s, admm_time_s,
///  total_time_s, objective, status, final residuals, metrics, ...}
Json summary_json(const RunResult& r, const PipelineOptions& options, const std::string& instance);

}  // namespace admmforge

#endif  // ADMM_FORGE_PIPELINE_HPP_
