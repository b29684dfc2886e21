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

#include "admm_forge/pipeline.hpp"

#include <chrono>
#include <stdexcept>

#include "log.hpp"

namespace admmforge {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Method method_from(const std::string& s) {
  if (s == "basic") return Method::Basic;
  if (s == "bfs") return Method::Bfs;
  if (s == "dfs") return Method::Dfs;
  if (s == "milp") return Method::Milp;
  if (s == "import") return Method::Import;
  throw std::invalid_argument("unknown method '" + s + "' (expected basic|bfs|dfs|milp|import)");
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Basic: return "basic";
    case Method::Bfs: return "bfs";
    case Method::Dfs: return "dfs";
    case Method::Milp: return "milp";
    case Method::Import: return "import";
  }
  return "?";
}

Bipartization bipartize(CouplingGraph graph, const PipelineOptions& options) {
  Bipartization out{std::move(graph), {}, {}, 0.0, std::nullopt};
  const auto t0 = std::chrono::steady_clock::now();
  switch (options.method) {
    case Method::Basic:
      out.decision = basic_decision(out.graph);
      break;
    case Method::Bfs:
      out.decision = bfs_bipartize(out.graph, Traversal::Bfs);
      break;
    case Method::Dfs:
      out.decision = bfs_bipartize(out.graph, Traversal::Dfs);
      break;
    case Method::Milp:
      out.milp = milp_bipartize(out.graph, options.milp, options.milp_objective, options.contribution,
                                options.balance);
      out.decision = out.milp->decision;
      break;
    case Method::Import:
      if (options.assignment.empty()) throw std::invalid_argument("method import needs an assignment file");
      out.decision = import_decision(out.graph, options.assignment);
      break;
  }
  out.bipartite = materialize(out.graph, out.decision);
  out.partition_time_s = seconds_since(t0);
  log::info("{}: {} splits, partition {:.3f}s", to_string(options.method), out.decision.split_count(),
            out.partition_time_s);
  return out;
}

Bipartization bipartize(const MultiblockProblem& problem, const PipelineOptions& options) {
  return bipartize(build_coupling_graph(problem), options);
}

BlockPoint recover_blocks(const MultiblockProblem& problem, const TwoBlockProblem& p, const AdmmState& s) {
  BlockPoint point(problem.blocks.size());
  auto take = [&](const std::vector<SideBlock>& side, const SidePoint& values) {
    for (size_t i = 0; i < side.size(); ++i) {
      if (side[i].provenance != Provenance::Original) continue;
      const int b = problem.block_index(side[i].source);
      if (b >= 0) point[b] = values[i];
    }
  };
  take(p.left, s.x);
  take(p.right, s.z);
  for (size_t b = 0; b < point.size(); ++b) {
    if (point[b].size() != problem.blocks[b].dim) {
      throw std::logic_error("recover_blocks: block '" + problem.blocks[b].id + "' missing from the two-block problem");
    }
  }
  return point;
}

RunResult run_pipeline(const MultiblockProblem& problem, const PipelineOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult r;
  r.partition = bipartize(problem, options);
  r.two_block = assemble(r.partition.bipartite, options.contribution);
  AdmmSolver solver(r.two_block, options.solver);
  auto [state, trace] = solver.solve();
  r.state = std::move(state);
  r.trace = std::move(trace);
  r.point = recover_blocks(problem, r.two_block, r.state);
  r.objective = trace_objective(r.two_block, r.state);
  r.total_time_s = seconds_since(t0);
  return r;
}

Json summary_json(const RunResult& r, const PipelineOptions& options, const std::string& instance) {
  const auto metrics = r.partition.bipartite.metrics();
  Json j = {{"method", to_string(options.method)},
            {"instance", instance},
            {"algorithm", to_string(options.solver.algorithm)},
            {"rho", options.solver.rho},
            {"tol", options.solver.tol},
            {"max_iters", options.solver.max_iters},
            {"iterations", r.trace.iterations},
            {"partition_time_s", r.partition.partition_time_s},
            {"admm_time_s", r.trace.solve_time_s},
            {"total_time_s", r.total_time_s},
            {"objective", real_to_json(r.objective)},
            {"status", to_string(r.trace.termination)},
            {"final_primal_residual", real_to_json(r.trace.final_primal_inf)},
            {"final_dual_residual", real_to_json(r.trace.final_dual_inf)},
            {"split_count", r.partition.decision.split_count()},
            {"metrics", metrics_to_json(metrics)}};
  if (r.partition.milp) {
    const auto& m = *r.partition.milp;
    j["milp"] = {{"status", to_string(m.status)}, {"objective", m.objective}, {"bound", m.bound},
                 {"gap", m.gap},                  {"nodes", m.nodes},         {"seconds", m.seconds}};
  }
  return j;
}

}  // namespace admmforge
