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

#include <set>

#include "admm_forge/generators.hpp"
#include "admm_forge/pipeline.hpp"
#include "oracles.hpp"

using namespace admmforge;
using Catch::Approx;

TEST_CASE("circuit generator validates its inputs", "[zoo]") {
  CHECK_THROWS_AS(gen_circuit({1, 1, 1}, {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_circuit({1, 0, 1}, {1, -1, 0}), std::invalid_argument);
  const auto p = gen_circuit({1, 2, 3}, {0, 0, 0});
  CHECK(p.blocks.size() == 3);
  CHECK(p.constraints.size() == 3);
  PipelineOptions opts;
  opts.solver.tol = 1e-10;
  const auto r = run_pipeline(p, opts);
  CHECK(r.objective == Approx(0.0).margin(1e-12));
}

TEST_CASE("network flow instances are deterministic and balanced", "[zoo]") {
  NetworkFlowSpec spec;
  spec.node_count = 200;
  spec.arc_count = 2000;
  spec.seed = 11;
  const auto a = gen_network_flow(spec);
  const auto b = gen_network_flow(spec);
  CHECK(a.arcs == b.arcs);
  CHECK(a.cost == b.cost);
  CHECK(a.supply == b.supply);
  CHECK(a.problem.blocks.size() == 2000);
  CHECK(a.problem.constraints.size() == 200);

  // The generating flow balances every node exactly, within capacity.
  std::vector<double> net(spec.node_count, 0.0);
  for (size_t k = 0; k < a.arcs.size(); ++k) {
    CHECK(a.flow[k] >= 0.0);
    CHECK(a.flow[k] <= a.capacity[k]);
    net[a.arcs[k].first] += a.flow[k];
    net[a.arcs[k].second] -= a.flow[k];
  }
  for (int i = 0; i < spec.node_count; ++i) {
    CHECK(net[i] == a.supply[i]);
    CHECK(std::abs(a.supply[i]) <= spec.supply_bound);
  }
  // No self loops, no repeated directed arc.
  std::set<std::pair<int, int>> seen;
  for (const auto& arc : a.arcs) {
    CHECK(arc.first != arc.second);
    CHECK(seen.insert(arc).second);
  }

  spec.seed = 12;
  CHECK(gen_network_flow(spec).arcs != a.arcs);
}

TEST_CASE("network flow generator rejects impossible sizes", "[zoo]") {
  NetworkFlowSpec spec;
  spec.node_count = 4;
  spec.arc_count = 3;
  CHECK_THROWS_AS(gen_network_flow(spec), std::invalid_argument);
  spec.arc_count = 13;
  CHECK_THROWS_AS(gen_network_flow(spec), std::invalid_argument);
  spec.arc_count = 12;
  CHECK(gen_network_flow(spec).arcs.size() == 12);
  spec.degree2_fraction = 1.5;
  CHECK_THROWS_AS(gen_network_flow(spec), std::invalid_argument);
}

TEST_CASE("ADMM solves a small network flow to the min-cost optimum", "[zoo]") {
  NetworkFlowSpec spec;
  spec.node_count = 6;
  spec.arc_count = 9;
  spec.seed = 5;
  const auto inst = gen_network_flow(spec);
  const double best = oracle::min_cost_flow(spec.node_count, inst.arcs, inst.cost, inst.capacity, inst.supply);
  REQUIRE(std::isfinite(best));
  PipelineOptions opts;
  opts.method = Method::Bfs;
  opts.solver.tol = 1e-9;
  opts.solver.max_iters = 2'000'000;
  const auto r = run_pipeline(inst.problem, opts);
  CHECK(r.trace.termination == Termination::Converged);
  CHECK(r.objective == Approx(best).epsilon(1e-4).margin(1e-4));
}

TEST_CASE("consensus instances solve to the pooled least-squares fit", "[zoo]") {
  ConsensusSpec spec;
  spec.agent_count = 5;
  spec.cols = 8;
  spec.rows = 6;
  spec.seed = 9;
  const auto inst = gen_consensus_ls(spec);
  CHECK(inst.Q.size() == 5);
  CHECK(inst.Q[0].rows() == 6);
  CHECK(inst.Q[0].cols() == 8);
  CHECK(inst.edges.size() >= 4);
  CHECK(gen_consensus_ls(spec).edges == inst.edges);
  const Vector xbar = oracle::stacked_least_squares(inst.Q, inst.q);

  PipelineOptions opts;
  opts.solver.tol = 1e-9;
  opts.solver.max_iters = 200000;
  const auto r = run_pipeline(inst.standard_form, opts);
  CHECK(r.trace.termination == Termination::Converged);
  for (int i = 0; i < spec.agent_count; ++i) CHECK((r.point[i] - xbar).cwiseAbs().maxCoeff() < 1e-5);

  ConsensusSpec bad = spec;
  bad.agent_count = 1;
  CHECK_THROWS_AS(gen_consensus_ls(bad), std::invalid_argument);
  bad = spec;
  bad.noise_std = -1.0;
  CHECK_THROWS_AS(gen_consensus_ls(bad), std::invalid_argument);
}
