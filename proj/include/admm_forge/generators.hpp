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

#ifndef ADMM_FORGE_GENERATORS_HPP_
#define ADMM_FORGE_GENERATORS_HPP_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "admm_forge/json_io.hpp"
#include "admm_forge/problem.hpp"

namespace admmforge {

/// Triangle resistive network: blocks I1, I2, I3 with f_i = R_i I_i² and
/// KCL constraints I1 − I3 = J1, I2 − I1 = J2, I3 − I2 = J3.
/// Throws std::invalid_argument unless R > 0 and ΣJ = 0.
MultiblockProblem gen_circuit(const std::array<double, 3>& R, const std::array<double, 3>& J);

struct NetworkFlowSpec {
  int node_count = 20;
  int arc_count = 200;
  double cost_max = 10.0;
  double capacity_max = 40.0;
  /// Share of nodes kept at undirected degree two while capacity allows.
  double degree2_fraction = 0.3;
  double supply_bound = 100.0;
  std::uint64_t seed = 0;
};

struct NetworkFlowInstance {
  MultiblockProblem problem;
  std::vector<std::pair<int, int>> arcs;  // (tail, head)
  std::vector<double> cost;
  std::vector<double> capacity;
  std::vector<double> supply;  // net outflow per node
  /// Flow used to define the supplies; satisfies every balance exactly.
  std::vector<double> flow;
};

/// Cycle backbone plus random extra edges, random orientation. When the
/// arc count exceeds the number of node pairs, remaining arcs reuse pairs in
/// the opposite direction. Requires node_count <= arc_count <=
/// node_count·(node_count − 1).
NetworkFlowInstance gen_network_flow(const NetworkFlowSpec& spec);

struct ConsensusSpec {
  int agent_count = 50;
  int rows = 25;
  int cols = 50;
  double p_low_factor = 2.0;   // p ~ U[p_low_factor/|V|, p_high_factor/|V|]
  double p_high_factor = 10.0;
  double noise_std = 0.1;
  std::uint64_t seed = 0;
};

struct ConsensusInstance {
  std::vector<std::pair<int, int>> edges;  // communication graph, i < j
  double p = 0.0;
  std::vector<Matrix> Q;
  std::vector<Vector> q;
  Vector x_true;
  /// x_i = z_ij, x_j = z_ij for every edge.
  MultiblockProblem standard_form;
  /// x_i − x_j = 0 for every edge; its coupling graph is the communication graph.
  MultiblockProblem direct_form;
};

ConsensusInstance gen_consensus_ls(const ConsensusSpec& spec);

Json network_flow_spec_to_json(const NetworkFlowSpec& s);
Json consensus_spec_to_json(const ConsensusSpec& s);

}  // namespace admmforge

#endif  // ADMM_FORGE_GENERATORS_HPP_
