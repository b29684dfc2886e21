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

#ifndef ADMM_FORGE_BIPARTIZER_HPP_
#define ADMM_FORGE_BIPARTIZER_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "admm_forge/coupling_graph.hpp"

namespace admmforge {

/// σ(e). `side` is meaningful only when split == 1.
struct EdgeDecision {
  int split = 0;
  int side = 0;
};

/// Colour 0 is the left (x) side, 1 the right (z) side. Both vectors are
/// indexed like the graph's vertices / edges.
struct BipartizationDecision {
  std::vector<int> coloring;
  std::vector<EdgeDecision> edges;

  int split_count() const;
};

enum class Traversal { Bfs, Dfs };

/// Traversal-based bipartization. Each newly reached vertex takes the colour
/// opposite to its discoverer; an edge whose endpoints already share a colour
/// is split and its new node placed on the other side. Components start on
/// alternating colours.
BipartizationDecision bfs_bipartize(const CouplingGraph& graph, Traversal traversal = Traversal::Bfs);

/// Derives σ from a vertex colouring: differently coloured endpoints keep
/// their edge, equal ones get a split node on the opposite side.
BipartizationDecision decision_from_coloring(const CouplingGraph& graph, const std::vector<int>& coloring);

/// Every original vertex on the left, every edge split into a right node.
/// For a consensus graph this is the classical edge-variable reformulation.
BipartizationDecision basic_decision(const CouplingGraph& graph);

/// Parses `vertex_id<TAB>color` lines ('#' starts a comment).
std::map<std::string, int> read_assignment_file(const std::filesystem::path& path);
void write_assignment_file(const CouplingGraph& graph, const std::vector<int>& coloring,
                           const std::filesystem::path& path);
/// Throws std::invalid_argument naming every missing or unknown vertex id.
BipartizationDecision import_decision(const CouplingGraph& graph,
                                      const std::map<std::string, int>& assignment);
BipartizationDecision import_decision(const CouplingGraph& graph, const std::filesystem::path& path);

/// {"coloring": {id: c}, "edge_decisions": {id: [split, side]}}
Json decision_to_json(const CouplingGraph& graph, const BipartizationDecision& d);
BipartizationDecision decision_from_json(const CouplingGraph& graph, const Json& j);

/// Graph whose edges all cross the partition. Edge endpoint `a` is always
/// the left vertex.
struct BipartiteGraph {
  CouplingGraph graph;
  std::vector<int> side;
  /// Index (into the source graph's edges) of the split edge, -1 otherwise.
  std::vector<int> origin_edge;

  std::vector<int> left() const;
  std::vector<int> right() const;
  std::vector<int> subdivision_nodes() const;
  GraphMetrics metrics() const { return compute_metrics(graph, side); }
};

/// A split edge (i, j) with maps (Q_i, Q_j) and rhs b becomes the path
/// i - w - j with Q_i x_i - w = 0 and Q_j x_j + w = b.
BipartiteGraph materialize(const CouplingGraph& graph, const BipartizationDecision& decision);

Json bipartite_to_json(const BipartiteGraph& g);

enum class ContributionMode { Exact, Frobenius };

ContributionMode contribution_mode_from(const std::string& s);
const char* to_string(ContributionMode m);

/// Exact: sqrt(λ_max(Σ_e Q_eᵀQ_e)) over incident edges. Frobenius:
/// sqrt(Σ_e ‖Q_e‖_F²), an upper bound of the exact value.
double contribution(const CouplingGraph& graph, int vertex, ContributionMode mode);

}  // namespace admmforge

#endif  // ADMM_FORGE_BIPARTIZER_HPP_
