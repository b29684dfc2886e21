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

#ifndef ADMM_FORGE_COUPLING_GRAPH_HPP_
#define ADMM_FORGE_COUPLING_GRAPH_HPP_

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "admm_forge/json_io.hpp"
#include "admm_forge/linear_map.hpp"
#include "admm_forge/problem.hpp"

namespace admmforge {

enum class VertexKind { Variable, Constraint, Subdivision };

const char* to_string(VertexKind k);

/// A node of the coupling graph. `source` is the originating block id,
/// constraint id, or (for subdivision nodes) edge id.
struct Vertex {
  std::string id;
  VertexKind kind = VertexKind::Variable;
  std::string source;
  int dim = 0;
  SmoothFn smooth;
  ProxFn prox;
};

/// map_a(x_a) + map_b(x_b) = rhs.
struct Edge {
  std::string id;
  int a = -1;
  int b = -1;
  LinearMap map_a;
  LinearMap map_b;
  Vector rhs;
  /// Block constraints that produced this edge, in merge order.
  std::vector<std::string> sources;
};

struct IncidentEdge {
  int edge;
  int neighbor;
};

class CouplingGraph {
 public:
  int add_vertex(Vertex v);
  int add_edge(Edge e);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(int i) const { return vertices_.at(static_cast<size_t>(i)); }
  const Edge& edge(int i) const { return edges_.at(static_cast<size_t>(i)); }
  Edge& mutable_edge(int i) { return edges_.at(static_cast<size_t>(i)); }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// -1 when absent.
  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;
  /// Incident edges sorted by (neighbor index, edge index).
  const std::vector<IncidentEdge>& incident(int v) const;
  /// Map of edge e acting on endpoint v.
  const LinearMap& map_on(int e, int v) const;

  /// Throws std::invalid_argument on self-loops, unknown endpoints or map
  /// dimensions that disagree with the endpoint dims / rhs length.
  void check() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vertex_lookup_;
  std::unordered_map<std::string, int> edge_lookup_;
  mutable std::vector<std::vector<IncidentEdge>> incidence_;
  mutable bool incidence_dirty_ = true;
};

/// Star-expansion graph of an MBP: one variable node per block; constraints
/// on two blocks become edges (parallel ones merge into a stacked edge);
/// constraints on three or more blocks become a constraint node whose
/// variable y = (y_1, ..., y_s) carries δ{Σ y_k = b} and couples to each
/// block through A_k x_k − y_k = 0.
CouplingGraph build_coupling_graph(const MultiblockProblem& problem);

/// Two-colouring by breadth-first traversal. Returns the colouring when the
/// graph is bipartite.
std::optional<std::vector<int>> is_bipartite(const CouplingGraph& graph);

struct GraphMetrics {
  int vertex_count = 0;
  int edge_count = 0;
  double average_degree = 0.0;
  std::optional<double> balance_score;
  bool is_bipartite = false;
  int left_count = 0;
  int right_count = 0;
};

/// `partition[v]` in {0, 1} per vertex; balance is min/max side size.
GraphMetrics compute_metrics(const CouplingGraph& graph,
                             const std::optional<std::vector<int>>& partition = std::nullopt);

Json metrics_to_json(const GraphMetrics& m);

Json graph_to_json(const CouplingGraph& g);
CouplingGraph graph_from_json(const Json& j);
/// Graphviz export: variable nodes as circles, constraint nodes as boxes,
/// subdivision nodes as diamonds.
std::string graph_to_dot(const CouplingGraph& g,
                         const std::optional<std::vector<int>>& partition = std::nullopt);

}  // namespace admmforge

#endif  // ADMM_FORGE_COUPLING_GRAPH_HPP_
