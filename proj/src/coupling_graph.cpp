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

#include "admm_forge/coupling_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace admmforge {

const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Variable: return "variable";
    case VertexKind::Constraint: return "constraint";
    case VertexKind::Subdivision: return "subdivision";
  }
  return "?";
}

namespace {

VertexKind vertex_kind_from(const std::string& s) {
  if (s == "variable") return VertexKind::Variable;
  if (s == "constraint") return VertexKind::Constraint;
  if (s == "subdivision") return VertexKind::Subdivision;
  throw std::invalid_argument("unknown vertex kind '" + s + "'");
}

}  // namespace

int CouplingGraph::add_vertex(Vertex v) {
  if (vertex_lookup_.count(v.id)) throw std::invalid_argument("duplicate vertex id '" + v.id + "'");
  const int idx = vertex_count();
  vertex_lookup_.emplace(v.id, idx);
  vertices_.push_back(std::move(v));
  incidence_dirty_ = true;
  return idx;
}

int CouplingGraph::add_edge(Edge e) {
  if (edge_lookup_.count(e.id)) throw std::invalid_argument("duplicate edge id '" + e.id + "'");
  if (e.a < 0 || e.b < 0 || e.a >= vertex_count() || e.b >= vertex_count()) {
    throw std::invalid_argument("edge '" + e.id + "' has an unknown endpoint");
  }
  if (e.a == e.b) throw std::invalid_argument("edge '" + e.id + "' is a self-loop");
  const int idx = edge_count();
  edge_lookup_.emplace(e.id, idx);
  edges_.push_back(std::move(e));
  incidence_dirty_ = true;
  return idx;
}

int CouplingGraph::vertex_index(const std::string& id) const {
  auto it = vertex_lookup_.find(id);
  return it == vertex_lookup_.end() ? -1 : it->second;
}

int CouplingGraph::edge_index(const std::string& id) const {
  auto it = edge_lookup_.find(id);
  return it == edge_lookup_.end() ? -1 : it->second;
}

const std::vector<IncidentEdge>& CouplingGraph::incident(int v) const {
  if (incidence_dirty_) {
    incidence_.assign(vertices_.size(), {});
    for (int e = 0; e < edge_count(); ++e) {
      incidence_[edges_[e].a].push_back({e, edges_[e].b});
      incidence_[edges_[e].b].push_back({e, edges_[e].a});
    }
    for (auto& list : incidence_) {
      std::sort(list.begin(), list.end(), [](const IncidentEdge& x, const IncidentEdge& y) {
        return x.neighbor != y.neighbor ? x.neighbor < y.neighbor : x.edge < y.edge;
      });
    }
    incidence_dirty_ = false;
  }
  return incidence_.at(static_cast<size_t>(v));
}

const LinearMap& CouplingGraph::map_on(int e, int v) const {
  const Edge& ed = edge(e);
  if (ed.a == v) return ed.map_a;
  if (ed.b == v) return ed.map_b;
  throw std::invalid_argument("vertex is not an endpoint of edge '" + ed.id + "'");
}

void CouplingGraph::check() const {
  for (const auto& v : vertices_) {
    if (v.dim <= 0 || v.smooth.dim() != v.dim || v.prox.dim() != v.dim) {
      throw std::invalid_argument("vertex '" + v.id + "' has inconsistent dimensions");
    }
  }
  for (const auto& e : edges_) {
    if (e.a == e.b) throw std::invalid_argument("edge '" + e.id + "' is a self-loop");
    const auto m = e.rhs.size();
    if (e.map_a.in_dim() != vertex(e.a).dim || e.map_b.in_dim() != vertex(e.b).dim ||
        e.map_a.out_dim() != m || e.map_b.out_dim() != m) {
      throw std::invalid_argument("edge '" + e.id + "' maps disagree with endpoint dims or rhs");
    }
  }
}

CouplingGraph build_coupling_graph(const MultiblockProblem& problem) {
  if (const auto v = validate(problem); !v.empty()) {
    throw std::invalid_argument("build_coupling_graph: invalid problem: " + v.front().message);
  }
  CouplingGraph g;
  for (const auto& b : problem.blocks) {
    g.add_vertex({b.id, VertexKind::Variable, b.id, b.dim, b.smooth, b.prox});
  }
  std::map<std::pair<int, int>, int> pair_edge;
  for (const auto& c : problem.constraints) {
    // A block listed twice in one constraint contributes the sum of its maps.
    std::vector<int> order;
    std::map<int, LinearMap> summed;
    for (const auto& t : c.terms) {
      const int bi = problem.block_index(t.block);
      auto it = summed.find(bi);
      if (it == summed.end()) {
        order.push_back(bi);
        summed.emplace(bi, t.map);
      } else {
        it->second = it->second + t.map;
      }
    }
    const auto m = static_cast<int>(c.rhs.size());
    if (order.size() == 2) {
      int i = order[0], j = order[1];
      LinearMap mi = summed.at(i), mj = summed.at(j);
      if (i > j) {
        std::swap(i, j);
        std::swap(mi, mj);
      }
      auto it = pair_edge.find({i, j});
      if (it == pair_edge.end()) {
        pair_edge.emplace(std::make_pair(i, j),
                          g.add_edge({c.id, i, j, std::move(mi), std::move(mj), c.rhs, {c.id}}));
      } else {
        Edge& e = g.mutable_edge(it->second);
        e.map_a = LinearMap::vstack({e.map_a, mi});
        e.map_b = LinearMap::vstack({e.map_b, mj});
        Vector rhs(e.rhs.size() + m);
        rhs << e.rhs, c.rhs;
        e.rhs = std::move(rhs);
        e.sources.push_back(c.id);
      }
      continue;
    }
    const int arity = static_cast<int>(order.size());
    std::string vid = c.id;
    if (g.vertex_index(vid) >= 0) vid = "constraint:" + c.id;
    const int dim = arity * m;
    const int cv = g.add_vertex({vid, VertexKind::Constraint, c.id, dim, SmoothFn::zero(dim),
                                 ProxFn::sum_to_constant(c.rhs, arity)});
    for (int k = 0; k < arity; ++k) {
      std::vector<Triplet> sel;
      for (int r = 0; r < m; ++r) sel.push_back({r, k * m + r, -1.0});
      const int bi = order[k];
      g.add_edge({c.id + "/" + problem.blocks[bi].id, cv, bi, LinearMap::sparse(m, dim, sel),
                  summed.at(bi), Vector::Zero(m), {c.id}});
    }
  }
  return g;
}

std::optional<std::vector<int>> is_bipartite(const CouplingGraph& graph) {
  std::vector<int> color(graph.vertex_count(), -1);
  for (int root = 0; root < graph.vertex_count(); ++root) {
    if (color[root] != -1) continue;
    color[root] = 0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const auto& inc : graph.incident(u)) {
        if (color[inc.neighbor] == -1) {
          color[inc.neighbor] = 1 - color[u];
          queue.push_back(inc.neighbor);
        } else if (color[inc.neighbor] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

GraphMetrics compute_metrics(const CouplingGraph& graph,
                             const std::optional<std::vector<int>>& partition) {
  GraphMetrics m;
  m.vertex_count = graph.vertex_count();
  m.edge_count = graph.edge_count();
  m.average_degree = m.vertex_count == 0 ? 0.0 : 2.0 * m.edge_count / m.vertex_count;
  m.is_bipartite = is_bipartite(graph).has_value();
  if (partition) {
    const auto& side = *partition;
    if (static_cast<int>(side.size()) != graph.vertex_count()) {
      throw std::invalid_argument("compute_metrics: partition size does not match the graph");
    }
    for (int s : side) {
      if (s != 0 && s != 1) throw std::invalid_argument("compute_metrics: partition values must be 0/1");
    }
    for (const auto& e : graph.edges()) {
      if (side[e.a] == side[e.b]) {
        throw std::invalid_argument("compute_metrics: edge '" + e.id + "' does not cross the partition");
      }
    }
    m.left_count = static_cast<int>(std::count(side.begin(), side.end(), 0));
    m.right_count = graph.vertex_count() - m.left_count;
    const int hi = std::max(m.left_count, m.right_count);
    m.balance_score = hi == 0 ? 0.0 : static_cast<double>(std::min(m.left_count, m.right_count)) / hi;
  }
  return m;
}

Json metrics_to_json(const GraphMetrics& m) {
  Json j = {{"vertex_count", m.vertex_count},
            {"edge_count", m.edge_count},
            {"average_degree", m.average_degree},
            {"is_bipartite", m.is_bipartite}};
  if (m.balance_score) {
    j["balance_score"] = *m.balance_score;
    j["left_count"] = m.left_count;
    j["right_count"] = m.right_count;
  } else {
    j["balance_score"] = nullptr;
  }
  return j;
}

Json graph_to_json(const CouplingGraph& g) {
  Json vertices = Json::array();
  for (const auto& v : g.vertices()) {
    vertices.push_back({{"id", v.id},
                        {"kind", to_string(v.kind)},
                        {"source", v.source},
                        {"dim", v.dim},
                        {"smooth", smooth_to_json(v.smooth)},
                        {"prox", prox_to_json(v.prox)}});
  }
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"id", e.id},
                     {"endpoints", {g.vertex(e.a).id, g.vertex(e.b).id}},
                     {"maps", {map_to_json(e.map_a), map_to_json(e.map_b)}},
                     {"rhs", vector_to_json(e.rhs)},
                     {"sources", e.sources}});
  }
  return {{"vertices", vertices}, {"edges", edges}};
}

CouplingGraph graph_from_json(const Json& j) {
  CouplingGraph g;
  for (const auto& v : j.at("vertices")) {
    g.add_vertex({v.at("id").get<std::string>(), vertex_kind_from(v.at("kind").get<std::string>()),
                  v.value("source", v.at("id").get<std::string>()), v.at("dim").get<int>(),
                  smooth_from_json(v.at("smooth")), prox_from_json(v.at("prox"))});
  }
  for (const auto& e : j.at("edges")) {
    const auto& ends = e.at("endpoints");
    const int a = g.vertex_index(ends.at(0).get<std::string>());
    const int b = g.vertex_index(ends.at(1).get<std::string>());
    if (a < 0 || b < 0) {
      throw std::invalid_argument("edge '" + e.at("id").get<std::string>() + "' has an unknown endpoint");
    }
    g.add_edge({e.at("id").get<std::string>(), a, b, map_from_json(e.at("maps").at(0)),
                map_from_json(e.at("maps").at(1)), vector_from_json(e.at("rhs")),
                e.value("sources", std::vector<std::string>{})});
  }
  g.check();
  return g;
}

std::string graph_to_dot(const CouplingGraph& g, const std::optional<std::vector<int>>& partition) {
  std::ostringstream out;
  out << "graph coupling {\n";
  for (int i = 0; i < g.vertex_count(); ++i) {
    const auto& v = g.vertex(i);
    const char* shape = v.kind == VertexKind::Variable     ? "circle"
                        : v.kind == VertexKind::Constraint ? "box"
                                                           : "diamond";
    out << "  \"" << v.id << "\" [shape=" << shape;
    if (partition) out << ", group=" << ((*partition)[i] == 0 ? "L" : "R");
    out << "];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  \"" << g.vertex(e.a).id << "\" -- \"" << g.vertex(e.b).id << "\" [label=\"" << e.id
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace admmforge
