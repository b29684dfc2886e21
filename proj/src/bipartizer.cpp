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

#include "admm_forge/bipartizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <fstream>
#include <stdexcept>

namespace admmforge {

int BipartizationDecision::split_count() const {
  int n = 0;
  for (const auto& e : edges) n += e.split;
  return n;
}

BipartizationDecision bfs_bipartize(const CouplingGraph& graph, Traversal traversal) {
  const int nv = graph.vertex_count();
  BipartizationDecision d{std::vector<int>(nv, -1), std::vector<EdgeDecision>(graph.edge_count())};
  int s = 0;
  for (int v = 0; v < nv; ++v) {
    if (d.coloring[v] != -1) continue;
    d.coloring[v] = s;
    std::deque<int> frontier{v};
    while (!frontier.empty()) {
      int u;
      if (traversal == Traversal::Bfs) {
        u = frontier.front();
        frontier.pop_front();
      } else {
        u = frontier.back();
        frontier.pop_back();
      }
      const int p = d.coloring[u];
      for (const auto& inc : graph.incident(u)) {
        const int w = inc.neighbor;
        auto& sigma = d.edges[inc.edge];
        if (d.coloring[w] == -1) {
          d.coloring[w] = 1 - p;
          frontier.push_back(w);
        } else if (d.coloring[w] == p && sigma.split == 0 && sigma.side == 0) {
          sigma = {1, 1 - p};
        }
      }
    }
    s = 1 - s;
  }
  return d;
}

BipartizationDecision decision_from_coloring(const CouplingGraph& graph, const std::vector<int>& coloring) {
  if (static_cast<int>(coloring.size()) != graph.vertex_count()) {
    throw std::invalid_argument("colouring size does not match the graph");
  }
  BipartizationDecision d{coloring, std::vector<EdgeDecision>(graph.edge_count())};
  for (int e = 0; e < graph.edge_count(); ++e) {
    const int ci = coloring[graph.edge(e).a];
    const int cj = coloring[graph.edge(e).b];
    if (ci == cj) d.edges[e] = {1, 1 - ci};
  }
  return d;
}

BipartizationDecision basic_decision(const CouplingGraph& graph) {
  return decision_from_coloring(graph, std::vector<int>(graph.vertex_count(), 0));
}

std::map<std::string, int> read_assignment_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open assignment file '" + path.string() + "'");
  std::map<std::string, int> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto sep = line.rfind('\t');
    if (sep == std::string::npos) sep = line.rfind(' ');
    const auto where = path.string() + ":" + std::to_string(lineno);
    if (sep == std::string::npos) throw std::invalid_argument(where + ": expected 'vertex_id<TAB>color'");
    std::string id = line.substr(0, sep);
    while (!id.empty() && std::isspace(static_cast<unsigned char>(id.back()))) id.pop_back();
    const std::string color = line.substr(sep + 1);
    if (color != "0" && color != "1") throw std::invalid_argument(where + ": color must be 0 or 1");
    if (!out.emplace(id, color == "1" ? 1 : 0).second) {
      throw std::invalid_argument(where + ": vertex '" + id + "' listed twice");
    }
  }
  return out;
}

void write_assignment_file(const CouplingGraph& graph, const std::vector<int>& coloring,
                           const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "# vertex_id\tcolor\n";
  for (int v = 0; v < graph.vertex_count(); ++v) out << graph.vertex(v).id << '\t' << coloring.at(v) << '\n';
}

BipartizationDecision import_decision(const CouplingGraph& graph,
                                      const std::map<std::string, int>& assignment) {
  std::vector<int> coloring(graph.vertex_count(), -1);
  std::vector<std::string> unknown;
  for (const auto& [id, c] : assignment) {
    const int v = graph.vertex_index(id);
    if (v < 0) {
      unknown.push_back(id);
    } else {
      coloring[v] = c;
    }
  }
  std::vector<std::string> missing;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (coloring[v] == -1) missing.push_back(graph.vertex(v).id);
  }
  if (!missing.empty() || !unknown.empty()) {
    std::string msg = "assignment does not match the graph:";
    auto join = [](const std::vector<std::string>& ids) {
      std::string s;
      for (const auto& id : ids) s += (s.empty() ? "" : ", ") + id;
      return s;
    };
    if (!missing.empty()) msg += " missing vertices [" + join(missing) + "]";
    if (!unknown.empty()) msg += " unknown vertices [" + join(unknown) + "]";
    throw std::invalid_argument(msg);
  }
  return decision_from_coloring(graph, coloring);
}

BipartizationDecision import_decision(const CouplingGraph& graph, const std::filesystem::path& path) {
  return import_decision(graph, read_assignment_file(path));
}

Json decision_to_json(const CouplingGraph& graph, const BipartizationDecision& d) {
  Json coloring = Json::object();
  for (int v = 0; v < graph.vertex_count(); ++v) coloring[graph.vertex(v).id] = d.coloring.at(v);
  Json edges = Json::object();
  for (int e = 0; e < graph.edge_count(); ++e) {
    edges[graph.edge(e).id] = {d.edges.at(e).split, d.edges.at(e).side};
  }
  return {{"coloring", coloring}, {"edge_decisions", edges}};
}

BipartizationDecision decision_from_json(const CouplingGraph& graph, const Json& j) {
  BipartizationDecision d{std::vector<int>(graph.vertex_count(), -1),
                          std::vector<EdgeDecision>(graph.edge_count(), {-1, -1})};
  for (const auto& [id, c] : j.at("coloring").items()) {
    const int v = graph.vertex_index(id);
    if (v < 0) throw std::invalid_argument("decision names unknown vertex '" + id + "'");
    d.coloring[v] = c.get<int>();
  }
  for (const auto& [id, s] : j.at("edge_decisions").items()) {
    const int e = graph.edge_index(id);
    if (e < 0) throw std::invalid_argument("decision names unknown edge '" + id + "'");
    d.edges[e] = {s.at(0).get<int>(), s.at(1).get<int>()};
  }
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (d.coloring[v] != 0 && d.coloring[v] != 1) {
      throw std::invalid_argument("decision lacks a 0/1 colour for vertex '" + graph.vertex(v).id + "'");
    }
  }
  for (int e = 0; e < graph.edge_count(); ++e) {
    if (d.edges[e].split < 0) {
      throw std::invalid_argument("decision lacks edge '" + graph.edge(e).id + "'");
    }
  }
  return d;
}

std::vector<int> BipartiteGraph::left() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(side.size()); ++v) {
    if (side[v] == 0) out.push_back(v);
  }
  return out;
}

std::vector<int> BipartiteGraph::right() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(side.size()); ++v) {
    if (side[v] == 1) out.push_back(v);
  }
  return out;
}

std::vector<int> BipartiteGraph::subdivision_nodes() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(origin_edge.size()); ++v) {
    if (origin_edge[v] >= 0) out.push_back(v);
  }
  return out;
}

namespace {

// Adds an edge with the left endpoint first.
void add_oriented(BipartiteGraph& bg, Edge e) {
  if (bg.side[e.a] == bg.side[e.b]) {
    throw std::logic_error("decision does not yield a bipartite graph: edge '" + e.id +
                           "' joins two vertices on side " + std::to_string(bg.side[e.a]));
  }
  if (bg.side[e.a] == 1) {
    std::swap(e.a, e.b);
    std::swap(e.map_a, e.map_b);
  }
  bg.graph.add_edge(std::move(e));
}

}  // namespace

BipartiteGraph materialize(const CouplingGraph& graph, const BipartizationDecision& decision) {
  if (static_cast<int>(decision.coloring.size()) != graph.vertex_count() ||
      static_cast<int>(decision.edges.size()) != graph.edge_count()) {
    throw std::invalid_argument("materialize: decision does not cover the graph");
  }
  BipartiteGraph bg;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    const int c = decision.coloring[v];
    if (c != 0 && c != 1) throw std::invalid_argument("materialize: colour must be 0 or 1");
    bg.graph.add_vertex(graph.vertex(v));
    bg.side.push_back(c);
    bg.origin_edge.push_back(-1);
  }
  for (int ei = 0; ei < graph.edge_count(); ++ei) {
    const Edge& e = graph.edge(ei);
    const auto& sigma = decision.edges[ei];
    if (sigma.split == 0) {
      add_oriented(bg, e);
      continue;
    }
    const int m = static_cast<int>(e.rhs.size());
    const int w = bg.graph.add_vertex(
        {"w:" + e.id, VertexKind::Subdivision, e.id, m, SmoothFn::zero(m), ProxFn::zero(m)});
    bg.side.push_back(sigma.side);
    bg.origin_edge.push_back(ei);
    add_oriented(bg, {e.id + "#1", e.a, w, e.map_a, LinearMap::scaled_identity(m, -1.0),
                      Vector::Zero(m), e.sources});
    add_oriented(bg, {e.id + "#2", e.b, w, e.map_b, LinearMap::identity(m), e.rhs, e.sources});
  }
  if (!is_bipartite(bg.graph)) throw std::logic_error("materialize: result is not bipartite");
  return bg;
}

Json bipartite_to_json(const BipartiteGraph& g) {
  Json j = graph_to_json(g.graph);
  Json left = Json::array(), right = Json::array(), sub = Json::array();
  for (int v : g.left()) left.push_back(g.graph.vertex(v).id);
  for (int v : g.right()) right.push_back(g.graph.vertex(v).id);
  for (int v : g.subdivision_nodes()) {
    sub.push_back({{"id", g.graph.vertex(v).id}, {"origin_edge", g.graph.vertex(v).source}});
  }
  j["left"] = left;
  j["right"] = right;
  j["subdivision_nodes"] = sub;
  return j;
}

ContributionMode contribution_mode_from(const std::string& s) {
  if (s == "exact") return ContributionMode::Exact;
  if (s == "frobenius") return ContributionMode::Frobenius;
  throw std::invalid_argument("unknown contribution mode '" + s + "'");
}

const char* to_string(ContributionMode m) {
  return m == ContributionMode::Exact ? "exact" : "frobenius";
}

double contribution(const CouplingGraph& graph, int vertex, ContributionMode mode) {
  const auto& incident = graph.incident(vertex);
  if (mode == ContributionMode::Frobenius) {
    double sq = 0.0;
    for (const auto& inc : incident) {
      const double f = graph.map_on(inc.edge, vertex).frobenius_norm();
      sq += f * f;
    }
    return std::sqrt(sq);
  }
  if (incident.empty()) return 0.0;
  const int n = graph.vertex(vertex).dim;
  Matrix g = Matrix::Zero(n, n);
  for (const auto& inc : incident) g += graph.map_on(inc.edge, vertex).gram();
  return std::sqrt(std::max(0.0, power_iteration_max_eigenvalue(g)));
}

}  // namespace admmforge
