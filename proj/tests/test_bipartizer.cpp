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

#include <filesystem>
#include <fstream>

#include "admm_forge/bipartizer.hpp"
#include "admm_forge/generators.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace admmforge;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

CouplingGraph cycle(int n, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return testing_support::graph_from_edges(n, e, rng);
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const auto p = fs::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("BFS splits one edge of the circuit triangle", "[bipartizer]") {
  const auto g = build_coupling_graph(gen_circuit({1, 2, 3}, {1, -1, 0}));
  const auto d = bfs_bipartize(g);
  // Hand simulation: I1 gets colour 0, its neighbours I2 and I3 colour 1;
  // the edge I2–I3 closes the odd cycle and is the only split.
  CHECK(d.coloring == std::vector<int>{0, 1, 1});
  REQUIRE(d.split_count() == 1);
  const int split = g.edge_index("k3");
  CHECK(d.edges[split].split == 1);
  CHECK(d.edges[split].side == 0);
  const auto bg = materialize(g, d);
  CHECK(bg.graph.vertex_count() == 4);
  CHECK(bg.graph.edge_count() == 4);
  CHECK(bg.subdivision_nodes().size() == 1);
}

TEST_CASE("cycles split according to parity", "[bipartizer]") {
  std::mt19937_64 rng(5);
  for (int n = 3; n <= 12; ++n) {
    const auto g = cycle(n, rng);
    for (auto t : {Traversal::Bfs, Traversal::Dfs}) {
      const auto d = bfs_bipartize(g, t);
      CHECK(d.split_count() == n % 2);
      CHECK(oracle::bipartite_union_find(materialize(g, d).graph));
    }
  }
}

TEST_CASE("already bipartite graphs are left alone", "[bipartizer]") {
  std::mt19937_64 rng(8);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 4; ++i) {
    for (int j = 4; j < 7; ++j) e.emplace_back(i, j);
  }
  const auto g = testing_support::graph_from_edges(7, e, rng);
  const auto d = bfs_bipartize(g);
  CHECK(d.split_count() == 0);
  for (const auto& ed : g.edges()) CHECK(d.coloring[ed.a] != d.coloring[ed.b]);
}

TEST_CASE("every decision source materializes bipartite graphs", "[bipartizer]") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 20;
    const auto g = testing_support::random_graph(rng, n, 0.1 + 0.5 * (trial % 3) / 2.0);
    std::map<std::string, int> random_colors;
    for (const auto& v : g.vertices()) random_colors[v.id] = testing_support::uniform_int(rng, 0, 1);
    const std::vector<BipartizationDecision> decisions = {bfs_bipartize(g, Traversal::Bfs),
                                                          bfs_bipartize(g, Traversal::Dfs), basic_decision(g),
                                                          import_decision(g, random_colors)};
    for (const auto& d : decisions) {
      const auto bg = materialize(g, d);
      REQUIRE(oracle::bipartite_union_find(bg.graph));
      CHECK(bg.graph.vertex_count() == n + d.split_count());
      CHECK(bg.graph.edge_count() == g.edge_count() + d.split_count());
      for (const auto& e : bg.graph.edges()) CHECK(bg.side[e.a] == 0);
      for (const auto& e : bg.graph.edges()) CHECK(bg.side[e.b] == 1);
    }
  }
}

TEST_CASE("colouring rule splits monochromatic edges to the other side", "[bipartizer]") {
  std::mt19937_64 rng(3);
  const auto g = cycle(4, rng);
  const auto d = decision_from_coloring(g, {0, 0, 1, 1});
  CHECK(d.split_count() == 2);
  CHECK(d.edges[0].split == 1);  // v0–v1, both 0
  CHECK(d.edges[0].side == 1);
  CHECK(d.edges[1].split == 0);
  CHECK(d.edges[2].split == 1);  // v2–v3, both 1
  CHECK(d.edges[2].side == 0);
  CHECK(d.edges[3].split == 0);

  // Constant colouring: every edge split, all split nodes opposite.
  const auto ones = decision_from_coloring(g, {1, 1, 1, 1});
  CHECK(ones.split_count() == 4);
  for (const auto& e : ones.edges) CHECK(e.side == 0);
  CHECK(oracle::bipartite_union_find(materialize(g, ones).graph));
}

TEST_CASE("edge subdivision preserves the solution set", "[bipartizer]") {
  std::mt19937_64 rng(12);
  const auto g = testing_support::graph_from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, rng, 3);
  const auto d = bfs_bipartize(g);
  const auto bg = materialize(g, d);
  const int split = static_cast<int>(std::find_if(d.edges.begin(), d.edges.end(),
                                                  [](const EdgeDecision& e) { return e.split == 1; }) -
                                     d.edges.begin());
  const auto& orig = g.edge(split);
  const int w = bg.graph.vertex_index("w:" + orig.id);
  REQUIRE(w >= 0);
  CHECK(bg.graph.vertex(w).kind == VertexKind::Subdivision);
  CHECK(bg.graph.vertex(w).dim == orig.rhs.size());
  CHECK(bg.origin_edge[w] == split);

  // Any (x_a, x_b) on the original edge extends by w = Q_a x_a to both halves.
  const Vector xa = oracle::random_vector(rng, g.vertex(orig.a).dim);
  const Matrix Qa = orig.map_a.to_dense(), Qb = orig.map_b.to_dense();
  const Vector xb = oracle::min_norm_solution(Qb, orig.rhs - Qa * xa);
  const double orig_res = (Qa * xa + Qb * xb - orig.rhs).norm();
  const Vector wv = Qa * xa;
  const auto& e1 = bg.graph.edge(bg.graph.edge_index(orig.id + "#1"));
  const auto& e2 = bg.graph.edge(bg.graph.edge_index(orig.id + "#2"));
  auto value_on = [&](int v) -> Vector {
    if (v == w) return wv;
    return bg.graph.vertex(v).id == g.vertex(orig.a).id ? xa : xb;
  };
  auto residual = [&](const Edge& e) {
    return (e.map_a.apply(value_on(e.a)) + e.map_b.apply(value_on(e.b)) - e.rhs).norm();
  };
  CHECK(residual(e1) < 1e-12);
  CHECK(residual(e2) == Approx(orig_res).margin(1e-10));
}

TEST_CASE("assignment files round-trip and reject bad input", "[bipartizer]") {
  std::mt19937_64 rng(4);
  const auto g = cycle(5, rng);
  const auto d = bfs_bipartize(g);
  const auto path = fs::temp_directory_path() / "admm_forge_assign.tsv";
  write_assignment_file(g, d.coloring, path);
  const auto back = import_decision(g, path);
  CHECK(back.coloring == d.coloring);
  CHECK(back.split_count() == d.split_count());

  const auto commented = temp_file("admm_forge_assign_c.tsv", "# header\nv0\t1\n\nv1 0\nv2\t1\nv3\t0\nv4\t1\n");
  CHECK(import_decision(g, commented).coloring == std::vector<int>{1, 0, 1, 0, 1});

  CHECK_THROWS_AS(read_assignment_file(temp_file("admm_forge_bad1.tsv", "v0\t2\n")), std::invalid_argument);
  CHECK_THROWS_AS(read_assignment_file(temp_file("admm_forge_bad2.tsv", "v0\t1\nv0\t0\n")), std::invalid_argument);
  CHECK_THROWS_AS(read_assignment_file(fs::temp_directory_path() / "admm_forge_missing.tsv"), std::runtime_error);

  try {
    import_decision(g, std::map<std::string, int>{{"v0", 0}, {"v1", 1}, {"ghost", 0}});
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("v2") != std::string::npos);
    CHECK(msg.find("ghost") != std::string::npos);
  }
}

TEST_CASE("decision JSON round-trips", "[bipartizer]") {
  std::mt19937_64 rng(6);
  const auto g = testing_support::random_graph(rng, 9, 0.4);
  const auto d = bfs_bipartize(g, Traversal::Dfs);
  const auto back = decision_from_json(g, decision_to_json(g, d));
  CHECK(back.coloring == d.coloring);
  for (size_t e = 0; e < d.edges.size(); ++e) {
    CHECK(back.edges[e].split == d.edges[e].split);
    if (d.edges[e].split) CHECK(back.edges[e].side == d.edges[e].side);
  }
  const auto bj = bipartite_to_json(materialize(g, d));
  CHECK(bj.contains("left"));
  CHECK(bj.contains("subdivision_nodes"));
}

TEST_CASE("contributions match dense references", "[bipartizer]") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing_support::random_graph(rng, 6, 0.5);
    for (int v = 0; v < g.vertex_count(); ++v) {
      const double exact = contribution(g, v, ContributionMode::Exact);
      const double frob = contribution(g, v, ContributionMode::Frobenius);
      CHECK(exact == Approx(oracle::contribution_exact(g, v)).epsilon(1e-6).margin(1e-12));
      CHECK(frob == Approx(oracle::contribution_frobenius(g, v)).epsilon(1e-12).margin(1e-12));
      CHECK(frob >= exact - 1e-9);
    }
  }
  CHECK(contribution_mode_from("exact") == ContributionMode::Exact);
  CHECK_THROWS_AS(contribution_mode_from("spectral"), std::invalid_argument);
}
