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

#include "admm_forge/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace admmforge {

MultiblockProblem gen_circuit(const std::array<double, 3>& R, const std::array<double, 3>& J) {
  for (double r : R) {
    if (!(r > 0)) throw std::invalid_argument("gen_circuit: resistances must be positive");
  }
  const double scale = std::max({std::abs(J[0]), std::abs(J[1]), std::abs(J[2]), 1.0});
  if (std::abs(J[0] + J[1] + J[2]) > 1e-12 * scale) {
    throw std::invalid_argument("gen_circuit: injections must sum to zero");
  }
  MultiblockProblem p;
  for (int i = 0; i < 3; ++i) {
    p.blocks.push_back({"I" + std::to_string(i + 1), 1, SmoothFn::quadratic(Matrix::Constant(1, 1, 2 * R[i]), Vector::Zero(1)),
                        ProxFn::zero(1)});
  }
  auto kcl = [&](const char* id, const char* plus, const char* minus, double rhs) {
    p.constraints.push_back({id,
                             {{plus, LinearMap::identity(1)}, {minus, LinearMap::scaled_identity(1, -1.0)}},
                             Vector::Constant(1, rhs)});
  };
  kcl("k1", "I1", "I3", J[0]);
  kcl("k2", "I2", "I1", J[1]);
  kcl("k3", "I3", "I2", J[2]);
  return p;
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Flows on a 2^-16 grid keep every nodal sum exact in double precision.
double on_grid(double v) { return std::floor(v * 65536.0) / 65536.0; }

}  // namespace

NetworkFlowInstance gen_network_flow(const NetworkFlowSpec& spec) {
  const int n = spec.node_count;
  const long long m = spec.arc_count;
  if (n < 3) throw std::invalid_argument("gen_network_flow: node_count must be at least 3");
  if (m < n) throw std::invalid_argument("gen_network_flow: arc_count must be at least node_count");
  if (m > static_cast<long long>(n) * (n - 1)) {
    throw std::invalid_argument("gen_network_flow: arc_count exceeds the number of ordered node pairs");
  }
  if (spec.degree2_fraction < 0 || spec.degree2_fraction > 1) {
    throw std::invalid_argument("gen_network_flow: degree2_fraction must lie in [0, 1]");
  }
  std::mt19937_64 rng(spec.seed);

  std::vector<std::pair<int, int>> undirected;
  std::set<std::pair<int, int>> used;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    undirected.emplace_back(std::min(i, j), std::max(i, j));
    used.insert(undirected.back());
  }
  std::vector<int> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = i;
  std::shuffle(nodes.begin(), nodes.end(), rng);
  const int keep2 = static_cast<int>(std::lround(spec.degree2_fraction * n));
  std::vector<char> protect(n, 0);
  for (int k = 0; k < keep2; ++k) protect[nodes[k]] = 1;

  // Extra undirected edges: first among unprotected nodes, then any pair.
  const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  const long long extra_undirected = std::min(m, pairs) - n;
  for (int phase = 0; phase < 2 && static_cast<long long>(undirected.size()) - n < extra_undirected; ++phase) {
    std::vector<std::pair<int, int>> cand;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (used.count({i, j})) continue;
        if (phase == 0 && (protect[i] || protect[j])) continue;
        cand.emplace_back(i, j);
      }
    }
    std::shuffle(cand.begin(), cand.end(), rng);
    for (const auto& e : cand) {
      if (static_cast<long long>(undirected.size()) - n >= extra_undirected) break;
      undirected.push_back(e);
      used.insert(e);
    }
  }

  NetworkFlowInstance inst;
  for (const auto& [i, j] : undirected) {
    if (std::bernoulli_distribution(0.5)(rng)) {
      inst.arcs.emplace_back(i, j);
    } else {
      inst.arcs.emplace_back(j, i);
    }
  }
  // Beyond the undirected pairs: antiparallel copies of existing arcs.
  if (m > pairs) {
    std::vector<int> order(undirected.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::shuffle(order.begin(), order.end(), rng);
    for (long long k = 0; k < m - pairs; ++k) {
      const auto [t, h] = inst.arcs[order[k]];
      inst.arcs.emplace_back(h, t);
    }
  }

  const auto na = inst.arcs.size();
  for (size_t a = 0; a < na; ++a) {
    inst.cost.push_back(uniform(rng, 0.0, spec.cost_max));
    inst.capacity.push_back(uniform(rng, 0.0, spec.capacity_max));
  }
  for (size_t a = 0; a < na; ++a) inst.flow.push_back(on_grid(uniform(rng, 0.0, inst.capacity[a])));

  auto supplies = [&inst, n]() {
    std::vector<double> b(n, 0.0);
    for (size_t a = 0; a < inst.arcs.size(); ++a) {
      b[inst.arcs[a].first] += inst.flow[a];
      b[inst.arcs[a].second] -= inst.flow[a];
    }
    return b;
  };
  inst.supply = supplies();
  double bmax = 0.0;
  for (double v : inst.supply) bmax = std::max(bmax, std::abs(v));
  if (bmax > spec.supply_bound) {
    const double s = spec.supply_bound / bmax;
    for (double& f : inst.flow) f = on_grid(f * s);
    inst.supply = supplies();
  }

  for (size_t a = 0; a < na; ++a) {
    inst.problem.blocks.push_back({"a" + std::to_string(a), 1, SmoothFn::linear(Vector::Constant(1, inst.cost[a])),
                                   ProxFn::box(Vector::Zero(1), Vector::Constant(1, inst.capacity[a]))});
  }
  std::vector<std::vector<ConstraintTerm>> terms(n);
  for (size_t a = 0; a < na; ++a) {
    const std::string id = "a" + std::to_string(a);
    terms[inst.arcs[a].first].push_back({id, LinearMap::identity(1)});
    terms[inst.arcs[a].second].push_back({id, LinearMap::scaled_identity(1, -1.0)});
  }
  for (int i = 0; i < n; ++i) {
    inst.problem.constraints.push_back({"n" + std::to_string(i), terms[i], Vector::Constant(1, inst.supply[i])});
  }
  return inst;
}

ConsensusInstance gen_consensus_ls(const ConsensusSpec& spec) {
  const int n = spec.agent_count;
  if (n < 2) throw std::invalid_argument("gen_consensus_ls: agent_count must be at least 2");
  if (spec.rows <= 0 || spec.cols <= 0) throw std::invalid_argument("gen_consensus_ls: dims must be positive");
  if (!(spec.p_low_factor > 0) || spec.p_low_factor > spec.p_high_factor) {
    throw std::invalid_argument("gen_consensus_ls: connectivity factors must satisfy 0 < low <= high");
  }
  // small agent counts push the range past 1; a complete graph is the cap
  const double p_lo = std::min(1.0, spec.p_low_factor / n), p_hi = std::min(1.0, spec.p_high_factor / n);
  if (spec.noise_std < 0) throw std::invalid_argument("gen_consensus_ls: noise_std must be >= 0");
  std::mt19937_64 rng(spec.seed);
  ConsensusInstance inst;
  inst.p = uniform(rng, p_lo, p_hi);
  const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
  const long long target =
      std::clamp<long long>(std::llround(inst.p * n * (n - 1) / 2.0), n - 1, max_edges);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::set<std::pair<int, int>> used;
  for (int k = 1; k < n; ++k) {
    const int parent = order[std::uniform_int_distribution<int>(0, k - 1)(rng)];
    const int child = order[k];
    used.emplace(std::min(parent, child), std::max(parent, child));
  }
  std::vector<std::pair<int, int>> cand;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!used.count({i, j})) cand.emplace_back(i, j);
    }
  }
  std::shuffle(cand.begin(), cand.end(), rng);
  for (size_t k = 0; static_cast<long long>(used.size()) < target; ++k) used.insert(cand[k]);
  inst.edges.assign(used.begin(), used.end());

  std::normal_distribution<double> normal(0.0, 1.0);
  inst.x_true = Vector(spec.cols);
  for (int k = 0; k < spec.cols; ++k) inst.x_true[k] = normal(rng);
  for (int i = 0; i < n; ++i) {
    Matrix Q(spec.rows, spec.cols);
    for (int r = 0; r < spec.rows; ++r) {
      for (int c = 0; c < spec.cols; ++c) Q(r, c) = normal(rng);
    }
    Vector q = Q * inst.x_true;
    for (int r = 0; r < spec.rows; ++r) q[r] += spec.noise_std * normal(rng);
    inst.Q.push_back(std::move(Q));
    inst.q.push_back(std::move(q));
  }

  const int d = spec.cols;
  auto agent_block = [&](int i) {
    return Block{"x" + std::to_string(i), d, SmoothFn::least_squares(inst.Q[i], inst.q[i]), ProxFn::zero(d)};
  };
  for (int i = 0; i < n; ++i) {
    inst.standard_form.blocks.push_back(agent_block(i));
    inst.direct_form.blocks.push_back(agent_block(i));
  }
  for (const auto& [i, j] : inst.edges) {
    const std::string xi = "x" + std::to_string(i), xj = "x" + std::to_string(j);
    const std::string tag = std::to_string(i) + "_" + std::to_string(j);
    const std::string zid = "z" + tag;
    inst.standard_form.blocks.push_back({zid, d, SmoothFn::zero(d), ProxFn::zero(d)});
    const auto I = LinearMap::identity(d), minus_I = LinearMap::scaled_identity(d, -1.0);
    inst.standard_form.constraints.push_back({"c" + tag + "_i", {{xi, I}, {zid, minus_I}}, Vector::Zero(d)});
    inst.standard_form.constraints.push_back({"c" + tag + "_j", {{xj, I}, {zid, minus_I}}, Vector::Zero(d)});
    inst.direct_form.constraints.push_back({"e" + tag, {{xi, I}, {xj, minus_I}}, Vector::Zero(d)});
  }
  return inst;
}

Json network_flow_spec_to_json(const NetworkFlowSpec& s) {
  return {{"family", "network_flow"},   {"node_count", s.node_count},
          {"arc_count", s.arc_count},    {"cost_max", s.cost_max},
          {"capacity_max", s.capacity_max}, {"degree2_fraction", s.degree2_fraction},
          {"supply_bound", s.supply_bound}, {"seed", s.seed}};
}

Json consensus_spec_to_json(const ConsensusSpec& s) {
  return {{"family", "consensus_ls"}, {"agent_count", s.agent_count}, {"rows", s.rows},
          {"cols", s.cols},           {"p_low_factor", s.p_low_factor}, {"p_high_factor", s.p_high_factor},
          {"noise_std", s.noise_std}, {"seed", s.seed}};
}

}  // namespace admmforge
