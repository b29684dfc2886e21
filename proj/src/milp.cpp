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

#include "admm_forge/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace admmforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-9;

}  // namespace

MilpObjective milp_objective_from(const std::string& s) {
  if (s == "norm_only") return MilpObjective::NormOnly;
  if (s == "norm_plus_counts") return MilpObjective::NormPlusCounts;
  throw std::invalid_argument("unknown MILP objective '" + s + "'");
}

const char* to_string(MilpStatus s) {
  switch (s) {
    case MilpStatus::Optimal: return "optimal";
    case MilpStatus::GapLimit: return "gap_limit";
    case MilpStatus::TimeLimit: return "time_limit";
    case MilpStatus::NodeLimit: return "node_limit";
  }
  return "?";
}

int MilpModel::continuous_count() const {
  if (balance.weight <= 0.0) return 2;
  return 2 + (balance.cores ? 4 : 2);
}

bool MilpModel::feasible(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) != binary_count()) return false;
  for (int v : x) {
    if (v != 0 && v != 1) return false;
  }
  for (const auto& r : rows) {
    double act = 0.0;
    for (const auto& [k, a] : r.terms) act += a * x[k];
    if (act < r.lo - kFeasTol || act > r.hi + kFeasTol) return false;
  }
  return true;
}

double MilpModel::evaluate(const std::vector<int>& x) const {
  if (!feasible(x)) return kInf;
  double total = 0.0;
  for (int k = 0; k < binary_count(); ++k) total += cost[k] * x[k];
  double tl = 0.0, tr = 0.0;
  for (const auto& [k, c] : t_left) tl = std::max(tl, c * x[k]);
  for (const auto& [k, c] : t_right) tr = std::max(tr, c * x[k]);
  total += t_left_weight * tl + t_right_weight * tr;
  if (balance.weight > 0.0) {
    double nl = 0.0, nr = 0.0;
    for (int v = 0; v < vertex_count; ++v) {
      nl += x[xl(v)];
      nr += x[xr(v)];
    }
    for (int e = 0; e < edge_count; ++e) {
      nl += x[xl_edge(e)];
      nr += x[xr_edge(e)];
    }
    if (balance.cores) {
      total += balance.weight * (std::abs(nl - *balance.cores) + std::abs(nr - *balance.cores));
    } else {
      total += balance.weight * std::abs(nl - nr);
    }
  }
  return total;
}

std::vector<int> MilpModel::encode(const BipartizationDecision& d) const {
  if (static_cast<int>(d.coloring.size()) != vertex_count || static_cast<int>(d.edges.size()) != edge_count) {
    throw std::invalid_argument("decision does not match the MILP model");
  }
  std::vector<int> x(binary_count(), 0);
  for (int v = 0; v < vertex_count; ++v) {
    x[xl(v)] = 1 - d.coloring[v];
    x[xr(v)] = d.coloring[v];
  }
  for (int e = 0; e < edge_count; ++e) {
    if (d.edges[e].split) {
      x[z(e)] = 1;
      x[xl_edge(e)] = 1 - d.edges[e].side;
      x[xr_edge(e)] = d.edges[e].side;
    }
  }
  return x;
}

BipartizationDecision MilpModel::decode(const std::vector<int>& x) const {
  BipartizationDecision d{std::vector<int>(vertex_count), std::vector<EdgeDecision>(edge_count)};
  for (int v = 0; v < vertex_count; ++v) d.coloring[v] = x.at(xr(v));
  for (int e = 0; e < edge_count; ++e) d.edges[e] = {x.at(z(e)), x.at(z(e)) ? x.at(xr_edge(e)) : 0};
  return d;
}

MilpModel build_milp(const CouplingGraph& graph, MilpObjective objective, ContributionMode mode,
                     BalanceOptions balance) {
  for (const auto& e : graph.edges()) {
    if (!e.map_a.all_finite() || !e.map_b.all_finite()) {
      throw std::invalid_argument("build_milp: edge '" + e.id + "' has non-finite map entries");
    }
  }
  MilpModel m;
  m.vertex_count = graph.vertex_count();
  m.edge_count = graph.edge_count();
  m.objective = objective;
  m.mode = mode;
  m.balance = balance;
  const double count_cost = objective == MilpObjective::NormPlusCounts ? 1.0 : 0.0;
  m.t_right_weight = objective == MilpObjective::NormPlusCounts ? 1.0 : 0.0;

  for (int v = 0; v < m.vertex_count; ++v) {
    m.var_names.push_back("xL_v" + std::to_string(v));
    m.var_names.push_back("xR_v" + std::to_string(v));
    m.cost.push_back(count_cost);
    m.cost.push_back(count_cost);
    m.contributions.push_back(contribution(graph, v, mode));
  }
  for (int e = 0; e < m.edge_count; ++e) {
    m.var_names.push_back("z_e" + std::to_string(e));
    m.var_names.push_back("xL_e" + std::to_string(e));
    m.var_names.push_back("xR_e" + std::to_string(e));
    m.cost.push_back(0.0);
    m.cost.push_back(count_cost);
    m.cost.push_back(count_cost);
    m.edge_dims.push_back(static_cast<int>(graph.edge(e).rhs.size()));
    m.edge_endpoints.emplace_back(graph.edge(e).a, graph.edge(e).b);
  }

  for (int v = 0; v < m.vertex_count; ++v) {
    m.rows.push_back({"node_v" + std::to_string(v), {{m.xl(v), 1.0}, {m.xr(v), 1.0}}, 1.0, 1.0});
  }
  for (int e = 0; e < m.edge_count; ++e) {
    const auto [i, j] = m.edge_endpoints[e];
    const std::string s = std::to_string(e);
    m.rows.push_back({"side_e" + s, {{m.xl_edge(e), 1.0}, {m.xr_edge(e), 1.0}, {m.z(e), -1.0}}, 0.0, 0.0});
    m.rows.push_back({"keep_lo_e" + s, {{m.xl(i), 1.0}, {m.xl(j), 1.0}, {m.z(e), 1.0}}, 1.0, kInf});
    m.rows.push_back({"keep_hi_e" + s, {{m.xl(i), 1.0}, {m.xl(j), 1.0}, {m.z(e), -1.0}}, -kInf, 1.0});
    for (const auto& [end, tag] : {std::pair{i, "i"}, std::pair{j, "j"}}) {
      m.rows.push_back({std::string("sub_lo_") + tag + "_e" + s,
                        {{m.xl(end), 1.0}, {m.xl_edge(e), 1.0}, {m.z(e), -1.0}}, 0.0, kInf});
      m.rows.push_back({std::string("sub_hi_") + tag + "_e" + s,
                        {{m.xl(end), 1.0}, {m.xl_edge(e), 1.0}, {m.z(e), 1.0}}, -kInf, 2.0});
    }
  }

  const double sqrt2 = std::sqrt(2.0);
  for (int v = 0; v < m.vertex_count; ++v) m.t_left.emplace_back(m.xl(v), m.contributions[v]);
  for (int e = 0; e < m.edge_count; ++e) m.t_left.emplace_back(m.xl_edge(e), sqrt2);
  if (objective == MilpObjective::NormPlusCounts) {
    for (int v = 0; v < m.vertex_count; ++v) m.t_right.emplace_back(m.xr(v), m.contributions[v]);
    for (int e = 0; e < m.edge_count; ++e) m.t_right.emplace_back(m.xr_edge(e), sqrt2);
  }
  return m;
}

namespace {

void write_terms(std::ostream& out, const std::vector<std::pair<std::string, double>>& terms) {
  bool first = true;
  int on_line = 0;
  for (const auto& [name, c] : terms) {
    if (c == 0.0) continue;
    out << (c < 0 ? " - " : first ? " " : " + ");
    out << std::abs(c) << ' ' << name;
    first = false;
    if (++on_line % 8 == 0) out << "\n   ";
  }
  if (first) out << " 0 " << terms.front().first;
}

}  // namespace

void write_lp(const MilpModel& m, std::ostream& out) {
  out.precision(17);
  out << "\\ bipartization model: " << m.vertex_count << " vertices, " << m.edge_count << " edges\n";
  out << "Minimize\n obj:";
  std::vector<std::pair<std::string, double>> obj;
  for (int k = 0; k < m.binary_count(); ++k) obj.emplace_back(m.var_names[k], m.cost[k]);
  obj.emplace_back("tL", m.t_left_weight);
  obj.emplace_back("tR", m.t_right_weight);
  const bool bal = m.balance.weight > 0.0;
  const int bal_rows = m.balance.cores ? 2 : 1;
  if (bal) {
    for (int r = 0; r < bal_rows; ++r) {
      obj.emplace_back("dp" + std::to_string(r), m.balance.weight);
      obj.emplace_back("dn" + std::to_string(r), m.balance.weight);
    }
  }
  write_terms(out, obj);
  out << "\nSubject To\n";
  auto row_terms = [&m](const MilpRow& r) {
    std::vector<std::pair<std::string, double>> t;
    for (const auto& [k, a] : r.terms) t.emplace_back(m.var_names[k], a);
    return t;
  };
  for (const auto& r : m.rows) {
    if (r.lo == r.hi) {
      out << ' ' << r.name << ':';
      write_terms(out, row_terms(r));
      out << " = " << r.lo << '\n';
      continue;
    }
    if (std::isfinite(r.lo)) {
      out << ' ' << r.name << ':';
      write_terms(out, row_terms(r));
      out << " >= " << r.lo << '\n';
    }
    if (std::isfinite(r.hi)) {
      out << ' ' << r.name << ':';
      write_terms(out, row_terms(r));
      out << " <= " << r.hi << '\n';
    }
  }
  int t_row = 0;
  for (const auto& [k, c] : m.t_left) {
    out << " tl" << t_row++ << ": tL - " << c << ' ' << m.var_names[k] << " >= 0\n";
  }
  t_row = 0;
  for (const auto& [k, c] : m.t_right) {
    out << " tr" << t_row++ << ": tR - " << c << ' ' << m.var_names[k] << " >= 0\n";
  }
  if (bal) {
    // n_L - n_R (or n_side - cores) = dp - dn
    std::vector<std::pair<std::string, double>> nl, nr;
    for (int v = 0; v < m.vertex_count; ++v) {
      nl.emplace_back(m.var_names[m.xl(v)], 1.0);
      nr.emplace_back(m.var_names[m.xr(v)], 1.0);
    }
    for (int e = 0; e < m.edge_count; ++e) {
      nl.emplace_back(m.var_names[m.xl_edge(e)], 1.0);
      nr.emplace_back(m.var_names[m.xr_edge(e)], 1.0);
    }
    if (m.balance.cores) {
      for (int r = 0; r < 2; ++r) {
        auto t = r == 0 ? nl : nr;
        t.emplace_back("dp" + std::to_string(r), -1.0);
        t.emplace_back("dn" + std::to_string(r), 1.0);
        out << " bal" << r << ':';
        write_terms(out, t);
        out << " = " << *m.balance.cores << '\n';
      }
    } else {
      auto t = nl;
      for (const auto& [n, c] : nr) t.emplace_back(n, -c);
      t.emplace_back("dp0", -1.0);
      t.emplace_back("dn0", 1.0);
      out << " bal0:";
      write_terms(out, t);
      out << " = 0\n";
    }
  }
  out << "Bounds\n tL >= 0\n tR >= 0\n";
  if (bal) {
    for (int r = 0; r < bal_rows; ++r) out << " dp" << r << " >= 0\n dn" << r << " >= 0\n";
  }
  out << "Binary\n";
  for (int k = 0; k < m.binary_count(); ++k) out << ' ' << m.var_names[k] << '\n';
  out << "End\n";
}

namespace {

using Assign = std::vector<std::int8_t>;

struct Node {
  Assign a;
  double bound;
  int depth;
  long long seq;
};

struct NodeOrder {
  bool operator()(const Node& x, const Node& y) const {
    if (x.bound != y.bound) return x.bound > y.bound;
    if (x.depth != y.depth) return x.depth < y.depth;
    return x.seq > y.seq;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& m, const MilpOptions& o) : m_(m), opt_(o) {
    const int n = m.binary_count();
    var_rows_.assign(n, {});
    for (int r = 0; r < static_cast<int>(m.rows.size()); ++r) {
      for (const auto& [k, a] : m.rows[r].terms) var_rows_[k].push_back(r);
    }
    tl_coef_.assign(n, 0.0);
    tr_coef_.assign(n, 0.0);
    for (const auto& [k, c] : m.t_left) tl_coef_[k] = std::max(tl_coef_[k], c);
    for (const auto& [k, c] : m.t_right) tr_coef_[k] = std::max(tr_coef_[k], c);

    std::vector<int> verts(m.vertex_count);
    std::iota(verts.begin(), verts.end(), 0);
    std::stable_sort(verts.begin(), verts.end(),
                     [&m](int a, int b) { return m.contributions[a] > m.contributions[b]; });
    std::vector<int> edges(m.edge_count);
    std::iota(edges.begin(), edges.end(), 0);
    std::stable_sort(edges.begin(), edges.end(),
                     [&m](int a, int b) { return m.edge_dims[a] > m.edge_dims[b]; });
    std::vector<char> seen(n, 0);
    for (int v : verts) order_.push_back(MilpModel::xl(v));
    for (int e : edges) order_.push_back(m.z(e));
    for (int k : order_) seen[k] = 1;
    for (int k = 0; k < n; ++k) {
      if (!seen[k]) order_.push_back(k);
    }
    start_ = std::chrono::steady_clock::now();
  }

  MilpResult run(const BipartizationDecision& warm) {
    MilpResult res;
    std::vector<int> x0 = m_.encode(warm);
    const double w0 = m_.evaluate(x0);
    if (!std::isfinite(w0)) throw std::invalid_argument("solve_milp: warm start is infeasible");
    res.warm_start_objective = w0;
    offer(x0, w0);
    improve_by_flips(incumbent_);

    Assign root(m_.binary_count(), -1);
    std::vector<int> all(m_.binary_count());
    std::iota(all.begin(), all.end(), 0);
    bool infeasible_root = !propagate(root, all);
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    double dropped = kInf;
    long long seq = 0;
    MilpStatus status = MilpStatus::Optimal;
    std::optional<Node> dive;
    if (!infeasible_root) dive = Node{root, bound(root), 0, seq++};

    auto lower_bound = [&]() {
      double lb = std::min(dropped, best_);
      if (dive) lb = std::min(lb, dive->bound);
      if (!open.empty()) lb = std::min(lb, open.top().bound);
      return lb;
    };
    auto gap_closed = [&]() {
      const double lb = lower_bound();
      return best_ - lb <= 1e-9 || best_ - lb <= opt_.rel_gap * std::max(std::abs(best_), 1e-12);
    };

    while (true) {
      if (!dive) {
        while (!open.empty() && open.top().bound >= best_ - 1e-9) open.pop();
        if (open.empty()) break;
        dive = open.top();
        open.pop();
      }
      if (gap_closed()) {
        status = best_ - lower_bound() <= 1e-9 ? MilpStatus::Optimal : MilpStatus::GapLimit;
        break;
      }
      if (++nodes_ % 256 == 0 && elapsed() > opt_.time_limit_s) {
        status = MilpStatus::TimeLimit;
        break;
      }
      if (nodes_ >= opt_.node_limit) {
        status = MilpStatus::NodeLimit;
        break;
      }
      Node node = std::move(*dive);
      dive.reset();
      if (node.bound >= best_ - 1e-9) continue;
      const int k = pick(node.a);
      if (k < 0) {
        std::vector<int> x(node.a.begin(), node.a.end());
        if (offer(x, m_.evaluate(x))) improve_by_flips(incumbent_);
        continue;
      }
      std::vector<Node> kids;
      for (int val : {1, 0}) {
        Assign a = node.a;
        a[k] = static_cast<std::int8_t>(val);
        if (!propagate(a, {k})) continue;
        const double b = bound(a);
        if (b >= best_ - 1e-9) continue;
        kids.push_back({std::move(a), b, node.depth + 1, seq++});
      }
      if (kids.empty()) continue;
      if (kids.size() == 2 && kids[1].bound < kids[0].bound) std::swap(kids[0], kids[1]);
      dive = std::move(kids[0]);
      if (kids.size() == 2) {
        if (open.size() >= opt_.max_open_nodes) {
          dropped = std::min(dropped, kids[1].bound);
        } else {
          open.push(std::move(kids[1]));
        }
      }
    }

    const double lb = std::min(lower_bound(), best_);
    if (status == MilpStatus::Optimal && best_ - lb > 1e-9) {
      status = best_ - lb <= opt_.rel_gap * std::abs(best_) ? MilpStatus::GapLimit : MilpStatus::NodeLimit;
    }
    res.assignment = incumbent_;
    res.decision = m_.decode(incumbent_);
    res.objective = best_;
    res.bound = status == MilpStatus::Optimal ? best_ : lb;
    res.gap = best_ > 0 ? (best_ - res.bound) / std::abs(best_) : 0.0;
    res.status = status;
    res.nodes = nodes_;
    res.seconds = elapsed();
    return res;
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  // Keeps the better of the incumbent and x; ties go to the
  // lexicographically smaller assignment.
  bool offer(const std::vector<int>& x, double value) {
    if (!std::isfinite(value)) return false;
    if (value < best_ - 1e-12 || (std::abs(value - best_) <= 1e-12 && x < incumbent_)) {
      best_ = value;
      incumbent_ = x;
      return true;
    }
    return false;
  }

  std::vector<int> from_coloring(const std::vector<int>& c) const {
    std::vector<int> x(m_.binary_count(), 0);
    for (int v = 0; v < m_.vertex_count; ++v) {
      x[MilpModel::xl(v)] = 1 - c[v];
      x[MilpModel::xr(v)] = c[v];
    }
    for (int e = 0; e < m_.edge_count; ++e) {
      const auto [i, j] = m_.edge_endpoints[e];
      if (c[i] == c[j]) {
        x[m_.z(e)] = 1;
        x[m_.xl_edge(e)] = c[i];
        x[m_.xr_edge(e)] = 1 - c[i];
      }
    }
    return x;
  }

  // Best-improvement single-vertex recolouring.
  void improve_by_flips(std::vector<int> x) {
    std::vector<int> c(m_.vertex_count);
    for (int v = 0; v < m_.vertex_count; ++v) c[v] = x[MilpModel::xr(v)];
    double cur = m_.evaluate(from_coloring(c));
    offer(from_coloring(c), cur);
    while (elapsed() < opt_.time_limit_s) {
      int best_v = -1;
      double best_val = cur;
      for (int v = 0; v < m_.vertex_count; ++v) {
        c[v] = 1 - c[v];
        const double val = m_.evaluate(from_coloring(c));
        c[v] = 1 - c[v];
        if (val < best_val - 1e-12) {
          best_val = val;
          best_v = v;
        }
      }
      if (best_v < 0) break;
      c[best_v] = 1 - c[best_v];
      cur = best_val;
      offer(from_coloring(c), cur);
    }
  }

  int pick(const Assign& a) const {
    for (int k : order_) {
      if (a[k] < 0) return k;
    }
    return -1;
  }

  bool propagate(Assign& a, const std::vector<int>& changed) const {
    std::vector<int> work;
    std::vector<char> queued(m_.rows.size(), 0);
    auto enqueue_var = [&](int k) {
      for (int r : var_rows_[k]) {
        if (!queued[r]) {
          queued[r] = 1;
          work.push_back(r);
        }
      }
    };
    for (int k : changed) enqueue_var(k);
    while (!work.empty()) {
      const int r = work.back();
      work.pop_back();
      queued[r] = 0;
      const auto& row = m_.rows[r];
      double lo_act = 0.0, hi_act = 0.0;
      for (const auto& [k, c] : row.terms) {
        if (a[k] >= 0) {
          lo_act += c * a[k];
          hi_act += c * a[k];
        } else {
          lo_act += std::min(0.0, c);
          hi_act += std::max(0.0, c);
        }
      }
      if (lo_act > row.hi + kFeasTol || hi_act < row.lo - kFeasTol) return false;
      for (const auto& [k, c] : row.terms) {
        if (a[k] >= 0) continue;
        const double lo_wo = lo_act - std::min(0.0, c);
        const double hi_wo = hi_act - std::max(0.0, c);
        const bool one_ok = lo_wo + c <= row.hi + kFeasTol && hi_wo + c >= row.lo - kFeasTol;
        const bool zero_ok = lo_wo <= row.hi + kFeasTol && hi_wo >= row.lo - kFeasTol;
        if (!one_ok && !zero_ok) return false;
        if (one_ok != zero_ok) {
          a[k] = one_ok ? 1 : 0;
          lo_act = lo_wo + c * a[k];
          hi_act = hi_wo + c * a[k];
          enqueue_var(k);
        }
      }
    }
    return true;
  }

  // Valid since every objective coefficient is nonnegative: forced linear
  // terms, forced t terms, the cheaper side of each undecided vertex, and
  // the smallest t increase some undecided vertex must cause.
  double bound(const Assign& a) const {
    double lin = 0.0, tl = 0.0, tr = 0.0;
    for (int k = 0; k < m_.binary_count(); ++k) {
      if (a[k] == 1) {
        lin += m_.cost[k];
        tl = std::max(tl, tl_coef_[k]);
        tr = std::max(tr, tr_coef_[k]);
      }
    }
    double extra = 0.0;
    for (int v = 0; v < m_.vertex_count; ++v) {
      const int l = MilpModel::xl(v), r = MilpModel::xr(v);
      if (a[l] >= 0 || a[r] >= 0) continue;
      lin += std::min(m_.cost[l], m_.cost[r]);
      const double up_l = m_.t_left_weight * std::max(0.0, tl_coef_[l] - tl);
      const double up_r = m_.t_right_weight * std::max(0.0, tr_coef_[r] - tr);
      extra = std::max(extra, std::min(up_l, up_r));
    }
    return lin + m_.t_left_weight * tl + m_.t_right_weight * tr + extra;
  }

  const MilpModel& m_;
  MilpOptions opt_;
  std::vector<std::vector<int>> var_rows_;
  std::vector<double> tl_coef_, tr_coef_;
  std::vector<int> order_;
  std::chrono::steady_clock::time_point start_;
  std::vector<int> incumbent_;
  double best_ = kInf;
  long long nodes_ = 0;
};

}  // namespace

MilpResult solve_milp(const MilpModel& model, const BipartizationDecision& warm_start,
                      const MilpOptions& options) {
  if (options.rel_gap < 0 || options.time_limit_s <= 0) {
    throw std::invalid_argument("solve_milp: rel_gap must be >= 0 and time_limit positive");
  }
  return BranchAndBound(model, options).run(warm_start);
}

MilpResult milp_bipartize(const CouplingGraph& graph, const MilpOptions& options, MilpObjective objective,
                          ContributionMode mode, BalanceOptions balance) {
  const MilpModel model = build_milp(graph, objective, mode, balance);
  return solve_milp(model, bfs_bipartize(graph), options);
}

}  // namespace admmforge
