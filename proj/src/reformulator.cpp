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

#include "admm_forge/reformulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace admmforge {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Original: return "original";
    case Provenance::ConstraintNode: return "constraint";
    case Provenance::Subdivision: return "subdivision";
  }
  return "?";
}

std::vector<std::vector<int>> TwoBlockProblem::left_couplings() const {
  std::vector<std::vector<int>> out(left.size());
  for (int e = 0; e < static_cast<int>(couplings.size()); ++e) out[couplings[e].left].push_back(e);
  return out;
}

std::vector<std::vector<int>> TwoBlockProblem::right_couplings() const {
  std::vector<std::vector<int>> out(right.size());
  for (int e = 0; e < static_cast<int>(couplings.size()); ++e) out[couplings[e].right].push_back(e);
  return out;
}

int TwoBlockProblem::row_count() const {
  int n = 0;
  for (const auto& c : couplings) n += static_cast<int>(c.rhs.size());
  return n;
}

namespace {

Provenance provenance_of(VertexKind k) {
  switch (k) {
    case VertexKind::Variable: return Provenance::Original;
    case VertexKind::Constraint: return Provenance::ConstraintNode;
    case VertexKind::Subdivision: return Provenance::Subdivision;
  }
  return Provenance::Original;
}

TwoBlockProblem assemble_impl(const BipartiteGraph& bg, const SideObjectives* objectives,
                              ContributionMode norm_mode) {
  const CouplingGraph& g = bg.graph;
  std::vector<int> order(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&g](int a, int b) {
    return static_cast<int>(g.vertex(a).kind) < static_cast<int>(g.vertex(b).kind);
  });

  TwoBlockProblem p;
  p.norm_mode = norm_mode;
  std::vector<int> slot(g.vertex_count(), -1);
  for (int v : order) {
    const Vertex& vx = g.vertex(v);
    SideBlock b{vx.id, vx.dim, vx.smooth, vx.prox, provenance_of(vx.kind), vx.source};
    if (objectives) {
      auto it = objectives->find(vx.id);
      if (it == objectives->end()) {
        throw std::invalid_argument("assemble: vertex '" + vx.id + "' has no objective parts");
      }
      b.smooth = it->second.first;
      b.prox = it->second.second;
      if (b.smooth.dim() != vx.dim || b.prox.dim() != vx.dim) {
        throw std::invalid_argument("assemble: objective of '" + vx.id + "' has the wrong dimension");
      }
    }
    auto& side = bg.side.at(v) == 0 ? p.left : p.right;
    slot[v] = static_cast<int>(side.size());
    side.push_back(std::move(b));
  }
  for (const auto& e : g.edges()) {
    if (bg.side[e.a] != 0 || bg.side[e.b] != 1) {
      throw std::invalid_argument("assemble: edge '" + e.id + "' is not oriented left to right");
    }
    p.couplings.push_back({e.id, slot[e.a], slot[e.b], e.map_a, e.map_b, e.rhs});
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    const double c = contribution(g, v, norm_mode);
    double& n = bg.side[v] == 0 ? p.norm_a : p.norm_b;
    n = std::max(n, c);
  }
  return p;
}

void check_side(const std::vector<SideBlock>& blocks, const SidePoint& pt, const char* name) {
  if (pt.size() != blocks.size()) throw std::invalid_argument(std::string(name) + " has the wrong block count");
  for (size_t i = 0; i < pt.size(); ++i) {
    if (pt[i].size() != blocks[i].dim) {
      throw std::invalid_argument(std::string(name) + " block '" + blocks[i].id + "' has the wrong dimension");
    }
  }
}

}  // namespace

TwoBlockProblem assemble(const BipartiteGraph& bipartite, ContributionMode norm_mode) {
  return assemble_impl(bipartite, nullptr, norm_mode);
}

TwoBlockProblem assemble(const BipartiteGraph& bipartite, const SideObjectives& objectives,
                         ContributionMode norm_mode) {
  return assemble_impl(bipartite, &objectives, norm_mode);
}

std::vector<Vector> residual(const TwoBlockProblem& p, const SidePoint& x, const SidePoint& z) {
  check_side(p.left, x, "x");
  check_side(p.right, z, "z");
  std::vector<Vector> out;
  out.reserve(p.couplings.size());
  for (const auto& c : p.couplings) {
    Vector r = -c.rhs;
    c.A.apply_add(x[c.left], r);
    c.B.apply_add(z[c.right], r);
    out.push_back(std::move(r));
  }
  return out;
}

double primal_residual_inf(const TwoBlockProblem& p, const SidePoint& x, const SidePoint& z) {
  double worst = 0.0;
  for (const auto& r : residual(p, x, z)) {
    if (r.size() > 0) worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

double eval_objective(const TwoBlockProblem& p, const SidePoint& x, const SidePoint& z) {
  check_side(p.left, x, "x");
  check_side(p.right, z, "z");
  double total = 0.0;
  for (size_t i = 0; i < x.size(); ++i) total += p.left[i].smooth.value(x[i]) + p.left[i].prox.value(x[i]);
  for (size_t j = 0; j < z.size(); ++j) total += p.right[j].smooth.value(z[j]) + p.right[j].prox.value(z[j]);
  return total;
}

DenseTwoBlock to_dense(const TwoBlockProblem& p) {
  std::vector<int> xoff, zoff;
  int nx = 0, nz = 0;
  for (const auto& b : p.left) {
    xoff.push_back(nx);
    nx += b.dim;
  }
  for (const auto& b : p.right) {
    zoff.push_back(nz);
    nz += b.dim;
  }
  const int m = p.row_count();
  DenseTwoBlock d{Matrix::Zero(m, nx), Matrix::Zero(m, nz), Vector::Zero(m)};
  int r = 0;
  for (const auto& c : p.couplings) {
    const auto rows = c.rhs.size();
    d.A.block(r, xoff[c.left], rows, c.A.in_dim()) = c.A.to_dense();
    d.B.block(r, zoff[c.right], rows, c.B.in_dim()) = c.B.to_dense();
    d.b.segment(r, rows) = c.rhs;
    r += static_cast<int>(rows);
  }
  return d;
}

ReducedSystem eliminate_auxiliaries(const TwoBlockProblem& p, const std::vector<std::string>& block_order) {
  struct Piece {
    int col;
    int dim;
    bool aux;
    int order;  // elimination order key
  };
  std::vector<const SideBlock*> blocks;
  for (const auto& b : p.left) blocks.push_back(&b);
  for (const auto& b : p.right) blocks.push_back(&b);
  std::vector<int> offset;
  int ncols = 0;
  for (const auto* b : blocks) {
    offset.push_back(ncols);
    ncols += b->dim;
  }

  // Row groups: one per coupling, then one Σ y_k = b group per constraint node.
  struct Group {
    int row0;
    int rows;
    bool sum;
  };
  std::vector<Group> groups;
  int nrows = p.row_count();
  for (const auto* b : blocks) {
    if (b->provenance == Provenance::ConstraintNode) nrows += static_cast<int>(b->prox.target().size());
  }
  Matrix M = Matrix::Zero(nrows, ncols);
  Vector rhs = Vector::Zero(nrows);
  int r = 0;
  const int nleft = static_cast<int>(p.left.size());
  for (const auto& c : p.couplings) {
    const int m = static_cast<int>(c.rhs.size());
    M.block(r, offset[c.left], m, c.A.in_dim()) = c.A.to_dense();
    M.block(r, offset[nleft + c.right], m, c.B.in_dim()) += c.B.to_dense();
    rhs.segment(r, m) = c.rhs;
    groups.push_back({r, m, false});
    r += m;
  }
  std::vector<Piece> pieces;
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto* b = blocks[bi];
    switch (b->provenance) {
      case Provenance::Original: pieces.push_back({offset[bi], b->dim, false, 0}); break;
      case Provenance::Subdivision: pieces.push_back({offset[bi], b->dim, true, 0}); break;
      case Provenance::ConstraintNode: {
        if (b->prox.kind() != ProxFn::Kind::SumToConstant) {
          throw std::invalid_argument("eliminate_auxiliaries: constraint block '" + b->id +
                                      "' lacks its sum-to-constant set");
        }
        const int m = static_cast<int>(b->prox.target().size());
        for (int k = 0; k < b->prox.arity(); ++k) {
          pieces.push_back({offset[bi] + k * m, m, true, 1});
          M.block(r, offset[bi] + k * m, m, m).setIdentity();
        }
        rhs.segment(r, m) = b->prox.target();
        groups.push_back({r, m, true});
        r += m;
        break;
      }
    }
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return a.aux != b.aux ? !a.aux : a.order < b.order;
  });

  std::vector<char> live(groups.size(), 1);
  for (const auto& pc : pieces) {
    if (!pc.aux) continue;
    int pivot = -1;
    double sign = 0.0;
    for (int pass = 0; pass < 2 && pivot < 0; ++pass) {
      for (size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& gr = groups[gi];
        if (!live[gi] || gr.rows != pc.dim || gr.sum != (pass == 1)) continue;
        const Matrix blk = M.block(gr.row0, pc.col, gr.rows, pc.dim);
        for (double s : {1.0, -1.0}) {
          if ((blk - s * Matrix::Identity(pc.dim, pc.dim)).cwiseAbs().maxCoeff() <= 1e-12) {
            pivot = static_cast<int>(gi);
            sign = s;
            break;
          }
        }
        if (pivot >= 0) break;
      }
    }
    if (pivot < 0) {
      throw std::invalid_argument("eliminate_auxiliaries: auxiliary columns at offset " + std::to_string(pc.col) +
                                  " have no identity coupling to eliminate with");
    }
    const auto& gr = groups[pivot];
    const Matrix prow = sign * M.middleRows(gr.row0, gr.rows);
    const Vector prhs = sign * rhs.segment(gr.row0, gr.rows);
    for (size_t gi = 0; gi < groups.size(); ++gi) {
      if (!live[gi] || static_cast<int>(gi) == pivot) continue;
      const auto& o = groups[gi];
      const Matrix coef = M.block(o.row0, pc.col, o.rows, pc.dim);
      if (coef.cwiseAbs().maxCoeff() == 0.0) continue;
      M.middleRows(o.row0, o.rows) -= coef * prow;
      rhs.segment(o.row0, o.rows) -= coef * prhs;
    }
    live[pivot] = 0;
  }

  // Original columns in the requested order.
  std::vector<int> originals;
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    if (blocks[bi]->provenance == Provenance::Original) originals.push_back(static_cast<int>(bi));
  }
  if (!block_order.empty()) {
    std::vector<int> sorted;
    for (const auto& id : block_order) {
      auto it = std::find_if(originals.begin(), originals.end(), [&](int bi) { return blocks[bi]->id == id; });
      if (it == originals.end()) {
        throw std::invalid_argument("eliminate_auxiliaries: no original block '" + id + "'");
      }
      sorted.push_back(*it);
    }
    if (sorted.size() != originals.size()) {
      throw std::invalid_argument("eliminate_auxiliaries: block_order omits original blocks");
    }
    originals = sorted;
  }
  ReducedSystem out;
  int rcols = 0;
  for (int bi : originals) {
    out.block_ids.push_back(blocks[bi]->id);
    out.dims.push_back(blocks[bi]->dim);
    rcols += blocks[bi]->dim;
  }
  std::vector<std::pair<Eigen::RowVectorXd, double>> kept;
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    if (!live[gi]) continue;
    for (int rr = groups[gi].row0; rr < groups[gi].row0 + groups[gi].rows; ++rr) {
      Eigen::RowVectorXd row(rcols);
      int c0 = 0;
      for (int bi : originals) {
        row.segment(c0, blocks[bi]->dim) = M.row(rr).segment(offset[bi], blocks[bi]->dim);
        c0 += blocks[bi]->dim;
      }
      if (row.size() > 0 && row.cwiseAbs().maxCoeff() <= 1e-14 && std::abs(rhs[rr]) <= 1e-12) continue;
      kept.emplace_back(std::move(row), rhs[rr]);
    }
  }
  out.matrix = Matrix::Zero(static_cast<Eigen::Index>(kept.size()), rcols);
  out.rhs = Vector::Zero(static_cast<Eigen::Index>(kept.size()));
  for (size_t i = 0; i < kept.size(); ++i) {
    out.matrix.row(static_cast<Eigen::Index>(i)) = kept[i].first;
    out.rhs[static_cast<Eigen::Index>(i)] = kept[i].second;
  }
  return out;
}

Json two_block_to_json(const TwoBlockProblem& p) {
  auto side = [](const std::vector<SideBlock>& blocks) {
    Json arr = Json::array();
    for (const auto& b : blocks) {
      arr.push_back({{"id", b.id},
                     {"dim", b.dim},
                     {"provenance", to_string(b.provenance)},
                     {"source", b.source},
                     {"smooth", smooth_to_json(b.smooth)},
                     {"prox", prox_to_json(b.prox)}});
    }
    return arr;
  };
  Json couplings = Json::array();
  for (const auto& c : p.couplings) {
    couplings.push_back({{"id", c.id},
                         {"left", c.left},
                         {"right", c.right},
                         {"A", map_to_json(c.A)},
                         {"B", map_to_json(c.B)},
                         {"rhs", vector_to_json(c.rhs)}});
  }
  return {{"left", side(p.left)},
          {"right", side(p.right)},
          {"couplings", couplings},
          {"norm_bounds", {{"A", p.norm_a}, {"B", p.norm_b}, {"mode", to_string(p.norm_mode)}}}};
}

}  // namespace admmforge
