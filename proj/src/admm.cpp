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

#include "admm_forge/admm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "log.hpp"

namespace admmforge {

Algorithm algorithm_from(const std::string& s) {
  if (s == "exact" || s == "exact_admm") return Algorithm::ExactAdmm;
  if (s == "flip" || s == "flip_admm") return Algorithm::FlipAdmm;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

const char* to_string(Algorithm a) { return a == Algorithm::ExactAdmm ? "exact_admm" : "flip_admm"; }

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIters: return "max_iters";
    case Termination::Stalled: return "stalled";
  }
  return "?";
}

void SolverConfig::check() const {
  if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
  if (!(step_scale > 0) || step_scale > 1) throw std::invalid_argument("step_scale must lie in (0, 1]");
  if (threads <= 0) throw std::invalid_argument("threads must be positive");
  if (log_every <= 0) throw std::invalid_argument("log_every must be positive");
  if (stall_window <= 0) throw std::invalid_argument("stall_window must be positive");
}

AdmmState zero_state(const TwoBlockProblem& p) {
  AdmmState s;
  for (const auto& b : p.left) s.x.push_back(Vector::Zero(b.dim));
  for (const auto& b : p.right) s.z.push_back(Vector::Zero(b.dim));
  for (const auto& c : p.couplings) s.lambda.push_back(Vector::Zero(c.rhs.size()));
  return s;
}

void write_trace_csv(const AdmmTrace& trace, std::ostream& out) {
  out.precision(12);
  out << "iter,primal_inf,dual_inf,objective,wall_time_s\n";
  for (const auto& e : trace.entries) {
    out << e.iter << ',' << e.primal_inf << ',' << e.dual_inf << ',' << e.objective << ',' << e.wall_time_s
        << '\n';
  }
}

double trace_objective(const TwoBlockProblem& p, const AdmmState& s) {
  double total = 0.0;
  auto add = [&total](const std::vector<SideBlock>& blocks, const SidePoint& pt) {
    for (size_t i = 0; i < blocks.size(); ++i) {
      total += blocks[i].smooth.value(pt[i]);
      if (!blocks[i].prox.is_indicator()) total += blocks[i].prox.value(pt[i]);
    }
  };
  add(p.left, s.x);
  add(p.right, s.z);
  return total;
}

std::pair<double, double> primal_dual_residuals(const TwoBlockProblem& p, const AdmmState& prev,
                                                const AdmmState& state, double rho) {
  const double primal = primal_residual_inf(p, state.x, state.z);
  std::vector<Vector> acc;
  for (const auto& b : p.left) acc.push_back(Vector::Zero(b.dim));
  for (const auto& c : p.couplings) {
    const Vector dz = state.z[c.right] - prev.z[c.right];
    c.A.apply_transpose_add(c.B.apply(dz), acc[c.left]);
  }
  double dual = 0.0;
  for (const auto& a : acc) {
    if (a.size() > 0) dual = std::max(dual, rho * a.cwiseAbs().maxCoeff());
  }
  return {primal, dual};
}

namespace {

constexpr int kMaxDenseDim = 2000;

bool is_scaled_identity(const Matrix& H, double* alpha) {
  const auto n = H.rows();
  const double a = H(0, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (H(i, j) != (i == j ? a : 0.0)) return false;
    }
  }
  *alpha = a;
  return true;
}

bool is_diagonal(const Matrix& H) {
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    for (Eigen::Index j = 0; j < H.cols(); ++j) {
      if (i != j && H(i, j) != 0.0) return false;
    }
  }
  return true;
}

const char* smooth_name(SmoothFn::Kind k) {
  switch (k) {
    case SmoothFn::Kind::Zero: return "zero";
    case SmoothFn::Kind::Linear: return "linear";
    case SmoothFn::Kind::Quadratic: return "quadratic";
    case SmoothFn::Kind::LeastSquares: return "least_squares";
  }
  return "?";
}

const char* prox_name(ProxFn::Kind k) {
  switch (k) {
    case ProxFn::Kind::Zero: return "zero";
    case ProxFn::Kind::Box: return "box";
    case ProxFn::Kind::AffineSubspace: return "affine";
    case ProxFn::Kind::SumToConstant: return "sum_to_constant";
    case ProxFn::Kind::L1: return "l1";
  }
  return "?";
}

// Symmetric positive semidefinite solve: Cholesky when definite, minimum
// norm least squares otherwise.
struct PsdSolver {
  Eigen::LLT<Matrix> llt;
  std::optional<Eigen::CompleteOrthogonalDecomposition<Matrix>> cod;

  void compute(const Matrix& K) {
    llt.compute(K);
    if (llt.info() != Eigen::Success) cod.emplace(K);
  }
  Vector solve(const Vector& r) const { return cod ? Vector(cod->solve(r)) : Vector(llt.solve(r)); }
};

// argmin ½xᵀHx + hᵀx + g(x) for one block; H fixed for the whole run.
struct BlockUpdate {
  enum class Mode { Prox, Diagonal, Dense, Reduced, Flip };

  const SideBlock* block = nullptr;
  std::vector<int> couplings;
  Mode mode = Mode::Flip;
  Vector lin;  // linear term of f when quadratic
  double alpha = 0.0;
  Vector diag;
  PsdSolver solver;
  Matrix H;
  Matrix N;
  Vector p;
  double step = 0.0;  // FLiP

  void setup(const SideBlock& b, std::vector<int> coupling_ids, const Matrix& gram, double rho, Algorithm algo,
             double step_scale) {
    block = &b;
    couplings = std::move(coupling_ids);
    if (algo == Algorithm::FlipAdmm) {
      mode = Mode::Flip;
      const double L = b.smooth.lipschitz_bound();
      if (!std::isfinite(L)) {
        throw std::invalid_argument("block '" + b.id + "' has an infinite Lipschitz bound");
      }
      const double c2 = gram.size() > 0 ? std::max(0.0, power_iteration_max_eigenvalue(gram)) : 0.0;
      const double denom = L + rho * c2;
      step = denom > 0 ? step_scale / denom : step_scale;
      return;
    }
    if (b.dim > kMaxDenseDim) {
      throw std::invalid_argument("block '" + b.id + "' exceeds the dense subproblem size limit");
    }
    H = b.smooth.hessian() + rho * gram;
    lin = b.smooth.linear_term();
    const auto gk = b.prox.kind();
    double a = 0.0;
    if (is_scaled_identity(H, &a) && a > 0) {
      mode = Mode::Prox;
      alpha = a;
      return;
    }
    if (gk == ProxFn::Kind::Zero) {
      mode = Mode::Dense;
      solver.compute(H);
      return;
    }
    if (is_diagonal(H) && (gk == ProxFn::Kind::Box || gk == ProxFn::Kind::L1) && H.diagonal().minCoeff() > 0) {
      mode = Mode::Diagonal;
      diag = H.diagonal();
      return;
    }
    if (gk == ProxFn::Kind::AffineSubspace || gk == ProxFn::Kind::SumToConstant) {
      mode = Mode::Reduced;
      N = b.prox.null_space_basis();
      p = b.prox.particular_solution();
      if (N.cols() > 0) solver.compute(N.transpose() * H * N);
      return;
    }
    throw std::invalid_argument("block '" + b.id + "': no closed-form subproblem for " +
                                smooth_name(b.smooth.kind()) + " smooth + " + prox_name(gk) +
                                " prox with a non-diagonal coupling; use the flip algorithm");
  }

  // h: coupling part of the linear term; x: current iterate (FLiP only);
  // coupling_grad: Σ Aᵀ(λ + ρ r) at x (FLiP only).
  Vector exact(const Vector& h_coupling) const {
    const Vector h = lin + h_coupling;
    switch (mode) {
      case Mode::Prox: return block->prox.prox(-h / alpha, 1.0 / alpha);
      case Mode::Dense: return solver.solve(-h);
      case Mode::Diagonal: {
        Vector x(h.size());
        const auto& g = block->prox;
        for (Eigen::Index k = 0; k < h.size(); ++k) {
          const double u = -h[k] / diag[k];
          if (g.kind() == ProxFn::Kind::Box) {
            x[k] = std::clamp(u, g.lower()[k], g.upper()[k]);
          } else {
            const double t = g.weight() / diag[k];
            x[k] = std::copysign(std::max(0.0, std::abs(u) - t), u);
          }
        }
        return x;
      }
      case Mode::Reduced: {
        if (N.cols() == 0) return p;
        const Vector u = solver.solve(-(N.transpose() * (h + H * p)));
        return p + N * u;
      }
      case Mode::Flip: break;
    }
    throw std::logic_error("exact update requested for a FLiP block");
  }

  Vector flip(const Vector& x, const Vector& coupling_grad) const {
    const Vector v = x - step * (block->smooth.gradient(x) + coupling_grad);
    return block->prox.prox(v, step);
  }
};

}  // namespace

struct AdmmSolver::Impl {
  std::vector<BlockUpdate> left, right;
  std::unique_ptr<tbb::task_arena> arena;

  template <typename F>
  void parallel(int n, const F& f) const {
    if (!arena || n < 2) {
      for (int i = 0; i < n; ++i) f(i);
      return;
    }
    arena->execute([&] {
      tbb::parallel_for(tbb::blocked_range<int>(0, n), [&](const tbb::blocked_range<int>& r) {
        for (int i = r.begin(); i != r.end(); ++i) f(i);
      });
    });
  }
};

AdmmSolver::AdmmSolver(const TwoBlockProblem& problem, SolverConfig config)
    : problem_(problem), config_(config), impl_(std::make_unique<Impl>()) {
  config_.check();
  const auto lc = problem.left_couplings();
  const auto rc = problem.right_couplings();
  auto build = [&](const std::vector<SideBlock>& blocks, const std::vector<std::vector<int>>& cl, bool is_left,
                   std::vector<BlockUpdate>& out) {
    out.resize(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i) {
      Matrix gram = Matrix::Zero(blocks[i].dim, blocks[i].dim);
      for (int e : cl[i]) gram += is_left ? problem.couplings[e].A.gram() : problem.couplings[e].B.gram();
      out[i].setup(blocks[i], cl[i], gram, config_.rho, config_.algorithm, config_.step_scale);
    }
  };
  build(problem.left, lc, true, impl_->left);
  build(problem.right, rc, false, impl_->right);
  if (config_.threads > 1) impl_->arena = std::make_unique<tbb::task_arena>(config_.threads);
}

AdmmSolver::~AdmmSolver() = default;

double AdmmSolver::flip_step_size(bool left, int block) const {
  return (left ? impl_->left : impl_->right).at(static_cast<size_t>(block)).step;
}

void AdmmSolver::step(AdmmState& s) const {
  const auto& P = problem_;
  const double rho = config_.rho;
  const bool flip = config_.algorithm == Algorithm::FlipAdmm;

  // x-update: h_i = Σ A_eᵀ(λ_e + ρ(B_e z − b_e)) (+ ρ A_e x_i for FLiP's gradient).
  SidePoint new_x(P.left.size());
  impl_->parallel(static_cast<int>(P.left.size()), [&](int i) {
    const auto& u = impl_->left[i];
    Vector h = Vector::Zero(P.left[i].dim);
    for (int e : u.couplings) {
      const auto& c = P.couplings[e];
      Vector t = c.B.apply(s.z[c.right]) - c.rhs;
      if (flip) c.A.apply_add(s.x[i], t);
      t *= rho;
      t += s.lambda[e];
      c.A.apply_transpose_add(t, h);
    }
    new_x[i] = flip ? u.flip(s.x[i], h) : u.exact(h);
  });
  s.x = std::move(new_x);

  SidePoint new_z(P.right.size());
  impl_->parallel(static_cast<int>(P.right.size()), [&](int j) {
    const auto& u = impl_->right[j];
    Vector h = Vector::Zero(P.right[j].dim);
    for (int e : u.couplings) {
      const auto& c = P.couplings[e];
      Vector t = c.A.apply(s.x[c.left]) - c.rhs;
      if (flip) c.B.apply_add(s.z[j], t);
      t *= rho;
      t += s.lambda[e];
      c.B.apply_transpose_add(t, h);
    }
    new_z[j] = flip ? u.flip(s.z[j], h) : u.exact(h);
  });
  s.z = std::move(new_z);

  impl_->parallel(static_cast<int>(P.couplings.size()), [&](int e) {
    const auto& c = P.couplings[e];
    Vector r = -c.rhs;
    c.A.apply_add(s.x[c.left], r);
    c.B.apply_add(s.z[c.right], r);
    s.lambda[e] += rho * r;
  });
  ++s.iteration;
}

std::pair<AdmmState, AdmmTrace> AdmmSolver::solve() const { return solve(zero_state(problem_)); }

std::pair<AdmmState, AdmmTrace> AdmmSolver::solve(AdmmState s) const {
  const auto& P = problem_;
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  AdmmTrace trace;
  double best = std::numeric_limits<double>::infinity();
  int last_drop = s.iteration;
  const int first = s.iteration;
  for (int k = 0; k < config_.max_iters; ++k) {
    const SidePoint z_prev = s.z;
    step(s);

    // Residuals, reduced in fixed order.
    std::vector<Vector> r(P.couplings.size());
    std::vector<Vector> bdz(P.couplings.size());
    impl_->parallel(static_cast<int>(P.couplings.size()), [&](int e) {
      const auto& c = P.couplings[e];
      r[e] = -c.rhs;
      c.A.apply_add(s.x[c.left], r[e]);
      c.B.apply_add(s.z[c.right], r[e]);
      bdz[e] = c.B.apply(s.z[c.right] - z_prev[c.right]);
    });
    std::vector<Vector> dual_blocks(P.left.size());
    impl_->parallel(static_cast<int>(P.left.size()), [&](int i) {
      Vector acc = Vector::Zero(P.left[i].dim);
      for (int e : impl_->left[i].couplings) P.couplings[e].A.apply_transpose_add(bdz[e], acc);
      dual_blocks[i] = config_.rho * acc;
    });
    double pinf = 0.0, p2 = 0.0, dinf = 0.0, d2 = 0.0;
    for (const auto& v : r) {
      if (v.size() == 0) continue;
      pinf = std::max(pinf, v.cwiseAbs().maxCoeff());
      p2 += v.squaredNorm();
    }
    for (const auto& v : dual_blocks) {
      if (v.size() == 0) continue;
      dinf = std::max(dinf, v.cwiseAbs().maxCoeff());
      d2 += v.squaredNorm();
    }
    const double worst = std::max(pinf, dinf);
    Termination term = Termination::MaxIters;
    bool done = false;
    if (worst < config_.tol) {
      term = Termination::Converged;
      done = true;
    } else {
      if (worst < best - 1e-14) {
        best = worst;
        last_drop = s.iteration;
      } else if (s.iteration - last_drop >= config_.stall_window) {
        term = Termination::Stalled;
        done = true;
      }
      if (k + 1 == config_.max_iters) done = true;
    }
    if (done || s.iteration % config_.log_every == 0) {
      trace.entries.push_back({s.iteration, pinf, dinf, std::sqrt(p2), std::sqrt(d2), trace_objective(P, s),
                               elapsed()});
    }
    if (!std::isfinite(worst)) {
      log::warn("ADMM residual became non-finite at iteration {}", s.iteration);
      term = Termination::Stalled;
      done = true;
    }
    if (done) {
      trace.termination = term;
      trace.final_primal_inf = pinf;
      trace.final_dual_inf = dinf;
      break;
    }
    if (s.iteration % std::max(1, config_.max_iters / 20) == 0) {
      log::debug("iter {} primal {:.3e} dual {:.3e}", s.iteration, pinf, dinf);
    }
  }
  trace.iterations = s.iteration - first;
  trace.solve_time_s = elapsed();
  return {std::move(s), std::move(trace)};
}

AdmmState flip_step(const TwoBlockProblem& p, const AdmmState& state, const SolverConfig& config) {
  SolverConfig c = config;
  c.algorithm = Algorithm::FlipAdmm;
  AdmmSolver solver(p, c);
  AdmmState next = state;
  solver.step(next);
  return next;
}

std::pair<AdmmState, AdmmTrace> solve(const TwoBlockProblem& p, const SolverConfig& config) {
  return AdmmSolver(p, config).solve();
}

}  // namespace admmforge
