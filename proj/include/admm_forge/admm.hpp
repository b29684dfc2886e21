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

#ifndef ADMM_FORGE_ADMM_HPP_
#define ADMM_FORGE_ADMM_HPP_

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "admm_forge/reformulator.hpp"

namespace admmforge {

enum class Algorithm { ExactAdmm, FlipAdmm };

Algorithm algorithm_from(const std::string& s);
const char* to_string(Algorithm a);

struct SolverConfig {
  double rho = 1.0;
  double tol = 1e-4;
  int max_iters = 10000;
  Algorithm algorithm = Algorithm::ExactAdmm;
  /// FLiP step safety factor in (0, 1].
  double step_scale = 1.0;
  int threads = 1;
  int log_every = 1;
  /// Iterations without a 1e-14 drop of the best residual before giving up.
  int stall_window = 1000;

  /// Throws std::invalid_argument on out-of-range values.
  void check() const;
};

struct AdmmState {
  SidePoint x;
  SidePoint z;
  std::vector<Vector> lambda;
  int iteration = 0;
};

/// All-zero state sized for `p`.
AdmmState zero_state(const TwoBlockProblem& p);

enum class Termination { Converged, MaxIters, Stalled };

const char* to_string(Termination t);

struct TraceEntry {
  int iter = 0;
  double primal_inf = 0.0;
  double dual_inf = 0.0;
  double primal_l2 = 0.0;
  double dual_l2 = 0.0;
  /// Σ f plus the non-indicator prox terms (indicators are kept feasible by
  /// the updates and would only add 0 or +inf).
  double objective = 0.0;
  double wall_time_s = 0.0;
};

struct AdmmTrace {
  std::vector<TraceEntry> entries;
  Termination termination = Termination::MaxIters;
  int iterations = 0;
  double final_primal_inf = 0.0;
  double final_dual_inf = 0.0;
  double solve_time_s = 0.0;
};

/// Header `iter,primal_inf,dual_inf,objective,wall_time_s`.
void write_trace_csv(const AdmmTrace& trace, std::ostream& out);

/// (‖Ax + Bz − b‖_∞, ‖ρ Aᵀ B (z − z_prev)‖_∞).
std::pair<double, double> primal_dual_residuals(const TwoBlockProblem& p, const AdmmState& prev,
                                                const AdmmState& state, double rho);

class AdmmSolver {
 public:
  /// Precomputes per-block factorizations. In exact mode a block whose
  /// subproblem has no closed form raises std::invalid_argument naming it.
  AdmmSolver(const TwoBlockProblem& problem, SolverConfig config);
  ~AdmmSolver();
  AdmmSolver(const AdmmSolver&) = delete;
  AdmmSolver& operator=(const AdmmSolver&) = delete;

  /// One x-update, z-update and dual update.
  void step(AdmmState& state) const;
  std::pair<AdmmState, AdmmTrace> solve(AdmmState initial) const;
  std::pair<AdmmState, AdmmTrace> solve() const;

  const TwoBlockProblem& problem() const { return problem_; }
  const SolverConfig& config() const { return config_; }

  /// FLiP step size of a block.
  double flip_step_size(bool left, int block) const;

 private:
  struct Impl;
  const TwoBlockProblem& problem_;
  SolverConfig config_;
  std::unique_ptr<Impl> impl_;
};

/// One FLiP iteration from `state`.
AdmmState flip_step(const TwoBlockProblem& p, const AdmmState& state, const SolverConfig& config);

std::pair<AdmmState, AdmmTrace> solve(const TwoBlockProblem& p, const SolverConfig& config);

/// Σ f + Σ (non-indicator g) at a state.
double trace_objective(const TwoBlockProblem& p, const AdmmState& s);

}  // namespace admmforge

#endif  // ADMM_FORGE_ADMM_HPP_
