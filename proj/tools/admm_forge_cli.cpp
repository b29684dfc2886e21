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

// admm-forge: generate → graph → bipartize → solve → compare.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "admm_forge/generators.hpp"
#include "admm_forge/json_io.hpp"
#include "admm_forge/lp.hpp"
#include "admm_forge/pipeline.hpp"

namespace fs = std::filesystem;
using namespace admmforge;

namespace {

struct Common {
  std::string method = "bfs";
  double rho = 1.0;
  double tol = 1e-4;
  int max_iters = 10000;
  std::string algorithm = "exact";
  double milp_gap = 0.01;
  double milp_time_limit = 60.0;
  int threads = 1;
  std::string assignment;
  std::string contribution = "frobenius";
  std::string out = ".";

  PipelineOptions options() const {
    PipelineOptions o;
    o.method = method_from(method);
    o.solver.rho = rho;
    o.solver.tol = tol;
    o.solver.max_iters = max_iters;
    o.solver.algorithm = algorithm_from(algorithm);
    o.solver.threads = threads;
    o.solver.check();
    o.milp.rel_gap = milp_gap;
    o.milp.time_limit_s = milp_time_limit;
    o.milp.threads = threads;
    o.contribution = contribution_mode_from(contribution);
    o.assignment = assignment;
    if (o.method == Method::Import && assignment.empty()) {
      throw std::invalid_argument("--method import requires --assignment PATH");
    }
    if (!assignment.empty() && !fs::exists(assignment)) {
      throw std::invalid_argument("assignment file not found: " + assignment);
    }
    return o;
  }
};

void add_method_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--method", c.method, "basic|bfs|dfs|milp|import")->capture_default_str();
  cmd->add_option("--milp-gap", c.milp_gap, "relative MIP gap")->capture_default_str();
  cmd->add_option("--milp-time-limit", c.milp_time_limit, "seconds")->capture_default_str();
  cmd->add_option("--threads", c.threads)->capture_default_str();
  cmd->add_option("--assignment", c.assignment, "vertex<TAB>color file for --method import");
  cmd->add_option("--contribution", c.contribution, "exact|frobenius")->capture_default_str();
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--rho", c.rho)->capture_default_str();
  cmd->add_option("--tol", c.tol)->capture_default_str();
  cmd->add_option("--max-iters", c.max_iters)->capture_default_str();
  cmd->add_option("--algorithm", c.algorithm, "exact|flip")->capture_default_str();
}

std::string instance_name(const std::string& path) { return fs::path(path).stem().string(); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::vector<double> parse_triple(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) v.push_back(std::stod(tok));
  if (v.size() != 3) throw std::invalid_argument(std::string(what) + " needs three comma-separated values");
  return v;
}

struct GenerateArgs {
  std::string family;
  std::uint64_t seed = 0;
  std::string out = "problem.json";
  std::string R = "1e-6,1e2,1e8";
  std::string J = "-50,100,-50";
  NetworkFlowSpec flow;
  ConsensusSpec consensus;
  std::string form = "direct";
  std::string mps;
  int k = 2;
  int passes = 5;
};

int cmd_generate(const GenerateArgs& a) {
  MultiblockProblem p;
  if (a.family == "circuit") {
    const auto R = parse_triple(a.R, "--R"), J = parse_triple(a.J, "--J");
    p = gen_circuit({R[0], R[1], R[2]}, {J[0], J[1], J[2]});
  } else if (a.family == "network_flow") {
    auto spec = a.flow;
    spec.seed = a.seed;
    p = gen_network_flow(spec).problem;
  } else if (a.family == "consensus_ls") {
    auto spec = a.consensus;
    spec.seed = a.seed;
    auto inst = gen_consensus_ls(spec);
    if (a.form == "direct") {
      p = std::move(inst.direct_form);
    } else if (a.form == "standard") {
      p = std::move(inst.standard_form);
    } else {
      throw std::invalid_argument("--form must be direct or standard");
    }
  } else if (a.family == "lp_cocluster") {
    if (a.mps.empty()) throw std::invalid_argument("lp_cocluster needs --mps PATH");
    p = lp_cocluster(read_mps(fs::path(a.mps)), a.k, a.passes);
  } else {
    throw std::invalid_argument("unknown family '" + a.family + "'");
  }
  save_problem(p, a.out);
  std::cout << a.out << ": " << p.blocks.size() << " blocks, " << p.constraints.size() << " constraints\n";
  return 0;
}

int cmd_graph(const std::string& input, const Common& c) {
  const auto g = build_coupling_graph(load_problem(input));
  fs::create_directories(c.out);
  write_json_file(graph_to_json(g), fs::path(c.out) / "graph.json");
  write_text(fs::path(c.out) / "graph.dot", graph_to_dot(g));
  const auto m = compute_metrics(g);
  write_json_file(metrics_to_json(m), fs::path(c.out) / "metrics.json");
  std::cout << metrics_to_json(m).dump(2) << "\n";
  return 0;
}

int cmd_bipartize(const std::string& input, const Common& c) {
  const auto opts = c.options();
  const auto part = bipartize(load_problem(input), opts);
  const fs::path out(c.out);
  fs::create_directories(out);
  write_json_file(decision_to_json(part.graph, part.decision), out / "decision.json");
  write_json_file(bipartite_to_json(part.bipartite), out / "bipartite.json");
  write_assignment_file(part.graph, part.decision.coloring, out / "assignment.tsv");
  auto metrics = metrics_to_json(part.bipartite.metrics());
  metrics["partition_time_s"] = part.partition_time_s;
  metrics["split_count"] = part.decision.split_count();
  metrics["method"] = to_string(opts.method);
  if (part.milp) {
    metrics["milp"] = {{"status", to_string(part.milp->status)}, {"objective", part.milp->objective},
                       {"bound", part.milp->bound}, {"gap", part.milp->gap}};
  }
  write_json_file(metrics, out / "metrics.json");
  std::cout << metrics.dump(2) << "\n";
  return 0;
}

int cmd_solve(const std::string& input, const Common& c) {
  const auto opts = c.options();
  const auto problem = load_problem(input);
  const auto r = run_pipeline(problem, opts);
  const fs::path out(c.out);
  fs::create_directories(out);
  std::ofstream trace(out / "trace.csv");
  if (!trace) throw std::runtime_error("cannot write " + (out / "trace.csv").string());
  write_trace_csv(r.trace, trace);
  const auto summary = summary_json(r, opts, instance_name(input));
  write_json_file(summary, out / "summary.json");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_export_milp(const std::string& input, const Common& c) {
  const auto g = build_coupling_graph(load_problem(input));
  const auto model = build_milp(g, MilpObjective::NormPlusCounts, contribution_mode_from(c.contribution));
  std::ofstream out(c.out);
  if (!out) throw std::runtime_error("cannot write " + c.out);
  write_lp(model, out);
  return 0;
}

struct MethodStats {
  std::multiset<std::string> instances;
  int runs = 0;
  double iterations = 0, partition = 0, admm = 0, total = 0, degree = 0, balance = 0;
};

int cmd_compare(const std::vector<std::string>& inputs, const std::string& out_path) {
  if (inputs.size() < 2) throw std::invalid_argument("compare needs at least two summaries");
  std::map<std::string, MethodStats> by_method;
  for (const auto& path : inputs) {
    const auto j = read_json_file(path);
    auto& s = by_method[j.at("method").get<std::string>()];
    s.instances.insert(j.at("instance").get<std::string>());
    ++s.runs;
    s.iterations += j.at("iterations").get<double>();
    s.partition += j.at("partition_time_s").get<double>();
    s.admm += j.at("admm_time_s").get<double>();
    s.total += j.at("total_time_s").get<double>();
    const auto& m = j.at("metrics");
    s.degree += m.at("average_degree").get<double>();
    if (m.contains("balance_score") && !m.at("balance_score").is_null()) s.balance += m.at("balance_score").get<double>();
  }
  const auto& reference = by_method.begin()->second.instances;
  for (const auto& [method, s] : by_method) {
    if (s.instances != reference) {
      throw std::invalid_argument("instance set of method '" + method + "' differs from '" +
                                  by_method.begin()->first + "'");
    }
  }
  double max_iter = 0, max_total = 0;
  for (const auto& [method, s] : by_method) {
    max_iter = std::max(max_iter, s.iterations / s.runs);
    max_total = std::max(max_total, s.total / s.runs);
  }
  auto norm = [](double v, double max) { return max > 0 ? v / max : 0.0; };
  std::ostringstream csv;
  csv << "method,runs,mean_iterations,mean_partition_time_s,mean_admm_time_s,mean_total_time_s,"
         "norm_iterations,norm_total_time,norm_partition_time,norm_admm_time,mean_average_degree,"
         "mean_balance_score\n";
  for (const auto& [method, s] : by_method) {
    const double n = s.runs;
    csv << method << "," << s.runs << "," << s.iterations / n << "," << s.partition / n << "," << s.admm / n << ","
        << s.total / n << "," << norm(s.iterations / n, max_iter) << "," << norm(s.total / n, max_total) << ","
        << norm(s.partition / n, max_total) << "," << norm(s.admm / n, max_total) << "," << s.degree / n << ","
        << s.balance / n << "\n";
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    write_text(out_path, csv.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"admm-forge: bipartize multiblock problems and solve them with two-block ADMM"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a generated problem as JSON");
  generate->add_option("family", gen.family, "circuit|network_flow|consensus_ls|lp_cocluster")->required();
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("--out", gen.out)->capture_default_str();
  generate->add_option("--R", gen.R, "circuit resistances r1,r2,r3")->capture_default_str();
  generate->add_option("--J", gen.J, "circuit injections j1,j2,j3")->capture_default_str();
  generate->add_option("--nodes", gen.flow.node_count)->capture_default_str();
  generate->add_option("--arcs", gen.flow.arc_count)->capture_default_str();
  generate->add_option("--degree2-fraction", gen.flow.degree2_fraction)->capture_default_str();
  generate->add_option("--supply-bound", gen.flow.supply_bound)->capture_default_str();
  generate->add_option("--agents", gen.consensus.agent_count)->capture_default_str();
  generate->add_option("--rows", gen.consensus.rows)->capture_default_str();
  generate->add_option("--cols", gen.consensus.cols)->capture_default_str();
  generate->add_option("--noise-std", gen.consensus.noise_std)->capture_default_str();
  generate->add_option("--form", gen.form, "consensus form: direct|standard")->capture_default_str();
  generate->add_option("--mps", gen.mps, "LP in MPS format (lp_cocluster)");
  generate->add_option("--k", gen.k, "co-clustering cluster count")->capture_default_str();
  generate->add_option("--passes", gen.passes)->capture_default_str();

  Common common;
  std::string input;
  auto* graph = app.add_subcommand("graph", "coupling graph, DOT drawing and metrics");
  graph->add_option("problem", input)->required()->check(CLI::ExistingFile);
  graph->add_option("--out", common.out)->capture_default_str();

  auto* bip = app.add_subcommand("bipartize", "decision, bipartite graph and metrics");
  bip->add_option("problem", input)->required()->check(CLI::ExistingFile);
  add_method_flags(bip, common);

  auto* solve = app.add_subcommand("solve", "full pipeline; writes trace.csv and summary.json");
  solve->add_option("problem", input)->required()->check(CLI::ExistingFile);
  add_method_flags(solve, common);
  add_solver_flags(solve, common);

  std::string lp_out = "bipartization.lp";
  auto* export_milp = app.add_subcommand("export-milp", "write the bipartization MILP in LP format");
  export_milp->add_option("problem", input)->required()->check(CLI::ExistingFile);
  export_milp->add_option("--contribution", common.contribution, "exact|frobenius")->capture_default_str();
  export_milp->add_option("--out", lp_out)->capture_default_str();

  std::vector<std::string> summaries;
  std::string compare_out;
  auto* compare = app.add_subcommand("compare", "aggregate summary.json files into a CSV");
  compare->add_option("summaries", summaries)->required()->check(CLI::ExistingFile);
  compare->add_option("--out", compare_out, "CSV path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return cmd_generate(gen);
    if (*graph) return cmd_graph(input, common);
    if (*bip) return cmd_bipartize(input, common);
    if (*solve) return cmd_solve(input, common);
    if (*export_milp) {
      common.out = lp_out;
      return cmd_export_milp(input, common);
    }
    if (*compare) return cmd_compare(summaries, compare_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
