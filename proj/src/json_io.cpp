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

#include "admm_forge/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace admmforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("json: " + what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) fail("NaN is not representable");
  return v;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "Infinity") return kInf;
    if (s == "-inf" || s == "-Infinity") return -kInf;
  }
  fail("expected a real, got " + j.dump());
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(real_to_json(x));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) fail("expected an array of reals");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = real_from_json(j[i]);
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Vector row = vector_from_json(j[static_cast<size_t>(r)]);
    if (row.size() != cols) fail("ragged matrix");
    m.row(r) = row.transpose();
  }
  return m;
}

Json map_to_json(const LinearMap& m) {
  switch (m.kind()) {
    case LinearMap::Kind::Identity: return {{"kind", "identity"}, {"dim", m.in_dim()}};
    case LinearMap::Kind::ScaledIdentity:
      return {{"kind", "scaled_identity"}, {"dim", m.in_dim()}, {"scale", m.scale()}};
    case LinearMap::Kind::Dense:
      return {{"kind", "dense"},
              {"rows", m.out_dim()},
              {"cols", m.in_dim()},
              {"data", matrix_to_json(m.dense_matrix())}};
    case LinearMap::Kind::Sparse: {
      Json trips = Json::array();
      for (const auto& t : m.triplets()) trips.push_back({t.row, t.col, t.value});
      return {{"kind", "sparse"}, {"rows", m.out_dim()}, {"cols", m.in_dim()}, {"triplets", trips}};
    }
  }
  return {};
}

LinearMap map_from_json(const Json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  if (kind == "identity") return LinearMap::identity(field(j, "dim").get<int>());
  if (kind == "scaled_identity") {
    return LinearMap::scaled_identity(field(j, "dim").get<int>(), field(j, "scale").get<double>());
  }
  if (kind == "dense") {
    Matrix m = matrix_from_json(field(j, "data"));
    if (j.contains("rows") && m.rows() != j["rows"].get<int>()) fail("dense map rows mismatch");
    if (j.contains("cols") && m.cols() != j["cols"].get<int>()) fail("dense map cols mismatch");
    return LinearMap::dense(std::move(m));
  }
  if (kind == "sparse") {
    std::vector<Triplet> trips;
    for (const auto& t : field(j, "triplets")) {
      if (!t.is_array() || t.size() != 3) fail("sparse triplet must be [row, col, value]");
      trips.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
    }
    return LinearMap::sparse(field(j, "rows").get<int>(), field(j, "cols").get<int>(), trips);
  }
  fail("unknown map kind '" + kind + "'");
}

Json smooth_to_json(const SmoothFn& f) {
  Json out;
  switch (f.kind()) {
    case SmoothFn::Kind::Zero: out = {{"kind", "zero"}, {"dim", f.dim()}}; break;
    case SmoothFn::Kind::Linear: out = {{"kind", "linear"}, {"q", vector_to_json(f.vector())}}; break;
    case SmoothFn::Kind::Quadratic:
      out = {{"kind", "quadratic"}, {"P", matrix_to_json(f.matrix())}, {"q", vector_to_json(f.vector())}};
      break;
    case SmoothFn::Kind::LeastSquares:
      out = {{"kind", "least_squares"},
             {"Q", matrix_to_json(f.matrix())},
             {"q", vector_to_json(f.vector())}};
      break;
  }
  out["lipschitz"] = f.lipschitz_bound();
  return out;
}

SmoothFn smooth_from_json(const Json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  auto with_l = [&j](SmoothFn f) {
    return j.contains("lipschitz") ? f.with_lipschitz_bound(j["lipschitz"].get<double>()) : f;
  };
  if (kind == "zero") return with_l(SmoothFn::zero(field(j, "dim").get<int>()));
  if (kind == "linear") return with_l(SmoothFn::linear(vector_from_json(field(j, "q"))));
  if (kind == "quadratic") {
    return with_l(SmoothFn::quadratic(matrix_from_json(field(j, "P")), vector_from_json(field(j, "q"))));
  }
  if (kind == "least_squares") {
    return with_l(
        SmoothFn::least_squares(matrix_from_json(field(j, "Q")), vector_from_json(field(j, "q"))));
  }
  fail("unknown smooth kind '" + kind + "'");
}

Json prox_to_json(const ProxFn& g) {
  switch (g.kind()) {
    case ProxFn::Kind::Zero: return {{"kind", "zero"}, {"dim", g.dim()}};
    case ProxFn::Kind::Box:
      return {{"kind", "box"}, {"lower", vector_to_json(g.lower())}, {"upper", vector_to_json(g.upper())}};
    case ProxFn::Kind::AffineSubspace:
      return {{"kind", "affine"},
              {"C", matrix_to_json(g.constraint_matrix())},
              {"d", vector_to_json(g.constraint_rhs())}};
    case ProxFn::Kind::SumToConstant:
      return {{"kind", "sum_to_constant"}, {"target", vector_to_json(g.target())}, {"arity", g.arity()}};
    case ProxFn::Kind::L1: return {{"kind", "l1"}, {"dim", g.dim()}, {"weight", g.weight()}};
  }
  return {};
}

ProxFn prox_from_json(const Json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  if (kind == "zero") return ProxFn::zero(field(j, "dim").get<int>());
  if (kind == "box") return ProxFn::box(vector_from_json(field(j, "lower")), vector_from_json(field(j, "upper")));
  if (kind == "affine") {
    return ProxFn::affine_subspace(matrix_from_json(field(j, "C")), vector_from_json(field(j, "d")));
  }
  if (kind == "sum_to_constant") {
    return ProxFn::sum_to_constant(vector_from_json(field(j, "target")), field(j, "arity").get<int>());
  }
  if (kind == "l1") return ProxFn::l1(field(j, "dim").get<int>(), field(j, "weight").get<double>());
  fail("unknown prox kind '" + kind + "'");
}

Json problem_to_json(const MultiblockProblem& p) {
  Json blocks = Json::array();
  for (const auto& b : p.blocks) {
    blocks.push_back({{"id", b.id},
                      {"dim", b.dim},
                      {"smooth", smooth_to_json(b.smooth)},
                      {"prox", prox_to_json(b.prox)}});
  }
  Json constraints = Json::array();
  for (const auto& c : p.constraints) {
    Json terms = Json::array();
    for (const auto& t : c.terms) terms.push_back({{"block", t.block}, {"map", map_to_json(t.map)}});
    constraints.push_back({{"id", c.id}, {"terms", terms}, {"rhs", vector_to_json(c.rhs)}});
  }
  return {{"blocks", blocks}, {"constraints", constraints}};
}

MultiblockProblem problem_from_json(const Json& j) {
  MultiblockProblem p;
  for (const auto& b : field(j, "blocks")) {
    const int dim = field(b, "dim").get<int>();
    Json smooth = b.contains("smooth") ? b["smooth"] : Json{{"kind", "zero"}, {"dim", dim}};
    Json prox = b.contains("prox") ? b["prox"] : Json{{"kind", "zero"}, {"dim", dim}};
    if (smooth.value("kind", "") == "zero" && !smooth.contains("dim")) smooth["dim"] = dim;
    if (prox.value("kind", "") == "zero" && !prox.contains("dim")) prox["dim"] = dim;
    if (prox.value("kind", "") == "l1" && !prox.contains("dim")) prox["dim"] = dim;
    p.blocks.push_back(
        Block{field(b, "id").get<std::string>(), dim, smooth_from_json(smooth), prox_from_json(prox)});
  }
  for (const auto& c : field(j, "constraints")) {
    BlockConstraint bc{field(c, "id").get<std::string>(), {}, vector_from_json(field(c, "rhs"))};
    for (const auto& t : field(c, "terms")) {
      bc.terms.push_back({field(t, "block").get<std::string>(), map_from_json(field(t, "map"))});
    }
    p.constraints.push_back(std::move(bc));
  }
  return p;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("'" + path.string() + "': " + e.what());
  }
}

void write_json_file(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

MultiblockProblem load_problem(const std::filesystem::path& path) {
  return problem_from_json(read_json_file(path));
}

void save_problem(const MultiblockProblem& p, const std::filesystem::path& path) {
  write_json_file(problem_to_json(p), path);
}

}  // namespace admmforge
