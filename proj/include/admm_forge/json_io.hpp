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

// JSON encodings shared by every on-disk format.
//
//   LinearMap  {"kind":"identity","dim":n}
//              {"kind":"scaled_identity","dim":n,"scale":s}
//              {"kind":"dense","rows":r,"cols":c,"data":[[...],...]}
//              {"kind":"sparse","rows":r,"cols":c,"triplets":[[i,j,v],...]}
//   SmoothFn   {"kind":"zero","dim":n} | {"kind":"linear","q":[...]}
//              {"kind":"quadratic","P":[[...]],"q":[...]}
//              {"kind":"least_squares","Q":[[...]],"q":[...]}
//              optional "lipschitz": L overrides the computed bound
//   ProxFn     {"kind":"zero","dim":n} | {"kind":"box","lower":[...],"upper":[...]}
//              {"kind":"affine","C":[[...]],"d":[...]}
//              {"kind":"sum_to_constant","target":[...],"arity":k}
//              {"kind":"l1","dim":n,"weight":w}
//
// Infinite reals are written as the strings "inf" / "-inf".

#ifndef ADMM_FORGE_JSON_IO_HPP_
#define ADMM_FORGE_JSON_IO_HPP_

#include <filesystem>
#include <string>

#include "json.hpp"

#include "admm_forge/linear_map.hpp"
#include "admm_forge/problem.hpp"
#include "admm_forge/prox_fn.hpp"
#include "admm_forge/smooth_fn.hpp"

namespace admmforge {

using Json = nlohmann::json;

Json real_to_json(double v);
double real_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json map_to_json(const LinearMap& m);
LinearMap map_from_json(const Json& j);
Json smooth_to_json(const SmoothFn& f);
SmoothFn smooth_from_json(const Json& j);
Json prox_to_json(const ProxFn& g);
ProxFn prox_from_json(const Json& j);

/// {"blocks":[{"id","dim","smooth","prox"}],
///  "constraints":[{"id","terms":[{"block","map"}],"rhs":[...]}]}
Json problem_to_json(const MultiblockProblem& p);
MultiblockProblem problem_from_json(const Json& j);

MultiblockProblem load_problem(const std::filesystem::path& path);
void save_problem(const MultiblockProblem& p, const std::filesystem::path& path);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const Json& j, const std::filesystem::path& path);

}  // namespace admmforge

#endif  // ADMM_FORGE_JSON_IO_HPP_
