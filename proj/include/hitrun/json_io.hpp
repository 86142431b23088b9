// Copyright (c) 2026 the hitrun authors
//
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

#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "hitrun/densities.hpp"
#include "hitrun/geometry.hpp"
#include "hitrun/integrands.hpp"

namespace hitrun {

using Json = nlohmann::ordered_json;

// Body descriptors:
//   {"type":"ball","center":[...],"radius":r}
//   {"type":"box","lo":[...],"hi":[...]}
//   {"type":"polytope","a":[[...],...],"b":[...],"interior":[...],"radius_bound":r}
//   {"type":"fullspace","dim":d}
Json body_to_json(const ConvexBody& body);
ConvexBody body_from_json(const Json& j);

// Density descriptors:
//   {"type":"gaussian","sigma":[[...],...]}        (row-major covariance)
//   {"type":"uniform","body":{...}}
//   {"type":"linear_tilt","a":[...],"body":{...}}
Json density_to_json(const Density& rho);
Density density_from_json(const Json& j);

Json integrand_to_json(const IntegrandSpec& spec);
IntegrandSpec integrand_from_json(const Json& j);

/// Batch experiment description; see README for the schema.
struct ExperimentConfig {
    Json density;
    std::optional<Json> G; // defaults: uniform -> its body, gaussian -> unit ball
    IntegrandSpec integrand;
    EstimatorMode mode = EstimatorMode::Multi;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> n0;
    std::optional<Json> schedule; // {"epsilon":..., "variant":"bounded"|"average",
                                  //  "r":..., "R":..., "kappa" or "log_kappa":...}
    int reps = 1;
    std::uint64_t seed = 0; // required in the file; no wall-clock fallback
    std::string out;
    std::optional<double> reference;
};

ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& config);

Vec vec_from_json(const Json& j);
Json vec_to_json(const Vec& v);
Mat mat_from_json(const Json& j);
Json mat_to_json(const Mat& m);

} // namespace hitrun
