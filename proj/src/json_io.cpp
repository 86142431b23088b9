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

#include "hitrun/json_io.hpp"

#include <stdexcept>

namespace hitrun {

namespace {

[[noreturn]] void bad_config(const std::string& key, const std::string& what) {
    throw std::invalid_argument("config key '" + key + "': " + what);
}

const Json& require(const Json& j, const std::string& key) {
    if (!j.contains(key)) bad_config(key, "missing");
    return j.at(key);
}

} // namespace

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a numeric array");
    Vec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
    return v;
}

Json vec_to_json(const Vec& v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

Mat mat_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a row-major matrix");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

Json mat_to_json(const Mat& m) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        j.push_back(row);
    }
    return j;
}

Json body_to_json(const ConvexBody& body) {
    Json j;
    switch (body.kind()) {
    case ConvexBody::Kind::Ball:
        j["type"] = "ball";
        j["center"] = vec_to_json(body.center());
        j["radius"] = body.radius();
        break;
    case ConvexBody::Kind::Box:
        j["type"] = "box";
        j["lo"] = vec_to_json(body.lo());
        j["hi"] = vec_to_json(body.hi());
        break;
    case ConvexBody::Kind::Polytope:
        j["type"] = "polytope";
        j["a"] = mat_to_json(body.halfspace_normals());
        j["b"] = vec_to_json(body.halfspace_offsets());
        j["interior"] = vec_to_json(body.interior_point());
        if (body.polytope_radius_bound()) j["radius_bound"] = *body.polytope_radius_bound();
        break;
    case ConvexBody::Kind::Fullspace:
        j["type"] = "fullspace";
        j["dim"] = body.dim();
        break;
    }
    return j;
}

ConvexBody body_from_json(const Json& j) {
    const std::string type = require(j, "type").get<std::string>();
    if (type == "ball")
        return ConvexBody::ball(vec_from_json(require(j, "center")),
                                require(j, "radius").get<double>());
    if (type == "box")
        return ConvexBody::box(vec_from_json(require(j, "lo")), vec_from_json(require(j, "hi")));
    if (type == "polytope") {
        std::optional<Vec> interior;
        if (j.contains("interior")) interior = vec_from_json(j.at("interior"));
        std::optional<double> radius_bound;
        if (j.contains("radius_bound")) radius_bound = j.at("radius_bound").get<double>();
        return ConvexBody::polytope(mat_from_json(require(j, "a")),
                                    vec_from_json(require(j, "b")), interior, radius_bound);
    }
    if (type == "fullspace") return ConvexBody::fullspace(require(j, "dim").get<int>());
    bad_config("type", "unknown body type '" + type + "'");
}

Json density_to_json(const Density& rho) {
    Json j;
    switch (rho.kind()) {
    case Density::Kind::Gaussian:
        j["type"] = "gaussian";
        j["sigma"] = mat_to_json(rho.sigma());
        break;
    case Density::Kind::Uniform:
        j["type"] = "uniform";
        j["body"] = body_to_json(rho.support());
        break;
    case Density::Kind::LinearTilt:
        j["type"] = "linear_tilt";
        j["a"] = vec_to_json(rho.tilt());
        j["body"] = body_to_json(rho.support());
        break;
    case Density::Kind::Blackbox:
        throw std::invalid_argument("density_to_json: blackbox densities have no descriptor");
    }
    return j;
}

Density density_from_json(const Json& j) {
    const std::string type = require(j, "type").get<std::string>();
    if (type == "gaussian") return Density::gaussian(mat_from_json(require(j, "sigma")));
    if (type == "uniform") return Density::uniform(body_from_json(require(j, "body")));
    if (type == "linear_tilt")
        return Density::linear_tilt(vec_from_json(require(j, "a")),
                                    body_from_json(require(j, "body")));
    bad_config("type", "unknown density type '" + type + "'");
}

Json integrand_to_json(const IntegrandSpec& spec) {
    Json j;
    j["name"] = spec.name;
    if (spec.name == "constant") j["value"] = spec.value;
    if (spec.name == "coordinate") j["index"] = spec.index;
    if (spec.name == "halfspace") {
        j["normal"] = vec_to_json(spec.normal);
        j["offset"] = spec.offset;
    }
    if (spec.name == "tanh_linear") {
        j["a"] = vec_to_json(spec.a);
        j["b"] = spec.b;
    }
    if (spec.name == "expression") j["expr"] = spec.expr;
    return j;
}

IntegrandSpec integrand_from_json(const Json& j) {
    IntegrandSpec spec;
    spec.name = require(j, "name").get<std::string>();
    if (spec.name == "constant") spec.value = require(j, "value").get<double>();
    else if (spec.name == "coordinate") spec.index = require(j, "index").get<int>();
    else if (spec.name == "halfspace") {
        spec.normal = vec_from_json(require(j, "normal"));
        spec.offset = j.value("offset", 0.0);
    } else if (spec.name == "tanh_linear") {
        spec.a = vec_from_json(require(j, "a"));
        spec.b = j.value("b", 0.0);
    } else if (spec.name == "expression") {
        spec.expr = require(j, "expr").get<std::string>();
    } else {
        bad_config("name", "unknown integrand '" + spec.name + "'");
    }
    return spec;
}

ExperimentConfig config_from_json(const Json& j) {
    ExperimentConfig config;
    config.density = require(j, "density");
    density_from_json(config.density); // validate eagerly
    if (j.contains("G")) {
        config.G = j.at("G");
        body_from_json(*config.G);
    }
    config.integrand = integrand_from_json(require(j, "integrand"));

    const std::string mode = j.value("mode", std::string("multi"));
    if (mode == "multi")
        config.mode = EstimatorMode::Multi;
    else if (mode == "single")
        config.mode = EstimatorMode::Single;
    else
        bad_config("mode", "expected 'multi' or 'single'");

    if (j.contains("schedule")) {
        config.schedule = j.at("schedule");
        if (j.contains("n") || j.contains("n0"))
            bad_config("schedule", "give either explicit n/n0 or a schedule, not both");
    } else {
        if (!j.contains("n") || !j.contains("n0"))
            bad_config("n", "explicit n and n0 (or a schedule block) required");
        config.n = j.at("n").get<std::uint64_t>();
        config.n0 = j.at("n0").get<std::uint64_t>();
    }

    config.reps = j.value("reps", 1);
    if (config.reps < 1) bad_config("reps", "must be >= 1");
    if (!j.contains("seed")) bad_config("seed", "missing (wall-clock seeding is not supported)");
    config.seed = j.at("seed").get<std::uint64_t>();
    config.out = j.value("out", std::string("results"));
    if (j.contains("reference")) config.reference = j.at("reference").get<double>();
    return config;
}

Json config_to_json(const ExperimentConfig& config) {
    Json j;
    j["density"] = config.density;
    if (config.G) j["G"] = *config.G;
    j["integrand"] = integrand_to_json(config.integrand);
    j["mode"] = config.mode == EstimatorMode::Multi ? "multi" : "single";
    if (config.schedule) {
        j["schedule"] = *config.schedule;
    } else {
        j["n"] = *config.n;
        j["n0"] = *config.n0;
    }
    j["reps"] = config.reps;
    j["seed"] = config.seed;
    j["out"] = config.out;
    if (config.reference) j["reference"] = *config.reference;
    return j;
}

} // namespace hitrun
