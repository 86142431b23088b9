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

#include <cstdint>
#include <functional>
#include <vector>

#include "hitrun/densities.hpp"
#include "hitrun/geometry.hpp"
#include "hitrun/rng.hpp"

namespace hitrun {

enum class EstimatorMode { Multi, Single };

struct EstimateResult {
    double value = 0.0;
    std::uint64_t n = 0;
    std::uint64_t n0 = 0;
    std::vector<double> per_sample_values; // length n; value is their mean
    EstimatorMode mode = EstimatorMode::Multi;
    std::uint64_t seed = 0;            // stream key the run was derived from
    std::uint64_t clamp_warnings = 0;  // integrand evaluations clamped to [-1, 1]
    std::uint64_t kernel_steps = 0;    // transitions performed; the cost t(n, n0)
};

/// Uniform draw on a bounded body: polar scaling for balls, per-axis uniforms
/// for boxes, bounding-box rejection for polytopes (errors out after 10^6
/// rejected proposals).
Vec sample_initial(const ConvexBody& G, RandomStream& rng);

/// Stationary draw where one is available exactly: gaussian densities sample
/// through their factor, uniform densities through sample_initial on the body.
bool has_exact_stationary_sampler(const Density& rho);
Vec sample_stationary(const Density& rho, RandomStream& rng);

using IntegrandFn = std::function<double(const Vec&)>;

/// Mean of f at the n0-th states of n independent chains, each started from
/// an independent uniform draw on G. Chains run concurrently (OpenMP) with
/// per-chain substreams keyed by (run key, chain index); the result is
/// bit-identical for any thread count. threads = 0 uses all cores.
EstimateResult multi_run(const Density& rho, const IntegrandFn& f, const ConvexBody& G,
                         std::uint64_t n, std::uint64_t n0, RandomStream& rng,
                         int threads = 0);

/// Serial reference implementation of multi_run; same stream derivation,
/// kept as the comparison baseline for the parallel kernel.
EstimateResult multi_run_serial(const Density& rho, const IntegrandFn& f, const ConvexBody& G,
                                std::uint64_t n, std::uint64_t n0, RandomStream& rng);

/// Time average of f over steps n0+1 .. n0+n of a single chain.
EstimateResult single_run(const Density& rho, const IntegrandFn& f, const ConvexBody& G,
                          std::uint64_t n, std::uint64_t n0, RandomStream& rng);

struct EstimatorSpec {
    const Density* rho = nullptr;
    const IntegrandFn* f = nullptr;
    const ConvexBody* G = nullptr;
    EstimatorMode mode = EstimatorMode::Multi;
    std::uint64_t n = 0;
    std::uint64_t n0 = 0;
};

struct MseEstimate {
    double mse = 0.0;
    double jackknife_se = 0.0;
    std::vector<double> rep_values;
};

/// Mean squared deviation from the reference over independent estimator
/// repetitions, with its jackknife standard error.
MseEstimate empirical_mse(const EstimatorSpec& spec, double reference, int reps,
                          RandomStream& rng, int threads = 0);

} // namespace hitrun
