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

#include "hitrun/estimators.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hitrun/hit_and_run.hpp"
#include "hitrun/numerics.hpp"

namespace hitrun {

Vec sample_initial(const ConvexBody& G, RandomStream& rng) {
    const int d = G.dim();
    switch (G.kind()) {
    case ConvexBody::Kind::Ball: {
        const Vec u = sample_direction(d, rng);
        const double radius = G.radius() * std::pow(rng.uniform01(), 1.0 / d);
        return G.center() + radius * u;
    }
    case ConvexBody::Kind::Box: {
        Vec x(d);
        for (int i = 0; i < d; ++i) x[i] = rng.uniform(G.lo()[i], G.hi()[i]);
        return x;
    }
    case ConvexBody::Kind::Polytope: {
        Vec lo, hi;
        G.bounding_box(lo, hi);
        for (std::uint64_t tries = 0; tries < 1000000; ++tries) {
            Vec x(d);
            for (int i = 0; i < d; ++i) x[i] = rng.uniform(lo[i], hi[i]);
            if (G.contains(x)) return x;
        }
        throw std::runtime_error(
            "sample_initial: polytope rejection exceeded 10^6 proposals; "
            "the body is ill-conditioned relative to its bounding box");
    }
    case ConvexBody::Kind::Fullspace:
        throw std::invalid_argument("sample_initial: G must be bounded");
    }
    throw std::logic_error("sample_initial: unknown body kind");
}

bool has_exact_stationary_sampler(const Density& rho) {
    return rho.kind() == Density::Kind::Gaussian || rho.kind() == Density::Kind::Uniform;
}

Vec sample_stationary(const Density& rho, RandomStream& rng) {
    if (rho.kind() == Density::Kind::Gaussian) return rho.sample_exact(rng);
    if (rho.kind() == Density::Kind::Uniform) return sample_initial(rho.support(), rng);
    throw std::runtime_error("sample_stationary: no exact sampler for this density variant");
}

namespace {

// The class bound ||f||_inf <= 1 is the caller's claim; violations are
// clamped pointwise and counted rather than rejected.
double clamped_eval(const IntegrandFn& f, const Vec& x, std::uint64_t& warnings) {
    double v = f(x);
    if (v > 1.0) {
        v = 1.0;
        ++warnings;
    } else if (v < -1.0) {
        v = -1.0;
        ++warnings;
    }
    return v;
}

// Value of f at the n0-th state of the chain keyed by (base, index).
double chain_value(const Density& rho, const IntegrandFn& f, const ConvexBody& G,
                   std::uint64_t n0, const RandomStream& base, std::uint64_t index,
                   std::uint64_t& warnings, std::uint64_t& steps) {
    RandomStream stream = base.substream(index);
    Vec x = sample_initial(G, stream);
    for (std::uint64_t k = 0; k < n0; ++k) {
        x = har_step(rho, x, stream);
        ++steps;
    }
    return clamped_eval(f, x, warnings);
}

EstimateResult finalize(std::vector<double> values, EstimatorMode mode, std::uint64_t n,
                        std::uint64_t n0, std::uint64_t seed, std::uint64_t warnings,
                        std::uint64_t steps) {
    KahanSum acc;
    for (double v : values) acc.add(v);
    EstimateResult res;
    res.value = acc.value() / static_cast<double>(values.size());
    res.n = n;
    res.n0 = n0;
    res.per_sample_values = std::move(values);
    res.mode = mode;
    res.seed = seed;
    res.clamp_warnings = warnings;
    res.kernel_steps = steps;
    return res;
}

} // namespace

EstimateResult multi_run(const Density& rho, const IntegrandFn& f, const ConvexBody& G,
                         std::uint64_t n, std::uint64_t n0, RandomStream& rng, int threads) {
    if (n < 1) throw std::invalid_argument("multi_run: n must be >= 1");
    const RandomStream base = rng.split();
    std::vector<double> values(n);
    std::vector<std::uint64_t> warnings_by_chain(n, 0);
    std::vector<std::uint64_t> steps_by_chain(n, 0);
    std::exception_ptr failure = nullptr;

#ifdef _OPENMP
    const int requested = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(requested)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        try {
            values[i] = chain_value(rho, f, G, n0, base, static_cast<std::uint64_t>(i),
                                    warnings_by_chain[i], steps_by_chain[i]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
#else
    (void)threads;
    for (std::uint64_t i = 0; i < n; ++i)
        values[i] = chain_value(rho, f, G, n0, base, i, warnings_by_chain[i], steps_by_chain[i]);
#endif
    if (failure) std::rethrow_exception(failure);

    std::uint64_t warnings = 0;
    std::uint64_t steps = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        warnings += warnings_by_chain[i];
        steps += steps_by_chain[i];
    }
    return finalize(std::move(values), EstimatorMode::Multi, n, n0, base.key(), warnings,
                    steps);
}

EstimateResult multi_run_serial(const Density& rho, const IntegrandFn& f, const ConvexBody& G,
                                std::uint64_t n, std::uint64_t n0, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("multi_run_serial: n must be >= 1");
    const RandomStream base = rng.split();
    std::vector<double> values(n);
    std::uint64_t warnings = 0;
    std::uint64_t steps = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        values[i] = chain_value(rho, f, G, n0, base, i, warnings, steps);
    return finalize(std::move(values), EstimatorMode::Multi, n, n0, base.key(), warnings,
                    steps);
}

EstimateResult single_run(const Density& rho, const IntegrandFn& f, const ConvexBody& G,
                          std::uint64_t n, std::uint64_t n0, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("single_run: n must be >= 1");
    const RandomStream base = rng.split();
    RandomStream stream = base.substream(0);
    Vec x = sample_initial(G, stream);
    std::uint64_t steps = 0;
    for (std::uint64_t k = 0; k < n0; ++k) {
        x = har_step(rho, x, stream);
        ++steps;
    }
    std::vector<double> values(n);
    std::uint64_t warnings = 0;
    for (std::uint64_t j = 0; j < n; ++j) {
        x = har_step(rho, x, stream);
        ++steps;
        values[j] = clamped_eval(f, x, warnings);
    }
    return finalize(std::move(values), EstimatorMode::Single, n, n0, base.key(), warnings,
                    steps);
}

MseEstimate empirical_mse(const EstimatorSpec& spec, double reference, int reps,
                          RandomStream& rng, int threads) {
    if (reps < 2) throw std::invalid_argument("empirical_mse: reps must be >= 2");
    if (!spec.rho || !spec.f || !spec.G) throw std::invalid_argument("empirical_mse: bad spec");
    MseEstimate out;
    out.rep_values.resize(reps);
    std::vector<double> sq(reps);
    for (int r = 0; r < reps; ++r) {
        RandomStream rep_stream = rng.split();
        const EstimateResult res =
            spec.mode == EstimatorMode::Multi
                ? multi_run(*spec.rho, *spec.f, *spec.G, spec.n, spec.n0, rep_stream, threads)
                : single_run(*spec.rho, *spec.f, *spec.G, spec.n, spec.n0, rep_stream);
        out.rep_values[r] = res.value;
        const double dev = res.value - reference;
        sq[r] = dev * dev;
    }
    KahanSum acc;
    for (double s : sq) acc.add(s);
    const double total = acc.value();
    out.mse = total / reps;
    // Jackknife over repetitions (equals sd/sqrt(reps) for a mean statistic).
    double mean_loo = 0.0;
    std::vector<double> loo(reps);
    for (int r = 0; r < reps; ++r) {
        loo[r] = (total - sq[r]) / (reps - 1);
        mean_loo += loo[r];
    }
    mean_loo /= reps;
    double ss = 0.0;
    for (int r = 0; r < reps; ++r) ss += (loo[r] - mean_loo) * (loo[r] - mean_loo);
    out.jackknife_se = std::sqrt(ss * (reps - 1) / reps);
    return out;
}

} // namespace hitrun
