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

#include "hitrun/hit_and_run.hpp"

#include <cmath>
#include <stdexcept>

#include "hitrun/line_sampler.hpp"
#include "hitrun/numerics.hpp"

namespace hitrun {

Vec sample_direction(int d, RandomStream& rng) {
    if (d < 1) throw std::invalid_argument("sample_direction: d must be >= 1");
    Vec u(d);
    double norm = 0.0;
    do {
        for (int i = 0; i < d; ++i) u[i] = rng.normal();
        norm = u.norm();
    } while (norm < 1e-12);
    return u / norm;
}

Vec har_step(const Density& rho, const Vec& x, RandomStream& rng) {
    const Vec u = sample_direction(rho.dim(), rng);
    const LineDensity ld = rho.restrict_to_line(x, u);
    double alpha = sample_line(ld, rng);
    // Keep strictly inside bounded chords so the next chord stays two-sided;
    // a landing this close to the boundary is a measure-zero event.
    if (ld.domain.bounded() && ld.domain.length() > 0.0) {
        const double nudge = 1e-12 * ld.domain.length();
        alpha = std::min(std::max(alpha, ld.domain.lo + nudge), ld.domain.hi - nudge);
    }
    return x + alpha * u;
}

ChainState run_chain(const Density& rho, Vec x0, std::uint64_t n0, RandomStream& rng) {
    if (!rho.support().contains(x0))
        throw std::invalid_argument("run_chain: start point outside support");
    ChainState state{std::move(x0), 0};
    for (std::uint64_t k = 0; k < n0; ++k) {
        state.x = har_step(rho, state.x, rng);
        ++state.step_index;
    }
    return state;
}

namespace {

// Arclength integral of rho over the full chord through x in direction u.
// Unbounded chords (gaussian and other full-space densities) are clipped
// where the line log-density has dropped 60 nats below its value at x.
double chord_mass(const Density& rho, const Vec& x, const Vec& u) {
    const LineDensity ld = rho.restrict_to_line(x, u);
    double lo = ld.domain.lo;
    double hi = ld.domain.hi;
    const double ref = ld.log_eval(0.0);
    if (!std::isfinite(lo)) {
        lo = -1.0;
        while (ld.log_eval(lo) > ref - 60.0) lo *= 2.0;
    }
    if (!std::isfinite(hi)) {
        hi = 1.0;
        while (ld.log_eval(hi) > ref - 60.0) hi *= 2.0;
    }
    const auto f = [&](double s) { return std::exp(ld.log_eval(s) - ref); };
    return std::exp(ref) * adaptive_simpson(f, lo, hi, 1e-8);
}

} // namespace

double transition_log_density(const Density& rho, const Vec& x, const Vec& y) {
    const Vec diff = y - x;
    const double dist = diff.norm();
    if (dist == 0.0) throw std::invalid_argument("transition_log_density: x == y");
    if (!rho.support().contains(x) || !rho.support().contains(y))
        throw std::invalid_argument("transition_log_density: point outside support");
    const int d = rho.dim();
    const Vec u = diff / dist;
    const double ell = chord_mass(rho, x, u);
    return std::log(2.0) - std::log(unit_sphere_area(d)) + rho.log_density(y) -
           std::log(ell) - (d - 1) * std::log(dist);
}

} // namespace hitrun
