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

#include "hitrun/densities.hpp"
#include "hitrun/rng.hpp"

namespace hitrun {

struct ChainState {
    Vec x;
    std::uint64_t step_index = 0;
};

/// Uniform draw from the unit sphere (normalized standard normals).
Vec sample_direction(int d, RandomStream& rng);

/// One transition: pick a uniform direction, then resample the position
/// along the resulting chord from the restricted density.
Vec har_step(const Density& rho, const Vec& x, RandomStream& rng);

/// Applies har_step n0 times; n0 = 0 returns x0 unchanged.
ChainState run_chain(const Density& rho, Vec x0, std::uint64_t n0, RandomStream& rng);

/// Log transition density of the chain at (x, y), x != y:
///   (2 / vol_{d-1}(unit sphere)) rho(y) / (ell(x, y) |x - y|^{d-1}),
/// where ell is the arclength integral of rho over the full chord through
/// x and y, evaluated by adaptive quadrature (relative tolerance 1e-8).
/// Validation-only: quadrature cost per call, never used when sampling.
double transition_log_density(const Density& rho, const Vec& x, const Vec& y);

} // namespace hitrun
