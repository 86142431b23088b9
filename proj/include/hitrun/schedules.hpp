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
#include "hitrun/estimators.hpp"

namespace hitrun {

/// Theorem-derived (n, n0) plan for a target accuracy epsilon.
///
/// The burn-in counts carry constants of order 10^27-10^30 and routinely
/// exceed 2^63 - 1; n0 is therefore held in floating point and flagged
/// impractical instead of overflowing.
struct Schedule {
    std::uint64_t n = 0;
    double n0 = 0.0;
    double cost = 0.0; // n * n0 (multi) or n + n0 (single)
    bool impractical = false;
    EstimatorMode mode = EstimatorMode::Multi;
    double epsilon = 0.0;
    ClassParams params;
};

/// Multi-run mean-square error bound: f_inf^2 / n + 2 f_inf^2 tv.
double mse_bound(std::uint64_t n, double tv, double f_inf);

/// Plan guaranteeing sup error <= 3 epsilon over the bounded-support class:
/// n = ceil(eps^-2),
/// n0 = ceil(1e27 (d R/r)^2 log^2(8 d R/r kappa eps^-2) log(4 kappa eps^-2)).
Schedule schedule_bounded(double epsilon, const ClassParams& params);

/// Same for the average-bounded class:
/// n0 = ceil(4e30 (d R/r)^2 log^2(2 d R/r kappa eps^-2) log^3(kappa eps^-2)).
Schedule schedule_average(double epsilon, const ClassParams& params);

struct TvBound {
    double value = 0.0; // clamped at 1
    double raw = 0.0;
};

/// Explicit total-variation decay C beta^(n0^(1/3)) with
/// C = 12 d (R/r) D and beta = exp(-1e-9 / (d R/r)^(2/3)).
TvBound tv_bound_explicit(double n0, int d, double r, double R, double D);

/// Mixed-form bound 3 eps/2 + 2 D exp(-1e-26 n / (8 (d R/r)^2 log^2(8 d R/r D / eps))).
TvBound tv_bound_mixed(double n, int d, double r, double R, double D, double epsilon);

/// s-conductance lower bound at s = eps / (2D):
/// 1e-13 / (2 d (R/r) log(4 d (R/r) D / eps)).
double conductance_lower_bound(int d, double r, double R, double D, double epsilon);

struct GapBound {
    double mse_bound = 0.0;
    std::uint64_t n0_min = 0;
};

/// Single-run bound from a user-supplied spectral gap:
/// mse <= 4 f4_norm / (n gap), valid once n0 >= ln(64 nu_l2_dist) / gap.
GapBound gap_error_bound(std::uint64_t n, double gap, double f4_norm, double nu_l2_dist);

} // namespace hitrun
