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

namespace hitrun {

/// Regularized lower incomplete gamma P(a, x) = gamma(x, a) / Gamma(a).
/// Series expansion for x < a + 1, Lentz continued fraction otherwise;
/// absolute error <= 1e-12 on the supported range.
double regularized_lower_gamma(double a, double x);

struct RStarResult {
    int d = 0;
    double r_star = 0.0;
    double residual = 0.0; // P(d/2, r_star) - 1/8
};

/// Smallest r with P(d/2, r) >= 1/8, via bracketing plus safeguarded Newton.
/// The residual satisfies |P(d/2, r_star) - 1/8| <= 1e-10.
RStarResult r_star(int d);

/// Mass of the level set {rho >= s} for the standard Gaussian shape:
/// P(d/2, ln(1/s)) for s in (0, 1].
double level_set_mass(double s, int d);

/// Standard normal CDF, evaluated through erfc for tail stability.
double norm_cdf(double x);

/// Standard normal quantile (inverse CDF); rational initial guess polished
/// by one Halley step.
double norm_quantile(double p);

} // namespace hitrun
