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

#include <string>
#include <vector>

#include "hitrun/densities.hpp"
#include "hitrun/estimators.hpp"
#include "hitrun/geometry.hpp"

namespace hitrun {

struct OracleReport {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false; // statistic <= threshold
    std::string detail;
};

/// Reference expectation of f under the normalized density, by tensor
/// Gauss-Legendre quadrature of numerator and denominator on the bounding
/// box with indicator masking, refined until successive levels agree to
/// 1e-6 (relative, unit floor). d <= 3; unbounded regions are supported for
/// gaussian densities only (integration box at +-8 sd per axis).
double quadrature_expectation(const Density& rho, const IntegrandFn& f,
                              const ConvexBody& body);

/// Integral of the non-normalized density over its support: tensor
/// quadrature for gaussians, axis-sweep quadrature with exact sections for
/// bounded supports. d <= 3.
double integrate_density(const Density& rho);

/// Lebesgue volume: closed form for balls and boxes, sweep quadrature for
/// polytopes (d <= 3).
double body_volume(const ConvexBody& body);

/// Infimum of the density over G by masked grid search with window
/// refinement around the running minimizer.
double grid_infimum(const Density& rho, const ConvexBody& G);

/// Verifies the warm-start ratio integral(rho) / (vol(G) inf_G rho) against
/// the claimed kappa (tolerance 1e-4 relative), spot-checking the start
/// density ratio at 10^3 uniform points of G along the way.
OracleReport check_kappa_condition(const Density& rho, const ConvexBody& G,
                                   double claimed_kappa);

/// Verifies that the radius-r ball around the origin sits inside the 1/8
/// level set of the gaussian shape with covariance sigma, with
/// r = sqrt(lambda_min r*(d)); reports the slack of the defining inequality.
OracleReport check_level_set_ball(const Mat& sigma, int d);

/// Histogram total-variation estimate between two samples over their joint
/// bounding box; bins_per_axis defaults to 16, d <= 3.
double empirical_tv(const std::vector<Vec>& samples_a, const std::vector<Vec>& samples_b,
                    int bins_per_axis = 16);

/// Kolmogorov-Smirnov statistic of samples against a reference CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic.
double two_sample_ks(std::vector<double> a, std::vector<double> b);

/// Quadrature check that the transition kernel from x integrates to one
/// (d = 2): tensor rule in polar coordinates around x so the radial factor
/// of the kernel cancels analytically. Returns |integral - 1|.
double kernel_normalization_error(const Density& rho, const Vec& x, int n_theta = 256,
                                  int n_radial = 48);

/// Full oracle suite driven by the CLI `validate` subcommand.
std::vector<OracleReport> run_oracle_suite(std::uint64_t seed);

} // namespace hitrun
