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

#include "hitrun/schedules.hpp"

#include <cmath>
#include <stdexcept>

namespace hitrun {

namespace {

constexpr double kPracticalStepLimit = 9.223372036854775807e18; // 2^63 - 1

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 0.5))
        throw std::invalid_argument("schedule: epsilon must lie in (0, 1/2)");
}

void check_class(const ClassParams& params) {
    if (params.d < 1) throw std::invalid_argument("schedule: d must be >= 1");
    if (!(params.r > 0.0) || !(params.r <= params.R))
        throw std::invalid_argument("schedule: 0 < r <= R required");
    if (!(params.log_kappa >= std::log(3.0) - 1e-12))
        throw std::invalid_argument("schedule: kappa must be >= 3");
    if (!(params.d * params.R / params.r >= 3.0))
        throw std::invalid_argument("schedule: d R / r >= 3 required");
}

Schedule make_schedule(double epsilon, const ClassParams& params, double n0) {
    Schedule s;
    s.n = static_cast<std::uint64_t>(std::ceil(1.0 / (epsilon * epsilon)));
    s.n0 = std::ceil(n0);
    s.cost = static_cast<double>(s.n) * s.n0;
    s.impractical = s.n0 > kPracticalStepLimit;
    s.mode = EstimatorMode::Multi;
    s.epsilon = epsilon;
    s.params = params;
    return s;
}

} // namespace

double mse_bound(std::uint64_t n, double tv, double f_inf) {
    if (n < 1) throw std::invalid_argument("mse_bound: n must be >= 1");
    if (!(tv >= 0.0) || !(tv <= 1.0)) throw std::invalid_argument("mse_bound: tv must be in [0,1]");
    if (!(f_inf >= 0.0)) throw std::invalid_argument("mse_bound: f_inf must be >= 0");
    return f_inf * f_inf / static_cast<double>(n) + 2.0 * f_inf * f_inf * tv;
}

Schedule schedule_bounded(double epsilon, const ClassParams& params) {
    check_epsilon(epsilon);
    check_class(params);
    if (params.variant != ClassParams::Variant::Bounded)
        throw std::invalid_argument("schedule_bounded: params must be the bounded variant");
    const double drr = params.d * params.R / params.r;
    const double log_eps2 = 2.0 * std::log(1.0 / epsilon);
    const double l1 = std::log(8.0 * drr) + params.log_kappa + log_eps2;
    const double l2 = std::log(4.0) + params.log_kappa + log_eps2;
    return make_schedule(epsilon, params, 1e27 * drr * drr * l1 * l1 * l2);
}

Schedule schedule_average(double epsilon, const ClassParams& params) {
    check_epsilon(epsilon);
    check_class(params);
    if (params.variant != ClassParams::Variant::Average)
        throw std::invalid_argument("schedule_average: params must be the average variant");
    const double drr = params.d * params.R / params.r;
    const double log_eps2 = 2.0 * std::log(1.0 / epsilon);
    const double l1 = std::log(2.0 * drr) + params.log_kappa + log_eps2;
    const double l2 = params.log_kappa + log_eps2;
    return make_schedule(epsilon, params, 4e30 * drr * drr * l1 * l1 * l2 * l2 * l2);
}

TvBound tv_bound_explicit(double n0, int d, double r, double R, double D) {
    if (!(D >= 1.0)) throw std::invalid_argument("tv_bound_explicit: D must be >= 1");
    if (!(d * R / r >= 3.0)) throw std::invalid_argument("tv_bound_explicit: d R / r >= 3 required");
    if (!(n0 >= 0.0)) throw std::invalid_argument("tv_bound_explicit: n0 must be >= 0");
    const double drr = d * R / r;
    const double log_c = std::log(12.0 * drr * D);
    const double log_beta = -1e-9 / std::pow(drr, 2.0 / 3.0);
    const double raw = std::exp(log_c + std::cbrt(n0) * log_beta);
    return TvBound{std::min(1.0, raw), raw};
}

TvBound tv_bound_mixed(double n, int d, double r, double R, double D, double epsilon) {
    check_epsilon(epsilon);
    if (!(D >= 1.0)) throw std::invalid_argument("tv_bound_mixed: D must be >= 1");
    if (!(n >= 0.0)) throw std::invalid_argument("tv_bound_mixed: n must be >= 0");
    const double drr = d * R / r;
    const double l = std::log(8.0 * drr * D / epsilon);
    const double raw = 1.5 * epsilon + 2.0 * D * std::exp(-1e-26 * n / (8.0 * drr * drr * l * l));
    return TvBound{std::min(1.0, raw), raw};
}

double conductance_lower_bound(int d, double r, double R, double D, double epsilon) {
    check_epsilon(epsilon);
    if (!(D >= 1.0)) throw std::invalid_argument("conductance_lower_bound: D must be >= 1");
    const double drr = d * R / r;
    return 1e-13 / (2.0 * drr * std::log(4.0 * drr * D / epsilon));
}

GapBound gap_error_bound(std::uint64_t n, double gap, double f4_norm, double nu_l2_dist) {
    if (!(gap > 0.0) || !(gap <= 1.0))
        throw std::invalid_argument("gap_error_bound: gap must be in (0, 1]");
    if (!(f4_norm >= 0.0)) throw std::invalid_argument("gap_error_bound: f4_norm must be >= 0");
    if (!(nu_l2_dist > 0.0))
        throw std::invalid_argument("gap_error_bound: nu_l2_dist must be positive");
    if (n < 1) throw std::invalid_argument("gap_error_bound: n must be >= 1");
    GapBound out;
    out.mse_bound = 4.0 * f4_norm / (static_cast<double>(n) * gap);
    out.n0_min = static_cast<std::uint64_t>(std::ceil(std::log(64.0 * nu_l2_dist) / gap));
    return out;
}

} // namespace hitrun
