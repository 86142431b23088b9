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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hitrun/line_sampler.hpp"
#include "hitrun/special_functions.hpp"
#include "hitrun/validation.hpp"

using namespace hitrun;

namespace {

LineDensity uniform_line(double lo, double hi) {
    LineDensity ld;
    ld.domain = {lo, hi};
    ld.family = LineDensity::Family::Uniform;
    ld.log_eval = [](double) { return 0.0; };
    return ld;
}

LineDensity gaussian_line(double mean, double sd, Interval domain) {
    LineDensity ld;
    ld.domain = domain;
    ld.family = LineDensity::Family::Gaussian1D;
    ld.gauss = {mean, sd};
    ld.log_eval = [mean, sd](double s) {
        const double z = (s - mean) / sd;
        return -0.5 * z * z;
    };
    return ld;
}

LineDensity generic_line(std::function<double(double)> log_eval, Interval domain) {
    LineDensity ld;
    ld.domain = domain;
    ld.family = LineDensity::Family::Generic;
    ld.log_eval = std::move(log_eval);
    return ld;
}

std::vector<double> draw_many(const LineDensity& ld, int n, std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = sample_line(ld, rng);
    return out;
}

} // namespace

TEST_CASE("uniform line sampling is uniform") {
    const auto draws = draw_many(uniform_line(0.0, 1.0), 100000, 11);
    const double ks = ks_statistic(draws, [](double t) { return std::min(1.0, std::max(0.0, t)); });
    CHECK(ks < 0.006);
}

TEST_CASE("unbounded gaussian line sampling matches its moments") {
    const auto draws = draw_many(gaussian_line(3.0, 2.0, {-kInf, kInf}), 100000, 17);
    double mean = 0.0;
    for (double s : draws) mean += s;
    mean /= draws.size();
    double var = 0.0;
    for (double s : draws) var += (s - mean) * (s - mean);
    var /= draws.size() - 1;
    // 5 standard errors: se(mean) = sd/sqrt(n), se(var) ~ sd^2 sqrt(2/n).
    CHECK(std::abs(mean - 3.0) < 5.0 * 2.0 / std::sqrt(1e5));
    CHECK(std::abs(var - 4.0) < 5.0 * 4.0 * std::sqrt(2.0 / 1e5));
}

TEST_CASE("generic exponential slope on [0, 1] matches the closed-form CDF") {
    const auto ld = generic_line([](double s) { return -s; }, {0.0, 1.0});
    const auto draws = draw_many(ld, 100000, 23);
    const double z = 1.0 - std::exp(-1.0);
    const double ks = ks_statistic(draws, [z](double t) {
        return (1.0 - std::exp(-std::min(std::max(t, 0.0), 1.0))) / z;
    });
    CHECK(ks < 0.006);
}

TEST_CASE("far-tail truncated normal sampling stays accurate") {
    // [7, 8] lies beyond the 6 sd switch; exact CDF via erfc ratios.
    const auto draws = draw_many(gaussian_line(0.0, 1.0, {7.0, 8.0}), 100000, 29);
    const double ca = std::erfc(7.0 * M_SQRT1_2);
    const double cb = std::erfc(8.0 * M_SQRT1_2);
    const double ks = ks_statistic(draws, [ca, cb](double t) {
        const double ct = std::erfc(std::min(std::max(t, 7.0), 8.0) * M_SQRT1_2);
        return (ca - ct) / (ca - cb);
    });
    CHECK(ks < 0.006);
    for (double s : draws) {
        REQUIRE(s >= 7.0);
        REQUIRE(s <= 8.0);
    }
}

TEST_CASE("mirrored far tail") {
    const auto draws = draw_many(gaussian_line(1.0, 0.5, {-kInf, -2.5}), 50000, 31);
    // Standardized upper edge: (-2.5 - 1)/0.5 = -7, past the switch.
    for (double s : draws) REQUIRE(s <= -2.5);
    double mean = 0.0;
    for (double s : draws) mean += s;
    mean /= draws.size();
    // Conditional mean of the standardized tail at a = 7: -(1 + 0.5 * h(7))
    // with hazard h(a) = phi(a) / Phi(-a); h(7) ~ 7.1371557.
    const double hazard = std::exp(-0.5 * 49.0) / std::sqrt(2.0 * M_PI) / norm_cdf(-7.0);
    const double expected = 1.0 - 0.5 * hazard;
    CHECK(mean == doctest::Approx(expected).epsilon(2e-3));
}

TEST_CASE("ARS path agrees with exact family paths (two-sample KS)") {
    const double threshold = 1.9495 * std::sqrt(2.0 / 1e5); // significance 1e-3
    {
        const auto exact = draw_many(gaussian_line(0.3, 0.8, {-1.0, 2.0}), 100000, 37);
        const auto mean = 0.3, sd = 0.8;
        const auto generic = draw_many(generic_line(
                                           [mean, sd](double s) {
                                               const double z = (s - mean) / sd;
                                               return -0.5 * z * z;
                                           },
                                           {-1.0, 2.0}),
                                       100000, 41);
        CHECK(two_sample_ks(exact, generic) < threshold);
    }
    {
        const auto exact = draw_many(uniform_line(-1.0, 1.0), 100000, 43);
        const auto generic = draw_many(generic_line([](double) { return 0.0; }, {-1.0, 1.0}),
                                       100000, 47);
        CHECK(two_sample_ks(exact, generic) < threshold);
    }
}

TEST_CASE("ARS handles unbounded gaussian-like log densities") {
    const auto draws = draw_many(
        generic_line([](double s) { return -0.5 * (s - 2.0) * (s - 2.0); }, {-kInf, kInf}),
        100000, 53);
    const double ks = ks_statistic(draws, [](double t) { return norm_cdf(t - 2.0); });
    CHECK(ks < 0.006);
}

TEST_CASE("every sample lies in the closed domain") {
    RandomStream rng(59);
    for (int trial = 0; trial < 50; ++trial) {
        const double lo = rng.uniform(-3.0, 0.0);
        const double hi = lo + rng.uniform(0.01, 4.0);
        const double curv = rng.uniform(0.1, 3.0);
        const double center = rng.uniform(lo, hi);
        const auto ld = generic_line(
            [curv, center](double s) { return -curv * (s - center) * (s - center); }, {lo, hi});
        RandomStream draw_rng(1000 + trial);
        for (int i = 0; i < 200; ++i) {
            const double s = sample_line(ld, draw_rng);
            REQUIRE(s >= lo);
            REQUIRE(s <= hi);
        }
    }
}

TEST_CASE("degenerate domain returns its endpoint") {
    RandomStream rng(61);
    CHECK(sample_line(uniform_line(0.7, 0.7), rng) == 0.7);
    CHECK(sample_line(gaussian_line(0.0, 1.0, {0.4, 0.4}), rng) == 0.4);
}

TEST_CASE("unbounded domains require eventually decreasing tails") {
    // Increasing log density toward +inf has no normalizable restriction.
    const auto bad = generic_line([](double s) { return s; }, {0.0, kInf});
    RandomStream rng(63);
    CHECK_THROWS_AS(sample_line(bad, rng), std::invalid_argument);
}

TEST_CASE("non-concave log density is detected") {
    const auto convex = generic_line([](double s) { return s * s; }, {-1.0, 1.0});
    RandomStream rng(67);
    CHECK_THROWS_AS(
        [&] {
            for (int i = 0; i < 200; ++i) sample_line(convex, rng);
        }(),
        std::invalid_argument);
}

TEST_CASE("ARS acceptance rate stays above the regression floor") {
    // Shipped test densities: truncated exponential, gaussian-like, tilted.
    const std::vector<LineDensity> densities = {
        generic_line([](double s) { return -s; }, {0.0, 1.0}),
        generic_line([](double s) { return -0.5 * s * s; }, {-2.0, 5.0}),
        generic_line([](double s) { return -std::abs(s) * 1.7; }, {-4.0, 4.0}),
    };
    for (const auto& ld : densities) {
        ArsSampler ars(ld);
        RandomStream rng(71);
        const int warmup = 50;
        for (int i = 0; i < warmup; ++i) ars.draw(rng);
        const std::uint64_t p0 = ars.proposals();
        const std::uint64_t a0 = ars.accepts();
        for (int i = 0; i < 10000; ++i) ars.draw(rng);
        const double rate = static_cast<double>(ars.accepts() - a0) /
                            static_cast<double>(ars.proposals() - p0);
        CHECK(rate >= 0.2);
    }
}
