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

#include "hitrun/densities.hpp"
#include "hitrun/rng.hpp"

namespace hitrun {

/// Draws from the normalized line density.
///
/// gaussian1d restrictions use truncated-normal inversion (switching to an
/// exponential-proposal rejection scheme in far tails), uniform restrictions
/// a plain uniform, anything else adaptive rejection sampling. A degenerate
/// domain (lo == hi) returns lo.
double sample_line(const LineDensity& ld, RandomStream& rng);

/// N(mean, sd^2) conditioned on the interval.
double sample_truncated_normal(double mean, double sd, const Interval& domain,
                               RandomStream& rng);

/// Adaptive rejection sampler for concave log-densities, with a
/// piecewise-exponential upper hull built from secants (derivative-free).
///
/// Throws std::invalid_argument when an evaluated point rises above the hull,
/// which certifies the log-density is not concave.
class ArsSampler {
public:
    explicit ArsSampler(const LineDensity& ld);

    double draw(RandomStream& rng);

    std::uint64_t proposals() const { return proposals_; }
    std::uint64_t accepts() const { return accepts_; }

private:
    struct Point {
        double s;
        double h;
    };
    struct Piece {
        double lo, hi;    // piece support; lo may be -inf, hi may be +inf
        double level;     // hull value at anchor
        double slope;
        double anchor;    // hull(s) = level + slope * (s - anchor)
        double log_mass;  // log of the integral of exp(hull) over the piece
    };

    void init_support_points(const LineDensity& ld);
    void rebuild_hull();
    double hull_value(double s) const;
    double sample_hull(RandomStream& rng) const;
    void insert_point(double s, double h);

    Interval domain_;
    std::function<double(double)> log_h_;
    std::vector<Point> points_;
    std::vector<Piece> pieces_;
    std::uint64_t proposals_ = 0;
    std::uint64_t accepts_ = 0;
};

} // namespace hitrun
