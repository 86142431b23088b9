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

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace hitrun {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval of line parameters; endpoints may be infinite.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
    double length() const { return hi - lo; }
    bool contains(double s) const { return s >= lo && s <= hi; }
};

/// Convex support set with an analytic chord oracle.
///
/// Four variants are supported: Euclidean ball, axis-aligned box, H-polytope
/// (a_i . x <= b_i with a verified interior point), and the full space.
/// Chords are computed in closed form per variant; no membership bisection
/// is involved.
class ConvexBody {
public:
    enum class Kind { Ball, Box, Polytope, Fullspace };

    static ConvexBody ball(Vec center, double radius);
    static ConvexBody box(Vec lo, Vec hi);
    /// The interior point is verified strictly feasible at construction; when
    /// absent, the origin is tried. radius_bound is required for chord-free
    /// circumradius queries in d > 3.
    static ConvexBody polytope(Mat a, Vec b, std::optional<Vec> interior = std::nullopt,
                               std::optional<double> radius_bound = std::nullopt);
    static ConvexBody fullspace(int dim);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    bool is_bounded() const { return kind_ != Kind::Fullspace; }

    /// Membership in the closed body.
    bool contains(const Vec& x) const;

    /// Chord {alpha : x + alpha u in K} for x in K and |u| = 1.
    /// The result satisfies lo <= 0 <= hi; unbounded only for fullspace.
    Interval chord(const Vec& x, const Vec& u) const;

    /// Smallest R with K inside the radius-R ball around the origin.
    /// Polytopes use vertex enumeration for d <= 3, the user-supplied bound
    /// otherwise; fullspace has no circumradius.
    double circumradius() const;

    /// Axis-aligned section: values t such that x with coordinate `axis`
    /// replaced by t lies in the body. Empty when the remaining coordinates
    /// already miss the body.
    std::optional<Interval> section(const Vec& x, int axis) const;

    /// Tight axis-aligned bounding box (bounded bodies only).
    void bounding_box(Vec& lo, Vec& hi) const;

    /// Lebesgue volume in closed form (ball and box only).
    double volume() const;

    // Variant accessors; valid only for the matching kind.
    const Vec& center() const { return center_; }
    double radius() const { return radius_; }
    const Vec& lo() const { return lo_; }
    const Vec& hi() const { return hi_; }
    const Mat& halfspace_normals() const { return a_; }
    const Vec& halfspace_offsets() const { return b_; }
    const Vec& interior_point() const { return interior_; }
    std::optional<double> polytope_radius_bound() const { return radius_bound_; }

    /// Vertices of a polytope by enumerating d-subsets of active constraints
    /// (d <= 3 only).
    std::vector<Vec> polytope_vertices() const;

private:
    ConvexBody() = default;

    Kind kind_ = Kind::Fullspace;
    int dim_ = 0;
    Vec center_;
    double radius_ = 0.0;
    Vec lo_, hi_;
    Mat a_;
    Vec b_;
    Vec interior_;
    std::optional<double> radius_bound_;
};

/// Unit-ball volume vol_d(B_d).
double unit_ball_volume(int d);

/// Surface measure vol_{d-1}(boundary of B_d).
double unit_sphere_area(int d);

} // namespace hitrun
