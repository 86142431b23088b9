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

#include "hitrun/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace hitrun {

namespace {

constexpr double kDegenerateDirection = 1e-14;

void check_dim(const ConvexBody& body, const Vec& x, const char* what) {
    if (x.size() != body.dim())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

} // namespace

ConvexBody ConvexBody::ball(Vec center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
    ConvexBody body;
    body.kind_ = Kind::Ball;
    body.dim_ = static_cast<int>(center.size());
    body.center_ = std::move(center);
    body.radius_ = radius;
    return body;
}

ConvexBody ConvexBody::box(Vec lo, Vec hi) {
    if (lo.size() != hi.size()) throw std::invalid_argument("box: lo/hi dimension mismatch");
    for (Eigen::Index i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw std::invalid_argument("box: lo < hi must hold per axis");
    ConvexBody body;
    body.kind_ = Kind::Box;
    body.dim_ = static_cast<int>(lo.size());
    body.lo_ = std::move(lo);
    body.hi_ = std::move(hi);
    return body;
}

ConvexBody ConvexBody::polytope(Mat a, Vec b, std::optional<Vec> interior,
                                std::optional<double> radius_bound) {
    if (a.rows() != b.size()) throw std::invalid_argument("polytope: a/b row mismatch");
    if (a.rows() == 0) throw std::invalid_argument("polytope: needs at least one halfspace");
    const int d = static_cast<int>(a.cols());
    Vec p = interior.value_or(Vec::Zero(d));
    if (p.size() != d) throw std::invalid_argument("polytope: interior point dimension mismatch");
    const Vec slack = b - a * p;
    for (Eigen::Index i = 0; i < slack.size(); ++i) {
        if (!(slack[i] > 1e-12 * (1.0 + std::abs(b[i]))))
            throw std::invalid_argument(
                "polytope: supplied (or default origin) point is not strictly interior");
    }
    ConvexBody body;
    body.kind_ = Kind::Polytope;
    body.dim_ = d;
    body.a_ = std::move(a);
    body.b_ = std::move(b);
    body.interior_ = std::move(p);
    body.radius_bound_ = radius_bound;
    return body;
}

ConvexBody ConvexBody::fullspace(int dim) {
    if (dim < 1) throw std::invalid_argument("fullspace: dimension must be >= 1");
    ConvexBody body;
    body.kind_ = Kind::Fullspace;
    body.dim_ = dim;
    return body;
}

bool ConvexBody::contains(const Vec& x) const {
    check_dim(*this, x, "contains");
    switch (kind_) {
    case Kind::Ball:
        return (x - center_).norm() <= radius_ * (1.0 + 1e-12);
    case Kind::Box:
        for (int i = 0; i < dim_; ++i)
            if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
        return true;
    case Kind::Polytope: {
        const Vec slack = b_ - a_ * x;
        for (Eigen::Index i = 0; i < slack.size(); ++i)
            if (slack[i] < -1e-12 * (1.0 + std::abs(b_[i]))) return false;
        return true;
    }
    case Kind::Fullspace:
        return true;
    }
    return false;
}

Interval ConvexBody::chord(const Vec& x, const Vec& u) const {
    check_dim(*this, x, "chord");
    check_dim(*this, u, "chord");
    const double un = u.norm();
    if (un < kDegenerateDirection) throw std::invalid_argument("chord: zero direction vector");
    if (std::abs(un - 1.0) > 1e-12)
        throw std::invalid_argument("chord: direction must be a unit vector");
    if (!contains(x)) throw std::invalid_argument("chord: point outside the body");

    double lo = -kInf, hi = kInf;
    switch (kind_) {
    case Kind::Ball: {
        const Vec w = x - center_;
        const double p = u.dot(w);
        const double q = w.squaredNorm() - radius_ * radius_;
        const double disc = std::max(p * p - q, 0.0);
        const double root = std::sqrt(disc);
        lo = -p - root;
        hi = -p + root;
        break;
    }
    case Kind::Box: {
        lo = -kInf;
        hi = kInf;
        for (int i = 0; i < dim_; ++i) {
            if (std::abs(u[i]) < kDegenerateDirection) continue;
            const double t0 = (lo_[i] - x[i]) / u[i];
            const double t1 = (hi_[i] - x[i]) / u[i];
            lo = std::max(lo, std::min(t0, t1));
            hi = std::min(hi, std::max(t0, t1));
        }
        break;
    }
    case Kind::Polytope: {
        lo = -kInf;
        hi = kInf;
        for (Eigen::Index i = 0; i < a_.rows(); ++i) {
            const double denom = a_.row(i).dot(u);
            const double slack = b_[i] - a_.row(i).dot(x);
            if (std::abs(denom) < kDegenerateDirection) {
                if (slack < -1e-12 * (1.0 + std::abs(b_[i])))
                    throw std::invalid_argument("chord: point outside the body");
                continue;
            }
            const double t = slack / denom;
            if (denom > 0.0)
                hi = std::min(hi, t);
            else
                lo = std::max(lo, t);
        }
        break;
    }
    case Kind::Fullspace:
        return {-kInf, kInf};
    }
    // Containment guarantees 0 in the chord; clamp away sign noise so
    // boundary starts return a one-sided interval instead of an empty one.
    lo = std::min(lo, 0.0);
    hi = std::max(hi, 0.0);
    return {lo, hi};
}

double ConvexBody::circumradius() const {
    switch (kind_) {
    case Kind::Ball:
        return center_.norm() + radius_;
    case Kind::Box: {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += std::max(lo_[i] * lo_[i], hi_[i] * hi_[i]);
        return std::sqrt(s);
    }
    case Kind::Polytope: {
        if (dim_ <= 3) {
            double best = 0.0;
            for (const Vec& v : polytope_vertices()) best = std::max(best, v.norm());
            if (best > 0.0) return best;
        }
        if (radius_bound_) return *radius_bound_;
        throw std::runtime_error(
            "circumradius: polytope in d > 3 requires a user-supplied radius bound");
    }
    case Kind::Fullspace:
        throw std::runtime_error("circumradius: fullspace has no circumradius");
    }
    return 0.0;
}

std::optional<Interval> ConvexBody::section(const Vec& x, int axis) const {
    check_dim(*this, x, "section");
    if (axis < 0 || axis >= dim_) throw std::invalid_argument("section: axis out of range");
    switch (kind_) {
    case Kind::Ball: {
        double rest = 0.0;
        for (int i = 0; i < dim_; ++i) {
            if (i == axis) continue;
            const double w = x[i] - center_[i];
            rest += w * w;
        }
        const double disc = radius_ * radius_ - rest;
        if (disc < 0.0) return std::nullopt;
        const double root = std::sqrt(disc);
        return Interval{center_[axis] - root, center_[axis] + root};
    }
    case Kind::Box: {
        for (int i = 0; i < dim_; ++i) {
            if (i == axis) continue;
            if (x[i] < lo_[i] || x[i] > hi_[i]) return std::nullopt;
        }
        return Interval{lo_[axis], hi_[axis]};
    }
    case Kind::Polytope: {
        double lo = -kInf, hi = kInf;
        for (Eigen::Index i = 0; i < a_.rows(); ++i) {
            double rest = 0.0;
            for (int j = 0; j < dim_; ++j)
                if (j != axis) rest += a_(i, j) * x[j];
            const double coef = a_(i, axis);
            const double rhs = b_[i] - rest;
            if (std::abs(coef) < kDegenerateDirection) {
                if (rhs < -1e-12 * (1.0 + std::abs(b_[i]))) return std::nullopt;
                continue;
            }
            const double t = rhs / coef;
            if (coef > 0.0)
                hi = std::min(hi, t);
            else
                lo = std::max(lo, t);
        }
        if (!(lo <= hi)) return std::nullopt;
        return Interval{lo, hi};
    }
    case Kind::Fullspace:
        return Interval{-kInf, kInf};
    }
    return std::nullopt;
}

void ConvexBody::bounding_box(Vec& lo, Vec& hi) const {
    switch (kind_) {
    case Kind::Ball:
        lo = center_.array() - radius_;
        hi = center_.array() + radius_;
        return;
    case Kind::Box:
        lo = lo_;
        hi = hi_;
        return;
    case Kind::Polytope: {
        if (dim_ <= 3) {
            const auto verts = polytope_vertices();
            if (!verts.empty()) {
                lo = verts.front();
                hi = verts.front();
                for (const Vec& v : verts) {
                    lo = lo.cwiseMin(v);
                    hi = hi.cwiseMax(v);
                }
                return;
            }
        }
        const double r = circumradius();
        lo = Vec::Constant(dim_, -r);
        hi = Vec::Constant(dim_, r);
        return;
    }
    case Kind::Fullspace:
        throw std::runtime_error("bounding_box: fullspace is unbounded");
    }
}

double ConvexBody::volume() const {
    switch (kind_) {
    case Kind::Ball:
        return unit_ball_volume(dim_) * std::pow(radius_, dim_);
    case Kind::Box:
        return (hi_ - lo_).prod();
    default:
        throw std::runtime_error("volume: closed form available for ball and box only");
    }
}

std::vector<Vec> ConvexBody::polytope_vertices() const {
    if (kind_ != Kind::Polytope) throw std::runtime_error("polytope_vertices: not a polytope");
    if (dim_ > 3) throw std::runtime_error("polytope_vertices: supported for d <= 3 only");
    const int m = static_cast<int>(a_.rows());
    std::vector<Vec> verts;
    std::vector<int> idx(dim_);
    // Enumerate d-subsets of constraints, solve for the intersection point,
    // keep feasible ones.
    std::function<void(int, int)> recurse = [&](int start, int depth) {
        if (depth == dim_) {
            Mat sys(dim_, dim_);
            Vec rhs(dim_);
            for (int k = 0; k < dim_; ++k) {
                sys.row(k) = a_.row(idx[k]);
                rhs[k] = b_[idx[k]];
            }
            Eigen::FullPivLU<Mat> lu(sys);
            if (!lu.isInvertible()) return;
            const Vec v = lu.solve(rhs);
            if (contains(v)) {
                for (const Vec& w : verts)
                    if ((w - v).norm() < 1e-9 * (1.0 + v.norm())) return;
                verts.push_back(v);
            }
            return;
        }
        for (int i = start; i < m; ++i) {
            idx[depth] = i;
            recurse(i + 1, depth + 1);
        }
    };
    recurse(0, 0);
    return verts;
}

double unit_ball_volume(int d) {
    return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double unit_sphere_area(int d) {
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

} // namespace hitrun
