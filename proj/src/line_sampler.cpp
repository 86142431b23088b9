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

#include "hitrun/line_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hitrun/special_functions.hpp"

namespace hitrun {

namespace {

constexpr std::size_t kMaxHullPoints = 64;
constexpr double kTailSwitch = 6.0; // standardized distance triggering tail rejection

// One-sided rejection sampler for a standardized normal conditioned on
// [a, b] with a >= kTailSwitch, using a translated-exponential proposal.
double standard_tail_rejection(double a, double b, RandomStream& rng) {
    const double rate = 0.5 * (a + std::sqrt(a * a + 4.0));
    // The conditional density varies by less than 1e-8 over intervals this
    // narrow; a uniform draw avoids a near-zero acceptance rate.
    if ((b - a) * rate < 1e-8) return a + (b - a) * rng.uniform01();
    for (int iter = 0; iter < 100000000; ++iter) {
        const double z = a - std::log(rng.uniform01()) / rate;
        if (z > b) continue;
        const double diff = z - rate;
        if (std::log(rng.uniform01()) <= -0.5 * diff * diff) return z;
    }
    throw std::runtime_error("sample_truncated_normal: tail rejection stalled");
}

} // namespace

double sample_truncated_normal(double mean, double sd, const Interval& domain,
                               RandomStream& rng) {
    if (!(sd > 0.0)) throw std::invalid_argument("sample_truncated_normal: sd must be positive");
    if (domain.lo == domain.hi) return domain.lo;
    const double a = (domain.lo - mean) / sd;
    const double b = (domain.hi - mean) / sd;
    if (a >= kTailSwitch) return mean + sd * standard_tail_rejection(a, b, rng);
    if (b <= -kTailSwitch) return mean - sd * standard_tail_rejection(-b, -a, rng);

    const double pa = norm_cdf(a);
    const double pb = norm_cdf(b);
    if (pb - pa < 1e-15) return mean + sd * 0.5 * (std::max(a, -kTailSwitch) +
                                                   std::min(b, kTailSwitch));
    double p = pa + rng.uniform01() * (pb - pa);
    p = std::min(std::max(p, 1e-300), 1.0 - 1e-16);
    const double z = std::min(std::max(norm_quantile(p), a), b);
    return mean + sd * z;
}

double sample_line(const LineDensity& ld, RandomStream& rng) {
    if (!(ld.domain.lo <= ld.domain.hi))
        throw std::invalid_argument("sample_line: empty domain");
    if (ld.domain.lo == ld.domain.hi) return ld.domain.lo;
    switch (ld.family) {
    case LineDensity::Family::Uniform:
        if (!ld.domain.bounded())
            throw std::invalid_argument("sample_line: uniform restriction on unbounded chord");
        return rng.uniform(ld.domain.lo, ld.domain.hi);
    case LineDensity::Family::Gaussian1D:
        return sample_truncated_normal(ld.gauss.mean, ld.gauss.sd, ld.domain, rng);
    case LineDensity::Family::Generic: {
        ArsSampler ars(ld);
        return ars.draw(rng);
    }
    }
    throw std::logic_error("sample_line: unknown family");
}

ArsSampler::ArsSampler(const LineDensity& ld) : domain_(ld.domain), log_h_(ld.log_eval) {
    if (!log_h_) throw std::invalid_argument("ArsSampler: log_eval required");
    init_support_points(ld);
    rebuild_hull();
}

void ArsSampler::init_support_points(const LineDensity&) {
    const bool lo_inf = !std::isfinite(domain_.lo);
    const bool hi_inf = !std::isfinite(domain_.hi);
    double s0, s1, s2;
    if (!lo_inf && !hi_inf) {
        const double w = domain_.length();
        s0 = domain_.lo + 0.25 * w;
        s1 = domain_.lo + 0.50 * w;
        s2 = domain_.lo + 0.75 * w;
    } else if (!lo_inf) {
        s0 = domain_.lo + 0.25;
        s1 = domain_.lo + 0.5;
        s2 = domain_.lo + 1.0;
    } else if (!hi_inf) {
        s0 = domain_.hi - 1.0;
        s1 = domain_.hi - 0.5;
        s2 = domain_.hi - 0.25;
    } else {
        s0 = -1.0;
        s1 = 0.0;
        s2 = 1.0;
    }
    points_ = {{s0, log_h_(s0)}, {s1, log_h_(s1)}, {s2, log_h_(s2)}};
    for (const Point& p : points_)
        if (!std::isfinite(p.h))
            throw std::invalid_argument("ArsSampler: log density not finite at interior point");

    // Unbounded tails need the outer secant slopes to point downhill; push
    // the outer abscissae out by doubling until they do.
    auto slope = [&](const Point& p, const Point& q) { return (q.h - p.h) / (q.s - p.s); };
    if (lo_inf) {
        int tries = 0;
        while (slope(points_[0], points_[1]) <= 0.0) {
            const double gap = points_[1].s - points_[0].s;
            const double s = points_[1].s - 2.0 * gap;
            points_[0] = {s, log_h_(s)};
            if (++tries > 200)
                throw std::invalid_argument(
                    "ArsSampler: log density is not eventually decreasing toward -inf");
        }
    }
    if (hi_inf) {
        int tries = 0;
        while (slope(points_[1], points_[2]) >= 0.0) {
            const double gap = points_[2].s - points_[1].s;
            const double s = points_[1].s + 2.0 * gap;
            points_[2] = {s, log_h_(s)};
            if (++tries > 200)
                throw std::invalid_argument(
                    "ArsSampler: log density is not eventually decreasing toward +inf");
        }
    }
}

namespace {

// log of the integral of exp(level + slope (s - anchor)) over [lo, hi].
double piece_log_mass(double lo, double hi, double level, double slope, double anchor) {
    if (!std::isfinite(lo)) {
        // requires slope > 0
        return level + slope * (hi - anchor) - std::log(slope);
    }
    if (!std::isfinite(hi)) {
        // requires slope < 0
        return level + slope * (lo - anchor) - std::log(-slope);
    }
    const double delta = hi - lo;
    if (delta <= 0.0) return -kInf;
    const double va = level + slope * (lo - anchor);
    const double vb = level + slope * (hi - anchor);
    const double mag = std::abs(slope) * delta;
    if (mag < 1e-12) return va + std::log(delta);
    // top + log((1 - exp(-|slope| delta)) / |slope|), stable for any slope size
    return std::max(va, vb) + std::log(-std::expm1(-mag) / std::abs(slope));
}

} // namespace

void ArsSampler::rebuild_hull() {
    const std::size_t k = points_.size();
    pieces_.clear();
    std::vector<double> m(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i)
        m[i] = (points_[i + 1].h - points_[i].h) / (points_[i + 1].s - points_[i].s);

    auto push = [&](double lo, double hi, double level, double slope, double anchor) {
        if (hi <= lo) return;
        Piece piece{lo, hi, level, slope, anchor,
                    piece_log_mass(lo, hi, level, slope, anchor)};
        if (std::isfinite(piece.log_mass) || piece.log_mass == -kInf)
            pieces_.push_back(piece);
    };

    // Outer left region.
    if (domain_.lo < points_.front().s) {
        if (!std::isfinite(domain_.lo) && m[0] <= 0.0)
            throw std::logic_error("ArsSampler: left tail slope not positive");
        push(domain_.lo, points_.front().s, points_.front().h, m[0], points_.front().s);
    }
    // Interior intervals: the hull is the lower of the two adjacent secant
    // extensions, split at their crossing.
    for (std::size_t i = 0; i + 1 < k; ++i) {
        const Point& pl = points_[i];
        const Point& pr = points_[i + 1];
        const bool has_left = i >= 1;
        const bool has_right = i + 2 < k;
        if (has_left && has_right) {
            const double ml = m[i - 1];
            const double mr = m[i + 1];
            if (std::abs(ml - mr) < 1e-14 * (1.0 + std::abs(ml))) {
                push(pl.s, pr.s, pl.h, ml, pl.s);
            } else {
                double cross = (pr.h - pl.h + ml * pl.s - mr * pr.s) / (ml - mr);
                cross = std::min(std::max(cross, pl.s), pr.s);
                push(pl.s, cross, pl.h, ml, pl.s);
                push(cross, pr.s, pr.h, mr, pr.s);
            }
        } else if (has_left) {
            push(pl.s, pr.s, pl.h, m[i - 1], pl.s);
        } else if (has_right) {
            push(pl.s, pr.s, pr.h, m[i + 1], pr.s);
        } else {
            throw std::logic_error("ArsSampler: hull needs at least three support points");
        }
    }
    // Outer right region.
    if (domain_.hi > points_.back().s) {
        if (!std::isfinite(domain_.hi) && m[k - 2] >= 0.0)
            throw std::logic_error("ArsSampler: right tail slope not negative");
        push(points_.back().s, domain_.hi, points_.back().h, m[k - 2], points_.back().s);
    }
    if (pieces_.empty()) throw std::logic_error("ArsSampler: empty hull");
}

double ArsSampler::hull_value(double s) const {
    for (const Piece& p : pieces_)
        if (s >= p.lo && s <= p.hi) return p.level + p.slope * (s - p.anchor);
    // s sits on a piece boundary rounding gap; use the closest piece.
    const Piece& last = pieces_.back();
    return last.level + last.slope * (s - last.anchor);
}

double ArsSampler::sample_hull(RandomStream& rng) const {
    double max_log = -kInf;
    for (const Piece& p : pieces_) max_log = std::max(max_log, p.log_mass);
    double total = 0.0;
    for (const Piece& p : pieces_) total += std::exp(p.log_mass - max_log);
    double target = rng.uniform01() * total;
    std::size_t chosen = pieces_.size() - 1;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        target -= std::exp(pieces_[i].log_mass - max_log);
        if (target <= 0.0) {
            chosen = i;
            break;
        }
    }
    const Piece& p = pieces_[chosen];
    const double u = rng.uniform01();
    if (!std::isfinite(p.lo)) return p.hi + std::log(u) / p.slope;
    if (!std::isfinite(p.hi)) return p.lo + std::log(u) / p.slope;
    const double delta = p.hi - p.lo;
    const double mag = p.slope * delta;
    if (std::abs(mag) < 1e-12) return p.lo + u * delta;
    if (p.slope < 0.0) return p.lo + std::log1p(u * std::expm1(mag)) / p.slope;
    // Positive slope: sample the mirrored piece to keep expm1 arguments negative.
    return p.hi + std::log1p(u * std::expm1(-mag)) / p.slope;
}

void ArsSampler::insert_point(double s, double h) {
    if (points_.size() >= kMaxHullPoints) return;
    auto it = std::lower_bound(points_.begin(), points_.end(), s,
                               [](const Point& p, double v) { return p.s < v; });
    if (it != points_.end() && it->s == s) return;
    points_.insert(it, Point{s, h});
    rebuild_hull();
}

double ArsSampler::draw(RandomStream& rng) {
    for (int iter = 0; iter < 100000; ++iter) {
        const double s = sample_hull(rng);
        ++proposals_;
        if (!(s >= domain_.lo && s <= domain_.hi)) continue; // rounding spill
        const double h = log_h_(s);
        const double u = hull_value(s);
        if (h > u + 1e-7 * (1.0 + std::abs(h)))
            throw std::invalid_argument("ArsSampler: log density is not concave");
        if (std::isfinite(h) && std::log(rng.uniform01()) <= h - u) {
            ++accepts_;
            return s;
        }
        if (std::isfinite(h)) insert_point(s, h);
    }
    throw std::runtime_error("ArsSampler: acceptance stalled");
}

} // namespace hitrun
