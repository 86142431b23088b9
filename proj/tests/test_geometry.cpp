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

#include "hitrun/geometry.hpp"
#include "hitrun/hit_and_run.hpp"
#include "hitrun/json_io.hpp"
#include "hitrun/rng.hpp"

using namespace hitrun;

namespace {

Vec make_vec(std::initializer_list<double> values) {
    Vec v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

// Random test bodies in dimension d: balls, boxes, and polytopes built from
// halfspaces at positive distance from the origin (so the origin is interior).
ConvexBody random_body(int d, RandomStream& rng) {
    const int pick = static_cast<int>(rng.uniform01() * 3.0);
    if (pick == 0) {
        Vec c(d);
        for (int i = 0; i < d; ++i) c[i] = rng.uniform(-0.5, 0.5);
        return ConvexBody::ball(c, rng.uniform(0.5, 2.0));
    }
    if (pick == 1) {
        Vec lo(d), hi(d);
        for (int i = 0; i < d; ++i) {
            lo[i] = rng.uniform(-2.0, -0.1);
            hi[i] = rng.uniform(0.1, 2.0);
        }
        return ConvexBody::box(lo, hi);
    }
    // Axis slabs keep the polytope bounded; extra random halfspaces cut it.
    const int extra = d + 1;
    const int m = 2 * d + extra;
    Mat a = Mat::Zero(m, d);
    Vec b(m);
    for (int i = 0; i < d; ++i) {
        a(2 * i, i) = 1.0;
        a(2 * i + 1, i) = -1.0;
        b[2 * i] = rng.uniform(1.0, 2.5);
        b[2 * i + 1] = rng.uniform(1.0, 2.5);
    }
    for (int i = 2 * d; i < m; ++i) {
        a.row(i) = sample_direction(d, rng);
        b[i] = rng.uniform(0.5, 2.0);
    }
    return ConvexBody::polytope(a, b);
}

Vec random_interior_point(const ConvexBody& body, RandomStream& rng) {
    // Rejection from the bounding box; all test bodies contain the origin.
    Vec lo, hi;
    body.bounding_box(lo, hi);
    for (int tries = 0; tries < 10000; ++tries) {
        Vec x(body.dim());
        for (int i = 0; i < body.dim(); ++i) x[i] = rng.uniform(lo[i], hi[i]);
        if (body.contains(x)) return x;
    }
    return Vec::Zero(body.dim());
}

} // namespace

TEST_CASE("contains anchors") {
    const ConvexBody ball = ConvexBody::ball(Vec::Zero(2), 1.0);
    CHECK(ball.contains(Vec::Zero(2)));
    CHECK_FALSE(ball.contains(make_vec({2.0, 0.0})));

    Mat a(2, 1);
    a << 1.0, -1.0;
    const ConvexBody slab = ConvexBody::polytope(a, make_vec({1.0, 1.0}));
    CHECK(slab.contains(make_vec({0.5})));
    CHECK_FALSE(slab.contains(make_vec({1.5})));

    CHECK_THROWS_AS(ball.contains(Vec::Zero(3)), std::invalid_argument);
}

TEST_CASE("chord anchors") {
    const ConvexBody ball = ConvexBody::ball(Vec::Zero(2), 1.0);
    const Interval c1 = ball.chord(Vec::Zero(2), make_vec({1.0, 0.0}));
    CHECK(c1.lo == doctest::Approx(-1.0));
    CHECK(c1.hi == doctest::Approx(1.0));

    const ConvexBody all = ConvexBody::fullspace(3);
    const Interval c2 = all.chord(Vec::Zero(3), make_vec({1.0, 0.0, 0.0}));
    CHECK(c2.lo == -kInf);
    CHECK(c2.hi == kInf);

    // Per-axis slab intersection for the box: from (0.5, 1) along e1 the
    // x-range [0, 1] binds, giving [-0.5, 0.5].
    const ConvexBody box = ConvexBody::box(make_vec({0.0, 0.0}), make_vec({1.0, 2.0}));
    const Interval c3 = box.chord(make_vec({0.5, 1.0}), make_vec({1.0, 0.0}));
    CHECK(c3.lo == doctest::Approx(-0.5));
    CHECK(c3.hi == doctest::Approx(0.5));

    CHECK_THROWS_AS(ball.chord(make_vec({3.0, 0.0}), make_vec({1.0, 0.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(ball.chord(Vec::Zero(2), Vec::Zero(2)), std::invalid_argument);
    CHECK_THROWS_AS(ball.chord(Vec::Zero(2), make_vec({2.0, 0.0})), std::invalid_argument);
}

TEST_CASE("circumradius anchors") {
    CHECK(ConvexBody::ball(Vec::Zero(2), 1.0).circumradius() == doctest::Approx(1.0));
    CHECK(ConvexBody::box(make_vec({-1.0, -1.0}), make_vec({1.0, 1.0})).circumradius() ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK(ConvexBody::ball(make_vec({1.0, 0.0}), 1.0).circumradius() == doctest::Approx(2.0));
    CHECK_THROWS_AS(ConvexBody::fullspace(2).circumradius(), std::runtime_error);
}

TEST_CASE("polytope circumradius via vertex enumeration") {
    // Unit square as a polytope: vertices (+-1, +-1), circumradius sqrt(2).
    Mat a(4, 2);
    a << 1, 0, -1, 0, 0, 1, 0, -1;
    const ConvexBody square = ConvexBody::polytope(a, Vec::Ones(4));
    CHECK(square.circumradius() == doctest::Approx(std::sqrt(2.0)));
    CHECK(square.polytope_vertices().size() == 4);

    // d = 4 cross-polytope slab needs the user bound.
    Mat a4(8, 4);
    a4.setZero();
    for (int i = 0; i < 4; ++i) {
        a4(2 * i, i) = 1.0;
        a4(2 * i + 1, i) = -1.0;
    }
    CHECK_THROWS_AS(ConvexBody::polytope(a4, Vec::Ones(8)).circumradius(), std::runtime_error);
    CHECK(ConvexBody::polytope(a4, Vec::Ones(8), std::nullopt, 2.0).circumradius() ==
          doctest::Approx(2.0));
}

TEST_CASE("polytope construction verifies the interior point") {
    Mat a(2, 1);
    a << 1.0, -1.0;
    CHECK_THROWS_AS(ConvexBody::polytope(a, make_vec({1.0, -2.0})), std::invalid_argument);
    CHECK_NOTHROW(ConvexBody::polytope(a, make_vec({5.0, -2.0}), make_vec({3.0})));
}

TEST_CASE("sampled chord points stay inside the body") {
    RandomStream rng(2024);
    for (int trial = 0; trial < 10000; ++trial) {
        const int d = 1 + static_cast<int>(rng.uniform01() * 3.0);
        const ConvexBody body = random_body(d, rng);
        const Vec x = random_interior_point(body, rng);
        const Vec u = sample_direction(d, rng);
        const Interval chord = body.chord(x, u);
        REQUIRE(chord.lo <= 0.0);
        REQUIRE(chord.hi >= 0.0);
        const double alpha = rng.uniform(chord.lo, chord.hi);
        CHECK(body.contains(x + alpha * u));
    }
}

TEST_CASE("chord endpoints are boundary points") {
    RandomStream rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const int d = 1 + static_cast<int>(rng.uniform01() * 3.0);
        const ConvexBody body = random_body(d, rng);
        const Vec x = random_interior_point(body, rng);
        const Vec u = sample_direction(d, rng);
        const Interval chord = body.chord(x, u);
        const double eps = 1e-6;
        CHECK(body.contains(x + (chord.hi - eps) * u));
        CHECK_FALSE(body.contains(x + (chord.hi + eps) * u));
        CHECK(body.contains(x + (chord.lo + eps) * u));
        CHECK_FALSE(body.contains(x + (chord.lo - eps) * u));
    }
}

TEST_CASE("chord is antisymmetric under direction flip") {
    RandomStream rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        const int d = 1 + static_cast<int>(rng.uniform01() * 3.0);
        const ConvexBody body = random_body(d, rng);
        const Vec x = random_interior_point(body, rng);
        const Vec u = sample_direction(d, rng);
        const Interval fwd = body.chord(x, u);
        const Interval bwd = body.chord(x, -u);
        CHECK(fwd.lo == doctest::Approx(-bwd.hi).epsilon(1e-9));
        CHECK(fwd.hi == doctest::Approx(-bwd.lo).epsilon(1e-9));
    }
}

TEST_CASE("axis sections agree with axis-aligned chords") {
    RandomStream rng(4242);
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = 1 + static_cast<int>(rng.uniform01() * 3.0);
        const ConvexBody body = random_body(d, rng);
        const Vec x = random_interior_point(body, rng);
        const int axis = static_cast<int>(rng.uniform01() * d);
        Vec u = Vec::Zero(d);
        u[axis] = 1.0;
        const Interval chord = body.chord(x, u);
        const auto section = body.section(x, axis);
        REQUIRE(section.has_value());
        CHECK(section->lo == doctest::Approx(x[axis] + chord.lo).epsilon(1e-9));
        CHECK(section->hi == doctest::Approx(x[axis] + chord.hi).epsilon(1e-9));
    }
}

TEST_CASE("boundary starts yield one-sided chords that still contain zero") {
    const ConvexBody ball = ConvexBody::ball(Vec::Zero(2), 1.0);
    const Interval inward = ball.chord(make_vec({1.0, 0.0}), make_vec({-1.0, 0.0}));
    CHECK(inward.lo == doctest::Approx(0.0));
    CHECK(inward.hi == doctest::Approx(2.0));

    const ConvexBody box = ConvexBody::box(make_vec({0.0, 0.0}), make_vec({1.0, 1.0}));
    const Interval along = box.chord(make_vec({0.0, 0.5}), make_vec({1.0, 0.0}));
    CHECK(along.lo == doctest::Approx(0.0));
    CHECK(along.hi == doctest::Approx(1.0));
}

TEST_CASE("body JSON round trip") {
    RandomStream rng(555);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + static_cast<int>(rng.uniform01() * 3.0);
        const ConvexBody body = random_body(d, rng);
        const Json j = body_to_json(body);
        const ConvexBody back = body_from_json(j);
        CHECK(body_to_json(back) == j);
    }
    const Json full = body_to_json(ConvexBody::fullspace(5));
    CHECK(body_from_json(full).dim() == 5);
}
