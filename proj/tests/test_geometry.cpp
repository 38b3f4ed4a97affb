#include "reebsweep/errors.h"
#include "reebsweep/geometry.h"
#include "test_support.h"

#include <doctest.h>

#include <random>

using namespace reebsweep;

TEST_CASE("ball interval") {
    const AffineFunctional f({3.0, 4.0}, 1.0);
    const auto i = ball_interval({7, {1.0, 1.0}}, 0.5, f);
    CHECK(i.lo == doctest::Approx(8.0 - 2.5));
    CHECK(i.hi == doctest::Approx(8.0 + 2.5));
    CHECK(i.label == Label::ball(7));
}

TEST_CASE("pair label ordering") {
    CHECK(Label::pair(5, 2) == Label{2, 5});
    CHECK_THROWS_AS(Label::pair(3, 3), ContractViolation);
    CHECK(Label::ball(1) < Label::ball(2));
    CHECK(Label::pair(0, 2).to_string() == "{0,2}");
    CHECK(Label::ball(4).to_string() == "4");
}

TEST_CASE("disjoint and tangent balls") {
    const auto f = AffineFunctional::projection(2, 1);
    CHECK_FALSE(pair_interval({0, {0, 0}}, {1, {0, 2.0001}}, 1.0, f));
    const auto t = pair_interval({0, {0, 0}}, {1, {0, 2.0}}, 1.0, f);
    REQUIRE(t);
    CHECK(t->lo == doctest::Approx(1.0));
    CHECK(t->hi == doctest::Approx(1.0));
    const auto side = pair_interval({0, {0, 0}}, {1, {2.0, 0}}, 1.0, f);
    REQUIRE(side);
    CHECK(side->lo == doctest::Approx(0.0));
    CHECK(side->hi == doctest::Approx(0.0));
}

TEST_CASE("nested cap uses the ball extreme") {
    const auto f = AffineFunctional::projection(2, 1);
    const auto i = pair_interval({0, {0, 0}}, {1, {0, 0.5}}, 1.0, f);
    REQUIRE(i);
    CHECK(i->lo == -0.5);
    CHECK(i->hi == 1.0);
    // Shared with the ball intervals bit for bit.
    CHECK(i->lo == ball_interval({1, {0, 0.5}}, 1.0, f).lo);
    CHECK(i->hi == ball_interval({0, {0, 0}}, 1.0, f).hi);
}

TEST_CASE("four-point pair intervals") {
    const auto pts = testing::four_points();
    const auto f = AffineFunctional::projection(2, 1);
    struct Want {
        int a, b;
        double lo, hi;
    };
    for (const Want w : {Want{0, 1, 0.1, 0.5}, Want{1, 2, 0.3, 0.6}, Want{0, 2, 0.75, 1.55},
                         Want{0, 3, 1.0, 2.0}, Want{2, 3, 1.09, 2.21}}) {
        const auto i = pair_interval(pts[w.a], pts[w.b], 1.0, f);
        REQUIRE(i);
        CHECK(std::abs(i->lo - w.lo) <= 1e-2);
        CHECK(std::abs(i->hi - w.hi) <= 1e-2);
        const auto [slo, shi] = testing::sampled_lens_extent(pts[w.a], pts[w.b], 1.0, f, 1'000'000);
        CHECK(std::abs(i->lo - slo) <= 1e-9);
        CHECK(std::abs(i->hi - shi) <= 1e-9);
    }
    CHECK_FALSE(pair_interval(pts[1], pts[3], 1.0, f));
}

TEST_CASE("closed form matches dense boundary sampling in the plane") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    while (checked < 1000) {
        const Point p{0, {u(rng), u(rng)}};
        const Point q{1, {u(rng), u(rng)}};
        const double eps = 0.3 + 0.7 * (u(rng) + 1.0) / 2.0;
        const AffineFunctional f({u(rng), u(rng)}, u(rng));
        const auto i = pair_interval(p, q, eps, f);
        const double dist = std::sqrt(squared_distance(p.coords, q.coords));
        if (!i) {
            CHECK(dist > 2 * eps);
            continue;
        }
        const auto [lo, hi] = testing::sampled_lens_extent_2d(p.coords[0], p.coords[1], q.coords[0],
                                                              q.coords[1], eps, f.gradient()[0],
                                                              f.gradient()[1], f.offset(), 20000);
        // Sampling error is at most |w| eps (2 pi / samples)^2 / 2 away from corners.
        CHECK(std::abs(i->lo - lo) <= 1e-6);
        CHECK(std::abs(i->hi - hi) <= 1e-6);
        CHECK(i->lo <= lo + 1e-12);
        CHECK(i->hi >= hi - 1e-12);
        ++checked;
    }
}

TEST_CASE("closed form in higher dimensions matches the plane reduction") {
    for (std::size_t d : {3u, 5u}) {
        std::mt19937_64 rng(100 + d);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        int checked = 0;
        while (checked < 200) {
            Point p{0, std::vector<double>(d)};
            Point q{1, std::vector<double>(d)};
            std::vector<double> w(d);
            for (std::size_t i = 0; i < d; ++i) {
                p.coords[i] = u(rng) * 0.6;
                q.coords[i] = u(rng) * 0.6;
                w[i] = u(rng);
            }
            const AffineFunctional f(w, 0.25);
            const auto i = pair_interval(p, q, 1.0, f);
            if (!i) continue;
            const auto [lo, hi] = testing::sampled_lens_extent(p, q, 1.0, f, 1'000'000);
            CHECK(std::abs(i->lo - lo) <= 1e-9);
            CHECK(std::abs(i->hi - hi) <= 1e-9);
            ++checked;
        }
    }
}

TEST_CASE("pair interval lies in both ball intervals") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const Point p{0, {u(rng), u(rng), u(rng)}};
        const Point q{1, {u(rng), u(rng), u(rng)}};
        const AffineFunctional f({u(rng), u(rng), u(rng)}, 0.0);
        const auto i = pair_interval(p, q, 0.8, f);
        if (!i) continue;
        const auto bp = ball_interval(p, 0.8, f);
        const auto bq = ball_interval(q, 0.8, f);
        CHECK(i->lo <= i->hi);
        CHECK(i->lo >= std::max(bp.lo, bq.lo));
        CHECK(i->hi <= std::min(bp.hi, bq.hi));
    }
}

TEST_CASE("build inputs") {
    const auto inputs = build_inputs(testing::four_points(), 1.0, AffineFunctional::projection(2, 1));
    CHECK(inputs.balls.size() == 4);
    REQUIRE(inputs.pairs.size() == 5);
    CHECK(inputs.pairs[0].label == Label::pair(0, 1));
    CHECK(inputs.pairs[1].label == Label::pair(0, 2));
    CHECK(inputs.pairs[2].label == Label::pair(0, 3));
    CHECK(inputs.pairs[3].label == Label::pair(1, 2));
    CHECK(inputs.pairs[4].label == Label::pair(2, 3));
}

TEST_CASE("input validation") {
    const auto f = AffineFunctional::projection(2, 1);
    std::vector<Point> dup{{0, {1, 2}}, {1, {3, 4}}, {2, {1, 2}}};
    CHECK_THROWS_WITH_AS(build_inputs(dup, 1.0, f), "duplicate points: ids 0 2", InputError);
    CHECK_THROWS_AS(build_inputs(testing::four_points(), 0.0, f), InputError);
    CHECK_THROWS_AS(build_inputs(testing::four_points(), -1.0, f), InputError);
    std::vector<Point> wrong{{0, {1, 2, 3}}};
    CHECK_THROWS_AS(build_inputs(wrong, 1.0, f), DimensionMismatch);
    CHECK_THROWS_AS(build_inputs(testing::four_points(), 1.0, AffineFunctional({0.0, 0.0}, 1.0)),
                    InputError);
    CHECK_THROWS_AS(AffineFunctional({NAN, 1.0}, 0.0), InputError);
}

TEST_CASE("constant functional on request") {
    const AffineFunctional f({0.0, 0.0}, 2.5, true);
    const auto inputs = build_inputs(testing::four_points(), 1.0, f);
    for (const auto& b : inputs.balls) {
        CHECK(b.lo == 2.5);
        CHECK(b.hi == 2.5);
    }
    CHECK(inputs.pairs.size() == 5);
}
