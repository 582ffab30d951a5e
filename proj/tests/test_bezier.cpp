#include "support/oracles.hpp"

#include "uavsim/bezier.hpp"
#include "uavsim/error.hpp"

#include <doctest.h>

#include <random>

using namespace uavsim;
using namespace uavsim::bezier;

namespace {

BoundaryConditions restToRest(double d)
{
    return {{0.0, 0.0}, {0.0, 0.0}, {d, 0.0}, {0.0, 0.0}};
}

BoundaryConditions fromOracle(const oracle::Boundary& b)
{
    return {b.a, b.va, b.d, b.vd};
}

const KinematicLimits kDefaultLimits{35.0, 16.8};

}  // namespace

TEST_CASE("buildCurve places inner control points from the boundary velocities")
{
    const BoundaryConditions bc{{0, 0}, {3, 0}, {10, 0}, {6, 0}};
    const CubicCurve c = buildCurve(bc, 3.0);
    CHECK(c.p0 == Vec2{0, 0});
    CHECK(c.p1 == Vec2{3, 0});
    CHECK(c.p2 == Vec2{4, 0});
    CHECK(c.p3 == Vec2{10, 0});
    CHECK(c.duration == 3.0);

    SUBCASE("zero velocities collapse inner points onto the ends")
    {
        const CubicCurve z = buildCurve({{1, 2}, {0, 0}, {5, -7}, {0, 0}}, 1.0);
        CHECK(z.p1 == z.p0);
        CHECK(z.p2 == z.p3);
    }
    SUBCASE("fully degenerate")
    {
        const CubicCurve z = buildCurve({}, 5.0);
        CHECK(z.p0 == Vec2{});
        CHECK(z.p1 == Vec2{});
        CHECK(z.p2 == Vec2{});
        CHECK(z.p3 == Vec2{});
    }
}

TEST_CASE("buildCurve rejects bad durations")
{
    CHECK_THROWS_AS((void)buildCurve(restToRest(1), 0.0), InvalidArgument);
    CHECK_THROWS_AS((void)buildCurve(restToRest(1), -1.0), InvalidArgument);
    CHECK_THROWS_AS((void)buildCurve(restToRest(1), std::nan("")), InvalidArgument);
    CHECK_THROWS_AS((void)buildCurve(restToRest(1), INFINITY), InvalidArgument);
}

TEST_CASE("kinematics reject tau outside the unit interval")
{
    const CubicCurve c = buildCurve(restToRest(1), 1.0);
    CHECK_THROWS_AS((void)position(c, -1e-12), InvalidArgument);
    CHECK_THROWS_AS((void)velocity(c, 1.0 + 1e-12), InvalidArgument);
    CHECK_THROWS_AS((void)acceleration(c, std::nan("")), InvalidArgument);
}

TEST_CASE("rest-to-rest kinematics")
{
    const CubicCurve c = buildCurve(restToRest(100.0), 10.0);
    CHECK(position(c, 0.5).x == doctest::Approx(50.0).epsilon(1e-15));
    CHECK(position(c, 0.5).y == 0.0);
    CHECK(velocity(c, 0.5).x == doctest::Approx(15.0).epsilon(1e-14));
    CHECK(acceleration(c, 0.0).x == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(acceleration(c, 0.5).norm() == doctest::Approx(0.0));
    CHECK(acceleration(c, 1.0).x == doctest::Approx(-6.0).epsilon(1e-14));

    const Extremum vmax = maxSpeed(c);
    CHECK(vmax.value == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(vmax.tau == doctest::Approx(0.5).epsilon(1e-9));
    const Extremum amax = maxAccel(c);
    CHECK(amax.value == doctest::Approx(6.0).epsilon(1e-12));
    CHECK((amax.tau == 0.0 || amax.tau == 1.0));
}

TEST_CASE("max speed of a curve whose interior speed dips")
{
    const CubicCurve c = buildCurve({{0, 0}, {10, 0}, {100, 0}, {10, 0}}, 10.0);
    const Extremum vmax = maxSpeed(c);
    CHECK(vmax.value == doctest::Approx(10.0).epsilon(1e-12));
    CHECK((vmax.tau == 0.0 || vmax.tau == 1.0));
    const auto cp = oracle::controlPoints({{0, 0}, {10, 0}, {100, 0}, {10, 0}}, 10.0);
    CHECK(vmax.value == doctest::Approx(oracle::gridMaxSpeed(cp, 10.0)).epsilon(1e-9));
}

TEST_CASE("zero curve has zero extrema")
{
    const CubicCurve c = buildCurve({}, 2.0);
    CHECK(maxSpeed(c).value == 0.0);
    CHECK(maxAccel(c).value == 0.0);
    CHECK(maxAccel(c).tau == 0.0);
}

TEST_CASE("extrema agree with dense-grid oracles on random curves")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> T(0.1, 200.0);
    for (int i = 0; i < 500; ++i) {
        const oracle::Boundary b = oracle::randomBoundary(rng);
        const double dur = T(rng);
        const CubicCurve c = buildCurve(fromOracle(b), dur);
        const auto cp = oracle::controlPoints(b, dur);

        const double grid = oracle::gridMaxSpeed(cp, dur);
        const double exact = maxSpeed(c).value;
        // The grid can only under-estimate the true maximum.
        CHECK(exact >= grid * (1.0 - 1e-12));
        CHECK(exact <= grid * (1.0 + 1e-6));

        CHECK(maxAccel(c).value == doctest::Approx(oracle::gridMaxAccel(cp, dur)).epsilon(1e-9));
    }
}

TEST_CASE("max speed on near-degenerate hodographs falls back cleanly")
{
    // Straight constant-velocity motion: hodograph collapses to a point.
    const CubicCurve line = buildCurve({{0, 0}, {10, 0}, {100, 0}, {10, 0}}, 10.0 - 1e-12);
    CHECK(maxSpeed(line).value == doctest::Approx(10.0).epsilon(1e-9));

    // Linear hodograph (quadratic coefficient vanishes).
    const BoundaryConditions lin{{0, 0}, {0, 0}, {50, 0}, {10, 0}};
    const CubicCurve c = buildCurve(lin, 10.0);
    const auto cp = oracle::controlPoints({{0, 0}, {0, 0}, {50, 0}, {10, 0}}, 10.0);
    CHECK(maxSpeed(c).value == doctest::Approx(oracle::gridMaxSpeed(cp, 10.0)).epsilon(1e-8));
}

TEST_CASE("feasibility examples")
{
    CHECK(isFeasible(restToRest(100), 10.0, kDefaultLimits));
    CHECK_FALSE(isFeasible(restToRest(100), 2.0, kDefaultLimits));
    CHECK(isFeasible({}, 0.01, kDefaultLimits));
    CHECK(isFeasible({}, 1e6, kDefaultLimits));
    CHECK_THROWS_AS((void)isFeasible(restToRest(100), 0.0, kDefaultLimits), InvalidArgument);
}

TEST_CASE("min time: closed-form rest-to-rest values")
{
    // max(1.5 d / v_max, sqrt(6 d / a_max)), evaluated independently.
    struct Case {
        double d, expected;
    };
    for (const Case& k : {Case{10.0, 1.88982236504613607}, Case{100.0, 5.97614304667196828},
                          Case{1000.0, 42.8571428571428571}}) {
        const MinTimeResult r = minTime(restToRest(k.d), kDefaultLimits);
        CHECK(r.feasible);
        CHECK(r.t_min == doctest::Approx(k.expected).epsilon(1e-5));
        CHECK(r.iterations > 0);
    }
}

TEST_CASE("min time: degenerate problem returns zero")
{
    const MinTimeResult r = minTime({{3, 4}, {0, 0}, {3, 4}, {0, 0}}, kDefaultLimits);
    CHECK(r.feasible);
    CHECK(r.t_min == 0.0);
    CHECK(r.iterations == 0);
}

TEST_CASE("min time: boundary speed above the limit is infeasible")
{
    const MinTimeResult r = minTime({{0, 0}, {40, 0}, {100, 0}, {0, 0}}, kDefaultLimits);
    CHECK_FALSE(r.feasible);
}

TEST_CASE("min time: invalid limits")
{
    CHECK_THROWS_AS((void)minTime(restToRest(1), {0.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS((void)minTime(restToRest(1), {1.0, -1.0}), InvalidArgument);
}

TEST_CASE("min time matches a brute-force duration scan")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const oracle::Boundary b = oracle::randomBoundary(rng, 300.0, 12.0);
        const MinTimeResult r = minTime(fromOracle(b), kDefaultLimits);
        REQUIRE(r.feasible);
        const double brute = oracle::bruteForceMinTime(b, 35.0, 16.8, 0.01, 200.0, 4000);
        // Grid spacing is about 0.25% per step.
        CHECK(r.t_min == doctest::Approx(brute).epsilon(5e-3));
    }
}

TEST_CASE("property: endpoint interpolation and boundary velocities")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> T(0.05, 500.0);
    for (int i = 0; i < 1000; ++i) {
        const BoundaryConditions bc = fromOracle(oracle::randomBoundary(rng));
        const CubicCurve c = buildCurve(bc, T(rng));
        CHECK(position(c, 0.0) == bc.start_pos);
        CHECK(position(c, 1.0) == bc.end_pos);
        const double scale = 1.0 + bc.start_pos.norm() + bc.end_pos.norm();
        CHECK((velocity(c, 0.0) - bc.start_vel).norm() <= 1e-9 * scale);
        CHECK((velocity(c, 1.0) - bc.end_vel).norm() <= 1e-9 * scale);
    }
}

TEST_CASE("property: acceleration is affine in tau")
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        const CubicCurve c = buildCurve(fromOracle(oracle::randomBoundary(rng)), 20.0);
        const Vec2 a0 = acceleration(c, 0.0), a1 = acceleration(c, 0.3), a2 = acceleration(c, 1.0);
        // (0.3, a1) lies on the segment between (0, a0) and (1, a2).
        const Vec2 predicted = a0 + 0.3 * (a2 - a0);
        CHECK((a1 - predicted).norm() <= 1e-9 * (1.0 + a0.norm() + a2.norm()));
    }
}

TEST_CASE("property: scale covariance of min time")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> S(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        const BoundaryConditions bc = fromOracle(oracle::randomBoundary(rng, 500.0, 10.0));
        const double s = S(rng);
        const BoundaryConditions scaled{s * bc.start_pos, s * bc.start_vel, s * bc.end_pos, s * bc.end_vel};
        const MinTimeResult r1 = minTime(bc, kDefaultLimits);
        const MinTimeResult r2 = minTime(scaled, {s * 35.0, s * 16.8});
        REQUIRE(r1.feasible == r2.feasible);
        if (r1.feasible) CHECK(r2.t_min == doctest::Approx(r1.t_min).epsilon(1e-6));
    }
}
