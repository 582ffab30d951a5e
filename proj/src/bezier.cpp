#include "uavsim/bezier.hpp"

#include "uavsim/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace uavsim::bezier {

namespace {

void checkTau(double tau)
{
    if (!(tau >= 0.0 && tau <= 1.0)) {
        throw InvalidArgument("curve parameter tau must lie in [0, 1], got " + std::to_string(tau));
    }
}

// Power-basis coefficients of the velocity hodograph scaled by T/3:
// v(tau) * T / 3 = c0 + c1 tau + c2 tau^2.
struct Hodograph {
    Vec2 c0, c1, c2;

    explicit Hodograph(const CubicCurve& c)
    {
        const Vec2 d0 = c.p1 - c.p0;
        const Vec2 d1 = c.p2 - c.p1;
        const Vec2 d2 = c.p3 - c.p2;
        c0 = d0;
        c1 = 2.0 * (d1 - d0);
        c2 = d0 - 2.0 * d1 + d2;
    }

    [[nodiscard]] double speedSquared(double tau) const
    {
        const Vec2 v = c0 + tau * (c1 + tau * c2);
        return v.squaredNorm();
    }
};

// Real roots of a3 t^3 + a2 t^2 + a1 t + a0 with a3 != 0.
int solveCubic(double a3, double a2, double a1, double a0, std::array<double, 3>& roots)
{
    const double b = a2 / a3;
    const double c = a1 / a3;
    const double d = a0 / a3;
    // t = u - b/3 gives u^3 + p u + q = 0
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double shift = -b / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;

    int n = 0;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        roots[n++] = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) + shift;
    } else if (p == 0.0) {
        roots[n++] = shift;
    } else {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots[n++] = m * std::cos(theta - 2.0 * kPi * k / 3.0) + shift;
        }
    }

    // Newton polish.
    for (int i = 0; i < n; ++i) {
        double t = roots[i];
        for (int it = 0; it < 3; ++it) {
            const double f = ((a3 * t + a2) * t + a1) * t + a0;
            const double df = (3.0 * a3 * t + 2.0 * a2) * t + a1;
            if (df == 0.0) break;
            const double next = t - f / df;
            if (!std::isfinite(next)) break;
            t = next;
        }
        roots[i] = t;
    }
    return n;
}

Extremum gridMaxSpeedSquared(const Hodograph& h)
{
    constexpr int kGrid = 1025;
    int best = 0;
    double bestValue = -1.0;
    for (int i = 0; i < kGrid; ++i) {
        const double v = h.speedSquared(static_cast<double>(i) / (kGrid - 1));
        if (v > bestValue) {
            bestValue = v;
            best = i;
        }
    }
    // Golden-section refinement on the two neighbouring cells.
    double lo = std::max(0, best - 1) / static_cast<double>(kGrid - 1);
    double hi = std::min(kGrid - 1, best + 1) / static_cast<double>(kGrid - 1);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = h.speedSquared(x1);
    double f2 = h.speedSquared(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = h.speedSquared(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = h.speedSquared(x1);
        }
    }
    Extremum out{bestValue, static_cast<double>(best) / (kGrid - 1)};
    for (double t : {x1, x2}) {
        const double v = h.speedSquared(t);
        if (v > out.value) out = {v, t};
    }
    return out;
}

}  // namespace

CubicCurve buildCurve(const BoundaryConditions& bc, double duration)
{
    if (!std::isfinite(duration) || duration <= 0.0) {
        throw InvalidArgument("curve duration must be positive and finite");
    }
    if (!bc.isFinite()) {
        throw InvalidArgument("boundary conditions must be finite");
    }
    const double third = duration / 3.0;
    return CubicCurve{
        bc.start_pos,
        bc.start_pos + bc.start_vel * third,
        bc.end_pos - bc.end_vel * third,
        bc.end_pos,
        duration,
    };
}

Vec2 position(const CubicCurve& c, double tau)
{
    checkTau(tau);
    const double s = 1.0 - tau;
    const double w0 = s * s * s;
    const double w1 = 3.0 * tau * s * s;
    const double w2 = 3.0 * tau * tau * s;
    const double w3 = tau * tau * tau;
    return w0 * c.p0 + w1 * c.p1 + w2 * c.p2 + w3 * c.p3;
}

Vec2 velocity(const CubicCurve& c, double tau)
{
    checkTau(tau);
    const double s = 1.0 - tau;
    return (3.0 / c.duration) * (s * s * (c.p1 - c.p0) + 2.0 * tau * s * (c.p2 - c.p1) + tau * tau * (c.p3 - c.p2));
}

Vec2 acceleration(const CubicCurve& c, double tau)
{
    checkTau(tau);
    return (6.0 / (c.duration * c.duration)) *
           ((tau - 1.0) * (c.p1 - c.p0) + (1.0 - 2.0 * tau) * (c.p2 - c.p1) + tau * (c.p3 - c.p2));
}

Extremum maxSpeed(const CubicCurve& curve)
{
    const Hodograph h(curve);
    const double scale = 3.0 / curve.duration;

    // d|v|^2/dtau / 2 = v . v'
    const double a0 = dot(h.c0, h.c1);
    const double a1 = 2.0 * dot(h.c0, h.c2) + dot(h.c1, h.c1);
    const double a2 = 3.0 * dot(h.c1, h.c2);
    const double a3 = 2.0 * dot(h.c2, h.c2);
    const double magnitude = std::max({std::abs(a0), std::abs(a1), std::abs(a2), std::abs(a3)});

    Extremum best{h.speedSquared(0.0), 0.0};
    const double endValue = h.speedSquared(1.0);
    if (endValue > best.value) best = {endValue, 1.0};

    if (magnitude == 0.0) {
        // Constant velocity along the whole curve.
        return {std::sqrt(best.value) * scale, best.tau};
    }
    if (std::abs(a3) <= 1e-10 * magnitude) {
        const Extremum grid = gridMaxSpeedSquared(h);
        if (grid.value > best.value) best = grid;
        return {std::sqrt(best.value) * scale, best.tau};
    }

    std::array<double, 3> roots{};
    const int n = solveCubic(a3, a2, a1, a0, roots);
    for (int i = 0; i < n; ++i) {
        const double t = roots[i];
        if (!(t > 0.0 && t < 1.0)) continue;
        const double v = h.speedSquared(t);
        if (v > best.value) best = {v, t};
    }
    return {std::sqrt(best.value) * scale, best.tau};
}

Extremum maxAccel(const CubicCurve& curve)
{
    const double a0 = acceleration(curve, 0.0).norm();
    const double a1 = acceleration(curve, 1.0).norm();
    if (a1 > a0) return {a1, 1.0};
    return {a0, 0.0};
}

bool isFeasible(const BoundaryConditions& bc, double duration, const KinematicLimits& limits)
{
    const CubicCurve curve = buildCurve(bc, duration);
    return maxSpeed(curve).value <= limits.v_max * (1.0 + kFeasibilityTolerance) &&
           maxAccel(curve).value <= limits.a_max * (1.0 + kFeasibilityTolerance);
}

MinTimeResult minTime(const BoundaryConditions& bc, const KinematicLimits& limits)
{
    if (!(limits.v_max > 0.0) || !(limits.a_max > 0.0) || !std::isfinite(limits.v_max) ||
        !std::isfinite(limits.a_max)) {
        throw InvalidArgument("kinematic limits must be positive and finite");
    }
    if (!bc.isFinite()) {
        throw InvalidArgument("boundary conditions must be finite");
    }

    const double distance = (bc.end_pos - bc.start_pos).norm();
    if (distance == 0.0 && bc.start_vel.norm() < kDegenerateSpeed && bc.end_vel.norm() < kDegenerateSpeed) {
        return {0.0, true, 0};
    }

    MinTimeResult result;
    const double guess =
        std::max({1.5 * distance / limits.v_max, std::sqrt(6.0 * distance / limits.a_max), kMinGuess});

    double lo = 0.0;  // infeasible
    double hi = 0.0;  // feasible
    if (isFeasible(bc, guess, limits)) {
        hi = guess;
        lo = guess / 2.0;
        while (isFeasible(bc, lo, limits)) {
            ++result.iterations;
            hi = lo;
            lo /= 2.0;
            if (lo < 1e-12) {
                return {hi, true, result.iterations};
            }
        }
    } else {
        lo = guess;
        hi = guess * 2.0;
        while (!isFeasible(bc, hi, limits)) {
            ++result.iterations;
            if (hi >= kMaxDuration) {
                return {kMaxDuration, false, result.iterations};
            }
            lo = hi;
            hi = std::min(hi * 2.0, kMaxDuration);
        }
    }

    for (int i = 0; i < kMaxBisections && (hi - lo) > kBisectionTolerance * hi; ++i) {
        ++result.iterations;
        const double mid = 0.5 * (lo + hi);
        if (isFeasible(bc, mid, limits)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    result.t_min = hi;
    result.feasible = true;
    return result;
}

}  // namespace uavsim::bezier
