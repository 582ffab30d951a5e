#pragma once

#include "uavsim/vec2.hpp"

namespace uavsim::bezier {

// Position and velocity at both ends of a flight segment.
struct BoundaryConditions {
    Vec2 start_pos;
    Vec2 start_vel;
    Vec2 end_pos;
    Vec2 end_vel;

    [[nodiscard]] bool isFinite() const
    {
        return start_pos.isFinite() && start_vel.isFinite() && end_pos.isFinite() && end_vel.isFinite();
    }
};

// Cubic Bezier segment in the plane, parameterised by tau in [0, 1] and
// flown over `duration` seconds.
struct CubicCurve {
    Vec2 p0;
    Vec2 p1;
    Vec2 p2;
    Vec2 p3;
    double duration{1.0};
};

struct KinematicLimits {
    double v_max{35.0};  // m/s
    double a_max{16.8};  // m/s^2
};

struct Extremum {
    double value{0.0};
    double tau{0.0};
};

struct MinTimeResult {
    double t_min{0.0};
    bool feasible{false};
    int iterations{0};
};

// Solver constants.
inline constexpr double kFeasibilityTolerance = 1e-9;  // relative slack on limit comparisons
inline constexpr double kBisectionTolerance = 1e-6;    // relative width of the final bracket
inline constexpr double kMaxDuration = 1e4;            // s, search cap
inline constexpr double kMinGuess = 1e-3;              // s
inline constexpr int kMaxBisections = 200;
inline constexpr double kDegenerateSpeed = 1e-12;      // m/s

// Builds the boundary-value curve: p1 = A + vA*T/3, p2 = D - vD*T/3.
// Throws InvalidArgument for a non-positive or non-finite duration.
[[nodiscard]] CubicCurve buildCurve(const BoundaryConditions& bc, double duration);

// Kinematics at curve parameter tau; all throw InvalidArgument for tau
// outside [0, 1]. Velocity and acceleration are with respect to time.
[[nodiscard]] Vec2 position(const CubicCurve& curve, double tau);
[[nodiscard]] Vec2 velocity(const CubicCurve& curve, double tau);
[[nodiscard]] Vec2 acceleration(const CubicCurve& curve, double tau);

/// Global maximum of |velocity| over tau in [0, 1].
///
/// The velocity hodograph is a quadratic Bezier curve, so |v|^2 is a quartic
/// whose stationary points are the real roots of a cubic. Those are found in
/// closed form; if the cubic is numerically degenerate the maximum is taken
/// from a 1025-point grid followed by golden-section refinement.
[[nodiscard]] Extremum maxSpeed(const CubicCurve& curve);

/// Maximum of |acceleration|. The acceleration hodograph is a line segment,
/// so the maximum sits at tau = 0 or tau = 1.
[[nodiscard]] Extremum maxAccel(const CubicCurve& curve);

[[nodiscard]] bool isFeasible(const BoundaryConditions& bc, double duration, const KinematicLimits& limits);

/// Shortest duration whose boundary-value curve respects `limits`.
///
/// Degenerate problems (A == D, both speeds below kDegenerateSpeed) return 0.
/// Otherwise the search starts from the rest-to-rest estimate
/// max(1.5|D-A|/v_max, sqrt(6|D-A|/a_max), kMinGuess), expands the bracket by
/// doubling (or halving, when the guess is already feasible) and bisects the
/// final [infeasible, feasible] interval to kBisectionTolerance. If nothing up
/// to kMaxDuration is feasible the result has feasible = false.
[[nodiscard]] MinTimeResult minTime(const BoundaryConditions& bc, const KinematicLimits& limits);

}  // namespace uavsim::bezier
