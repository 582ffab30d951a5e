#pragma once

#include <cmath>

namespace uavsim {

// Planar vector. Used for positions (m), velocities (m/s) and accelerations
// (m/s^2); the unit follows from context.
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend constexpr Vec2 operator/(const Vec2& a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;

    [[nodiscard]] double norm() const { return std::hypot(x, y); }
    [[nodiscard]] constexpr double squaredNorm() const { return x * x + y * y; }
    [[nodiscard]] bool isFinite() const { return std::isfinite(x) && std::isfinite(y); }
};

[[nodiscard]] constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// z-component of the 3D cross product; positive when b is counter-clockwise of a.
[[nodiscard]] constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

inline constexpr double kPi = 3.14159265358979323846;

// Wraps an angle into (-pi, pi].
[[nodiscard]] inline double wrapAngle(double angle)
{
    if (angle > -kPi && angle <= kPi) return angle;
    double wrapped = std::remainder(angle, 2.0 * kPi);
    if (wrapped <= -kPi) wrapped += 2.0 * kPi;
    return wrapped;
}

// Signed angle that rotates `from` onto `to`, in (-pi, pi]. Zero if either is null.
[[nodiscard]] inline double signedAngle(const Vec2& from, const Vec2& to)
{
    if (from.squaredNorm() == 0.0 || to.squaredNorm() == 0.0) return 0.0;
    return wrapAngle(std::atan2(cross(from, to), dot(from, to)));
}

}  // namespace uavsim
