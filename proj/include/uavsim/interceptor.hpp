#pragma once

#include "uavsim/vec2.hpp"

namespace uavsim {

// Ideal point-mass interceptor: constant speed, bounded lateral acceleration.
struct InterceptorParams {
    double speed{30.0};          // m/s
    double lateral_accel{30.0};  // m/s^2
    double lead_fraction{0.0};   // 0 = pure pursuit, 1 = full lead
    double deadzone{0.0};        // rad, full cone angle

    void validate() const;
};

struct InterceptorState {
    double x{0.0};
    double altitude{0.0};
    double heading{0.0};  // rad, direction of flight, (-pi, pi]

    [[nodiscard]] Vec2 position() const { return {x, altitude}; }
    [[nodiscard]] Vec2 direction() const { return {std::cos(heading), std::sin(heading)}; }
    [[nodiscard]] Vec2 velocity(const InterceptorParams& p) const { return p.speed * direction(); }

    friend bool operator==(const InterceptorState&, const InterceptorState&) = default;
};

namespace interceptor {

// Aim point A + mu v with mu = lead_fraction * |A - M| / speed.
[[nodiscard]] Vec2 leadPoint(const Vec2& target_pos, const Vec2& target_vel, const Vec2& own_pos,
                             const InterceptorParams& params);

// Heading rate: zero while the aim point lies inside half the deadzone cone
// (boundary included), otherwise +-lateral_accel/speed turning toward it.
[[nodiscard]] double turnRate(const InterceptorState& state, const Vec2& aim, const InterceptorParams& params);

// Flies a constant-turn-rate arc for dt seconds.
[[nodiscard]] InterceptorState advance(const InterceptorState& state, double turn_rate, double speed, double dt);

// turnRate evaluated once at the start, then an exact arc over dt.
[[nodiscard]] InterceptorState step(const InterceptorState& state, const Vec2& aim, const InterceptorParams& params,
                                    double dt);

}  // namespace interceptor

}  // namespace uavsim
