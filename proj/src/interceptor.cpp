#include "uavsim/interceptor.hpp"

#include "uavsim/error.hpp"

#include <cmath>

namespace uavsim {

void InterceptorParams::validate() const
{
    const bool ok = speed > 0.0 && lateral_accel >= 0.0 && lead_fraction >= 0.0 && lead_fraction <= 1.0 &&
                    deadzone >= 0.0 && std::isfinite(speed + lateral_accel + deadzone);
    if (!ok) throw InvalidArgument("invalid interceptor parameters");
}

namespace interceptor {

Vec2 leadPoint(const Vec2& target_pos, const Vec2& target_vel, const Vec2& own_pos, const InterceptorParams& params)
{
    const double mu = params.lead_fraction * (target_pos - own_pos).norm() / params.speed;
    return target_pos + mu * target_vel;
}

double turnRate(const InterceptorState& state, const Vec2& aim, const InterceptorParams& params)
{
    const Vec2 los = aim - state.position();
    if (los.squaredNorm() == 0.0) return 0.0;
    const Vec2 dir = state.direction();
    const double error = std::abs(std::atan2(cross(dir, los), dot(dir, los)));
    if (error <= params.deadzone / 2.0) return 0.0;
    const double rate = params.lateral_accel / params.speed;
    // A target dead astern has zero cross product; break the tie to the left.
    return cross(dir, los) >= 0.0 ? rate : -rate;
}

InterceptorState advance(const InterceptorState& state, double turn_rate, double speed, double dt)
{
    InterceptorState out = state;
    const double dtheta = turn_rate * dt;
    if (dtheta == 0.0) {
        out.x += speed * dt * std::cos(state.heading);
        out.altitude += speed * dt * std::sin(state.heading);
        return out;
    }
    // Chord of the arc: length 2R sin(dtheta/2) along the mean heading.
    const double chord = 2.0 * speed / turn_rate * std::sin(dtheta / 2.0);
    const double mean = state.heading + dtheta / 2.0;
    out.x += chord * std::cos(mean);
    out.altitude += chord * std::sin(mean);
    out.heading = wrapAngle(state.heading + dtheta);
    return out;
}

InterceptorState step(const InterceptorState& state, const Vec2& aim, const InterceptorParams& params, double dt)
{
    if (!(dt > 0.0)) throw InvalidArgument("interceptor step requires dt > 0");
    return advance(state, turnRate(state, aim, params), params.speed, dt);
}

}  // namespace interceptor

}  // namespace uavsim
