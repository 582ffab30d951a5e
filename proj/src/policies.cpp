#include "uavsim/policies.hpp"

#include "uavsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uavsim::policies {

namespace {

// Turns a commanded vertical acceleration and tilt into rotor commands.
ControlInput attitude(const UavState& s, double tilt_cmd, double vertical_accel, const PdGains& g, const UavParams& p,
                      const AtmosphereModel& atmos)
{
    const double hoverBase = dynamics::hoverThrottle(p, atmos, s.altitude);
    const double cosTilt = std::max(std::cos(s.tilt), 0.5);
    const double collective = hoverBase * (1.0 + vertical_accel / atmos.g0) / cosTilt;

    const double angularAccel = g.kp_tilt * wrapAngle(tilt_cmd - s.tilt) - g.kd_tilt * s.omega;
    // hoverBase * 2 * g0 * m = F(H), so a2 - a1 = I alpha / (arm F(H)).
    const double thrust = p.mass * atmos.g0 / (2.0 * hoverBase);
    const double differential = p.inertia * angularAccel / (p.arm * thrust);

    return {collective - differential / 2.0, collective + differential / 2.0};
}

double verticalCommand(const UavState& s, double target_altitude, const PdGains& g, const AtmosphereModel& atmos)
{
    const double cmd = g.kp_alt * (target_altitude - s.altitude) - g.kd_alt * s.vy;
    return std::clamp(cmd, -0.5 * atmos.g0, 0.6 * atmos.g0);
}

}  // namespace

PolicyKind policyFromName(std::string_view name)
{
    if (name == "hover") return PolicyKind::Hover;
    if (name == "goto") return PolicyKind::Goto;
    if (name == "random") return PolicyKind::Random;
    throw InvalidArgument("unknown policy '" + std::string(name) + "' (expected hover, goto or random)");
}

ControlInput hover(const UavState& state, double target_altitude, const PdGains& gains, const UavParams& params,
                   const AtmosphereModel& atmos)
{
    return attitude(state, 0.0, verticalCommand(state, target_altitude, gains, atmos), gains, params, atmos);
}

ControlInput goTo(const UavState& state, const Vec2& destination, const PdGains& gains, const UavParams& params,
                  const AtmosphereModel& atmos)
{
    const double az = verticalCommand(state, destination.y, gains, atmos);
    const double ax = gains.kp_pos * (destination.x - state.x) - gains.kd_pos * state.vx;
    // Horizontal thrust component is F sin(-tilt).
    const double tiltCmd = std::clamp(std::atan2(-ax, atmos.g0 + az), -kMaxTiltCommand, kMaxTiltCommand);
    return attitude(state, tiltCmd, az, gains, params, atmos);
}

ControlInput random(StreamRng& rng)
{
    const double a1 = rng.uniform01();
    const double a2 = rng.uniform01();
    return {a1, a2};
}

ScriptedAgent::ScriptedAgent(PolicyKind kind, std::uint64_t seed, AgentRole role, PdGains gains)
    : kind_(kind), role_(role), gains_(gains), rng_(seed, 100 + static_cast<std::uint64_t>(role))
{
}

ControlInput ScriptedAgent::act(const EpisodeState& state, const EpisodeConfig& cfg)
{
    const UavState& self = role_ == AgentRole::Evader ? state.evader : state.pursuer.value();
    switch (kind_) {
    case PolicyKind::Hover:
        if (!hold_altitude_) hold_altitude_ = self.altitude;
        return hover(self, *hold_altitude_, gains_, cfg.uav, cfg.atmosphere);
    case PolicyKind::Goto: {
        const Vec2 target = role_ == AgentRole::Evader ? state.destination : state.evader.position();
        return goTo(self, target, gains_, cfg.uav, cfg.atmosphere);
    }
    case PolicyKind::Random: return random(rng_);
    }
    return {};
}

}  // namespace uavsim::policies
