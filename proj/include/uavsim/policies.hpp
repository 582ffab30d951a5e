#pragma once

#include "uavsim/dynamics.hpp"
#include "uavsim/environment.hpp"
#include "uavsim/rng.hpp"

#include <string_view>

namespace uavsim::policies {

// PD gains for the scripted controllers. Tilt gains map to angular
// acceleration (rad/s^2), position and altitude gains to linear acceleration
// (m/s^2).
struct PdGains {
    double kp_tilt{25.0};
    double kd_tilt{10.0};
    double kp_pos{0.08};
    double kd_pos{0.5};
    double kp_alt{0.5};
    double kd_alt{1.0};
};

inline constexpr double kMaxTiltCommand = 30.0 * kPi / 180.0;

enum class PolicyKind { Hover, Goto, Random };

[[nodiscard]] PolicyKind policyFromName(std::string_view name);

// Holds altitude and levels the airframe.
[[nodiscard]] ControlInput hover(const UavState& state, double target_altitude, const PdGains& gains = {},
                                 const UavParams& params = {}, const AtmosphereModel& atmos = {});

// Cascaded PD toward `destination`: position error sets a tilt command
// (saturated at kMaxTiltCommand), tilt error sets differential thrust,
// altitude error sets collective thrust.
[[nodiscard]] ControlInput goTo(const UavState& state, const Vec2& destination, const PdGains& gains = {},
                                const UavParams& params = {}, const AtmosphereModel& atmos = {});

[[nodiscard]] ControlInput random(StreamRng& rng);

// Scripted actor for one agent of an episode. Hover holds the spawn altitude;
// goto flies to the agent's current target; random draws from its own stream.
class ScriptedAgent {
public:
    ScriptedAgent(PolicyKind kind, std::uint64_t seed, AgentRole role, PdGains gains = {});

    [[nodiscard]] ControlInput act(const EpisodeState& state, const EpisodeConfig& cfg);

private:
    PolicyKind kind_;
    AgentRole role_;
    PdGains gains_;
    StreamRng rng_;
    std::optional<double> hold_altitude_;
};

}  // namespace uavsim::policies
