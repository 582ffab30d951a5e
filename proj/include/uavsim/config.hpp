#pragma once

#include "uavsim/atmosphere.hpp"
#include "uavsim/bezier.hpp"
#include "uavsim/dynamics.hpp"
#include "uavsim/reward.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace uavsim {

struct Interval {
    double lo{0.0};
    double hi{0.0};

    [[nodiscard]] bool contains(double v) const { return v >= lo && v <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

enum class PursuitDirection {
    Closing,  // required velocity points from the interceptor toward the evader
    Opening,
};

inline constexpr double kDegree = kPi / 180.0;

// Every tunable of an episode. Defaults reproduce the reference setup.
struct EpisodeConfig {
    Interval world_x{-5000.0, 5000.0};
    Interval world_h{0.0, 3000.0};
    Interval spawn_x{-4000.0, 4000.0};
    Interval spawn_h{0.0, 2500.0};
    Interval init_speed{0.0, 2.0};
    Interval init_tilt{-10.0 * kDegree, 10.0 * kDegree};
    Interval init_omega{-0.01, 0.01};
    Interval target_speed{1.0, 13.0};
    double omega_limit{20.0};
    int max_steps{2400};

    Interval interceptor_speed{20.0, 40.0};
    Interval interceptor_accel{20.0, 40.0};
    Interval interceptor_lead{0.0, 1.0};
    Interval interceptor_deadzone{0.035, 0.175};
    double spawn_radius_factor{0.9};
    double pursuit_speed_factor{1.2};
    double interceptor_spawn_radius{500.0};
    PursuitDirection pursuit_direction{PursuitDirection::Closing};

    UavParams uav;
    bezier::KinematicLimits limits;
    RewardConfig reward;
    AtmosphereModel atmosphere;

    // Throws ConfigError when an invariant does not hold.
    void validate() const;
};

// Flat "key = value" text. '#' starts a comment; intervals are written
// "lo, hi". Unknown keys and malformed values raise ConfigError.
[[nodiscard]] EpisodeConfig parseConfig(std::string_view text, EpisodeConfig base = {});
[[nodiscard]] EpisodeConfig loadConfig(const std::filesystem::path& path);
void setConfigValue(EpisodeConfig& cfg, std::string_view key, std::string_view value);
[[nodiscard]] std::string formatConfig(const EpisodeConfig& cfg);
[[nodiscard]] std::vector<std::string> configKeys();

}  // namespace uavsim
