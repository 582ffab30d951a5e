#pragma once

#include "uavsim/vec2.hpp"

namespace uavsim {

enum class FinalRewardDenominator {
    Difference,  // |v_D - v_n|: larger bonus for closer velocity match
    Sum,         // |v_D + v_n|
};

struct RewardConfig {
    double boundary_penalty{100.0};
    double spin_penalty{100.0};
    double intercept_penalty{100.0};
    double intercept_bonus{100.0};
    double success_scale{100.0};
    double stop_radius{10.0};   // m
    double vel_epsilon{0.1};    // m/s
    double tmin_epsilon{1e-3};  // s
    FinalRewardDenominator final_reward_denominator{FinalRewardDenominator::Difference};

    void validate() const;
};

enum class TerminalEvent {
    OutOfBounds,
    Overspin,
    Intercepted,       // evader was caught
    InterceptSuccess,  // interceptor agent caught the evader
};

namespace reward {

// Shaped reward for one transition: previous minus current time-to-go.
[[nodiscard]] inline double stepReward(double tmin_prev, double tmin_curr) { return tmin_prev - tmin_curr; }

// Reward at the step the UAV reaches its destination:
//   r_n + scale * 2 L_stop / max(|v_D -+ v_n|, vel_eps) / max(tmin_n, tmin_eps)
[[nodiscard]] double terminalSuccess(double r_n, const Vec2& v_n, const Vec2& v_d, double tmin_n,
                                     const RewardConfig& cfg);

// Signed adjustment added to the step reward on a terminal event.
[[nodiscard]] double terminalAdjustment(TerminalEvent event, const RewardConfig& cfg);

}  // namespace reward

}  // namespace uavsim
