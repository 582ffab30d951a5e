#include "uavsim/reward.hpp"

#include "uavsim/error.hpp"

#include <algorithm>
#include <cmath>

namespace uavsim {

void RewardConfig::validate() const
{
    for (double v : {boundary_penalty, spin_penalty, intercept_penalty, intercept_bonus, success_scale, stop_radius,
                     vel_epsilon, tmin_epsilon}) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("reward constants must be non-negative and finite");
    }
}

namespace reward {

double terminalSuccess(double r_n, const Vec2& v_n, const Vec2& v_d, double tmin_n, const RewardConfig& cfg)
{
    const Vec2 mismatch = cfg.final_reward_denominator == FinalRewardDenominator::Difference ? v_d - v_n : v_d + v_n;
    const double speedTerm = std::max(mismatch.norm(), cfg.vel_epsilon);
    const double timeTerm = std::max(tmin_n, cfg.tmin_epsilon);
    return r_n + cfg.success_scale * (2.0 * cfg.stop_radius / speedTerm) * (1.0 / timeTerm);
}

double terminalAdjustment(TerminalEvent event, const RewardConfig& cfg)
{
    switch (event) {
    case TerminalEvent::OutOfBounds: return -cfg.boundary_penalty;
    case TerminalEvent::Overspin: return -cfg.spin_penalty;
    case TerminalEvent::Intercepted: return -cfg.intercept_penalty;
    case TerminalEvent::InterceptSuccess: return cfg.intercept_bonus;
    }
    throw InvalidArgument("unknown terminal event");
}

}  // namespace reward

}  // namespace uavsim
