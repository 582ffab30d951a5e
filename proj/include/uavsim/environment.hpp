#pragma once

#include "uavsim/bezier.hpp"
#include "uavsim/config.hpp"
#include "uavsim/dynamics.hpp"
#include "uavsim/interceptor.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace uavsim {

enum class Scenario : int {
    FlightToPoint = 1,     // reach a fixed point with a required velocity
    EvadeInterceptor = 2,  // same, with an ideal non-learning interceptor
    UavDuel = 3,           // a second learning UAV tries to intercept the first
};

enum class EpisodeStatus { Running, Success, OutOfBounds, Overspin, Intercepted, MaxSteps };

enum class AgentRole { Evader = 0, Interceptor = 1 };

[[nodiscard]] Scenario scenarioFromInt(int value);
[[nodiscard]] std::string_view toString(EpisodeStatus status);
[[nodiscard]] std::string_view toString(AgentRole role);
[[nodiscard]] int agentCount(Scenario scenario);
[[nodiscard]] std::vector<AgentRole> agentRoles(Scenario scenario);

inline constexpr std::size_t kObservationSize = 13;
inline constexpr std::size_t kActionSize = 2;

// Observation layout:
//   0 H, 1 omega, 2 alpha, 3 tilt, 4 |v|,
//   5 L_D, 6 |v_D|, 7 phi_D, 8 gamma_D,
//   9 L_M, 10 |v_M|, 11 phi_M, 12 gamma_M  (all zero without an opponent)
using Observation = std::array<double, kObservationSize>;

struct IdealInterceptor {
    InterceptorState state;
    InterceptorParams params;
};

struct EpisodeState {
    Scenario scenario{Scenario::FlightToPoint};
    std::uint64_t seed{0};

    UavState evader;
    Vec2 destination;
    Vec2 destination_vel;

    std::optional<IdealInterceptor> ideal;  // scenario 2
    std::optional<UavState> pursuer;        // scenario 3, second learning UAV

    int step_index{0};
    // Time-to-go per learning agent, indexed by AgentRole.
    std::array<double, 2> initial_tmin{0.0, 0.0};
    std::array<double, 2> prev_tmin{0.0, 0.0};
    EpisodeStatus status{EpisodeStatus::Running};

    [[nodiscard]] bool done() const { return status != EpisodeStatus::Running; }
};

struct AgentOutcome {
    AgentRole role{AgentRole::Evader};
    Observation observation{};
    double reward{0.0};           // shaped + terminal
    double shaped_reward{0.0};    // time-to-go decrease
    double terminal_reward{0.0};  // bonuses and penalties
    double tmin{0.0};
};

struct StepOutcome {
    std::vector<AgentOutcome> agents;
    bool done{false};
    EpisodeStatus status{EpisodeStatus::Running};
    double distance_to_target{0.0};  // evader to its destination, m
    std::optional<double> separation;  // evader to opponent, m
};

struct ResetResult {
    EpisodeState state;
    std::vector<Observation> observations;
};

namespace env {

inline constexpr int kMaxSpawnAttempts = 100;

// Spawns a new episode. All randomness derives from `seed`.
[[nodiscard]] ResetResult reset(Scenario scenario, std::uint64_t seed, const EpisodeConfig& cfg);

// Advances every entity by one control period. `actions` holds one control
// per learning agent, in agentRoles() order. Throws ContractViolation once the
// episode is over and InvalidArgument on a wrong action count.
StepOutcome step(EpisodeState& state, std::span<const ControlInput> actions, const EpisodeConfig& cfg);

[[nodiscard]] Observation buildObservation(const EpisodeState& state, AgentRole agent, const EpisodeConfig& cfg);

// Boundary conditions the evader flies toward.
[[nodiscard]] bezier::BoundaryConditions evaderTarget(const EpisodeState& state);

// Moving target of the interceptor UAV in scenario 3: the evader's position,
// with a required velocity of pursuit_speed_factor * |v_evader| along the line
// of sight. Throws ContractViolation outside scenario 3.
[[nodiscard]] bezier::BoundaryConditions pursuitTarget(const EpisodeState& state, const EpisodeConfig& cfg);

// Time-to-go estimate; an infeasible problem reports the search cap.
[[nodiscard]] double timeToGo(const bezier::BoundaryConditions& bc, const EpisodeConfig& cfg);

// Replaces the evader's destination and restarts its time-to-go bookkeeping.
void retarget(EpisodeState& state, const Vec2& destination, const Vec2& destination_vel, const EpisodeConfig& cfg);

}  // namespace env

}  // namespace uavsim
