#include "uavsim/environment.hpp"

#include "uavsim/error.hpp"
#include "uavsim/reward.hpp"
#include "uavsim/rng.hpp"

#include <cmath>
#include <string>

namespace uavsim {

Scenario scenarioFromInt(int value)
{
    if (value < 1 || value > 3) throw InvalidArgument("scenario must be 1, 2 or 3, got " + std::to_string(value));
    return static_cast<Scenario>(value);
}

std::string_view toString(EpisodeStatus status)
{
    switch (status) {
    case EpisodeStatus::Running: return "running";
    case EpisodeStatus::Success: return "success";
    case EpisodeStatus::OutOfBounds: return "out_of_bounds";
    case EpisodeStatus::Overspin: return "overspin";
    case EpisodeStatus::Intercepted: return "intercepted";
    case EpisodeStatus::MaxSteps: return "max_steps";
    }
    return "unknown";
}

std::string_view toString(AgentRole role)
{
    return role == AgentRole::Evader ? "evader" : "interceptor";
}

int agentCount(Scenario scenario)
{
    return scenario == Scenario::UavDuel ? 2 : 1;
}

std::vector<AgentRole> agentRoles(Scenario scenario)
{
    if (scenario == Scenario::UavDuel) return {AgentRole::Evader, AgentRole::Interceptor};
    return {AgentRole::Evader};
}

namespace env {

namespace {

constexpr std::uint64_t kEvaderStream = 0;
constexpr std::uint64_t kOpponentStream = 1;

Vec2 polar(double magnitude, double angle)
{
    return {magnitude * std::cos(angle), magnitude * std::sin(angle)};
}

bool insideWorld(const Vec2& p, const EpisodeConfig& cfg)
{
    return cfg.world_x.contains(p.x) && cfg.world_h.contains(p.y);
}

// Randomised initial UAV state around `position`.
UavState randomUavState(StreamRng& rng, const Vec2& position, const EpisodeConfig& cfg)
{
    UavState s;
    s.x = position.x;
    s.altitude = position.y;
    const double heading = rng.uniform(-kPi, kPi);
    const double speed = rng.uniform(cfg.init_speed.lo, cfg.init_speed.hi);
    const Vec2 v = polar(speed, heading);
    s.vx = v.x;
    s.vy = v.y;
    s.tilt = rng.uniform(cfg.init_tilt.lo, cfg.init_tilt.hi);
    s.omega = rng.uniform(cfg.init_omega.lo, cfg.init_omega.hi);
    return s;
}

Vec2 uniformInDisc(StreamRng& rng, const Vec2& center, double radius)
{
    const double r = radius * std::sqrt(rng.uniform01());
    const double angle = rng.uniform(-kPi, kPi);
    return center + polar(r, angle);
}

struct Opponent {
    Vec2 position;
    Vec2 velocity;
};

std::optional<Opponent> opponentOf(const EpisodeState& s, AgentRole agent, const EpisodeConfig&)
{
    if (agent == AgentRole::Interceptor) {
        return Opponent{s.evader.position(), s.evader.velocity()};
    }
    if (s.ideal) return Opponent{s.ideal->state.position(), s.ideal->state.velocity(s.ideal->params)};
    if (s.pursuer) return Opponent{s.pursuer->position(), s.pursuer->velocity()};
    return std::nullopt;
}

bool stateFinite(const UavState& s)
{
    return std::isfinite(s.x) && std::isfinite(s.altitude) && std::isfinite(s.vx) && std::isfinite(s.vy) &&
           std::isfinite(s.tilt) && std::isfinite(s.omega);
}

bool outOfBounds(const UavState& s, const EpisodeConfig& cfg)
{
    return !stateFinite(s) || !insideWorld(s.position(), cfg);
}

bool overspun(const UavState& s, const EpisodeConfig& cfg)
{
    return std::abs(s.omega) > cfg.omega_limit;
}

std::optional<double> separationOf(const EpisodeState& s)
{
    if (s.ideal) return (s.ideal->state.position() - s.evader.position()).norm();
    if (s.pursuer) return (s.pursuer->position() - s.evader.position()).norm();
    return std::nullopt;
}

}  // namespace

bezier::BoundaryConditions evaderTarget(const EpisodeState& state)
{
    return {state.evader.position(), state.evader.velocity(), state.destination, state.destination_vel};
}

bezier::BoundaryConditions pursuitTarget(const EpisodeState& state, const EpisodeConfig& cfg)
{
    if (state.scenario != Scenario::UavDuel || !state.pursuer) {
        throw ContractViolation("pursuit target exists only in scenario 3");
    }
    const UavState& m = *state.pursuer;
    const Vec2 los = state.evader.position() - m.position();
    Vec2 required;
    const double distance = los.norm();
    if (distance > 0.0) {
        const double sign = cfg.pursuit_direction == PursuitDirection::Closing ? 1.0 : -1.0;
        required = (sign * cfg.pursuit_speed_factor * state.evader.speed() / distance) * los;
    }
    return {m.position(), m.velocity(), state.evader.position(), required};
}

double timeToGo(const bezier::BoundaryConditions& bc, const EpisodeConfig& cfg)
{
    const bezier::MinTimeResult r = bezier::minTime(bc, cfg.limits);
    return r.feasible ? r.t_min : bezier::kMaxDuration;
}

Observation buildObservation(const EpisodeState& state, AgentRole agent, const EpisodeConfig& cfg)
{
    if (agent == AgentRole::Interceptor && !state.pursuer) {
        throw InvalidArgument("this scenario has no interceptor agent");
    }
    const UavState& self = agent == AgentRole::Evader ? state.evader : *state.pursuer;
    const bezier::BoundaryConditions target =
        agent == AgentRole::Evader ? evaderTarget(state) : pursuitTarget(state, cfg);

    const Vec2 axis = self.axis();
    const Vec2 toTarget = target.end_pos - self.position();

    Observation obs{};
    obs[0] = self.altitude;
    obs[1] = self.omega;
    obs[2] = dynamics::angleOfAttack(self);
    obs[3] = wrapAngle(self.tilt);
    obs[4] = self.speed();
    obs[5] = toTarget.norm();
    obs[6] = target.end_vel.norm();
    obs[7] = signedAngle(axis, toTarget);
    obs[8] = signedAngle(toTarget, target.end_vel);

    if (const auto opp = opponentOf(state, agent, cfg)) {
        const Vec2 toOpponent = opp->position - self.position();
        obs[9] = toOpponent.norm();
        obs[10] = opp->velocity.norm();
        obs[11] = signedAngle(axis, toOpponent);
        obs[12] = signedAngle(toOpponent, opp->velocity);
    }
    return obs;
}

ResetResult reset(Scenario scenario, std::uint64_t seed, const EpisodeConfig& cfg)
{
    cfg.validate();

    EpisodeState s;
    s.scenario = scenario;
    s.seed = seed;

    StreamRng evaderRng(seed, kEvaderStream);
    bool spawned = false;
    for (int attempt = 0; attempt < kMaxSpawnAttempts && !spawned; ++attempt) {
        const Vec2 start{evaderRng.uniform(cfg.spawn_x.lo, cfg.spawn_x.hi),
                         evaderRng.uniform(cfg.spawn_h.lo, cfg.spawn_h.hi)};
        s.evader = randomUavState(evaderRng, start, cfg);
        s.destination = {evaderRng.uniform(cfg.spawn_x.lo, cfg.spawn_x.hi),
                         evaderRng.uniform(cfg.spawn_h.lo, cfg.spawn_h.hi)};
        const double heading = evaderRng.uniform(-kPi, kPi);
        s.destination_vel = polar(evaderRng.uniform(cfg.target_speed.lo, cfg.target_speed.hi), heading);
        spawned = bezier::minTime(evaderTarget(s), cfg.limits).feasible;
    }
    if (!spawned) throw ConfigError("no feasible evader spawn found; check limits against spawn ranges");
    s.initial_tmin[0] = s.prev_tmin[0] = timeToGo(evaderTarget(s), cfg);

    StreamRng opponentRng(seed, kOpponentStream);
    if (scenario == Scenario::EvadeInterceptor) {
        spawned = false;
        for (int attempt = 0; attempt < kMaxSpawnAttempts && !spawned; ++attempt) {
            IdealInterceptor m;
            m.params.speed = opponentRng.uniform(cfg.interceptor_speed.lo, cfg.interceptor_speed.hi);
            m.params.lateral_accel = opponentRng.uniform(cfg.interceptor_accel.lo, cfg.interceptor_accel.hi);
            m.params.lead_fraction = opponentRng.uniform(cfg.interceptor_lead.lo, cfg.interceptor_lead.hi);
            m.params.deadzone = opponentRng.uniform(cfg.interceptor_deadzone.lo, cfg.interceptor_deadzone.hi);
            const double radius = cfg.spawn_radius_factor * s.initial_tmin[0] * m.params.speed;
            const Vec2 p = uniformInDisc(opponentRng, s.evader.position(), radius);
            m.state = {p.x, p.y, opponentRng.uniform(-kPi, kPi)};
            if (insideWorld(p, cfg)) {
                s.ideal = m;
                spawned = true;
            }
        }
        if (!spawned) throw ConfigError("no interceptor spawn inside the world region");
    } else if (scenario == Scenario::UavDuel) {
        spawned = false;
        for (int attempt = 0; attempt < kMaxSpawnAttempts && !spawned; ++attempt) {
            const Vec2 p = uniformInDisc(opponentRng, s.destination, cfg.interceptor_spawn_radius);
            s.pursuer = randomUavState(opponentRng, p, cfg);
            spawned = insideWorld(p, cfg) && bezier::minTime(pursuitTarget(s, cfg), cfg.limits).feasible;
        }
        if (!spawned) throw ConfigError("no interceptor UAV spawn inside the world region");
        s.initial_tmin[1] = s.prev_tmin[1] = timeToGo(pursuitTarget(s, cfg), cfg);
    }

    ResetResult result{s, {}};
    for (AgentRole role : agentRoles(scenario)) {
        result.observations.push_back(buildObservation(s, role, cfg));
    }
    return result;
}

StepOutcome step(EpisodeState& s, std::span<const ControlInput> actions, const EpisodeConfig& cfg)
{
    if (s.done()) throw ContractViolation("episode already finished with status " + std::string(toString(s.status)));
    if (static_cast<int>(actions.size()) != agentCount(s.scenario)) {
        throw InvalidArgument("expected " + std::to_string(agentCount(s.scenario)) + " action(s), got " +
                              std::to_string(actions.size()));
    }

    const double dt = cfg.uav.control_period;
    const int substeps = cfg.uav.substeps;
    const double h = dt / substeps;
    const double stopRadius = cfg.reward.stop_radius;

    // Guidance is evaluated once per control period.
    double ideal_rate = 0.0;
    if (s.ideal) {
        const Vec2 aim = interceptor::leadPoint(s.evader.position(), s.evader.velocity(), s.ideal->state.position(),
                                                s.ideal->params);
        ideal_rate = interceptor::turnRate(s.ideal->state, aim, s.ideal->params);
    }

    const UavState evaderStart = s.evader;
    const std::optional<UavState> pursuerStart = s.pursuer;
    bool intercepted = false;
    for (int k = 0; k < substeps; ++k) {
        s.evader = dynamics::rk4Substep(s.evader, actions[0], cfg.uav, cfg.atmosphere, h);
        if (s.pursuer) s.pursuer = dynamics::rk4Substep(*s.pursuer, actions[1], cfg.uav, cfg.atmosphere, h);
        if (s.ideal) s.ideal->state = interceptor::advance(s.ideal->state, ideal_rate, s.ideal->params.speed, h);
        if (const auto sep = separationOf(s); sep && *sep < stopRadius) intercepted = true;
    }
    s.evader.time = evaderStart.time + dt;
    s.evader.tilt = wrapAngle(s.evader.tilt);
    if (s.pursuer) {
        s.pursuer->time = pursuerStart->time + dt;
        s.pursuer->tilt = wrapAngle(s.pursuer->tilt);
    }
    ++s.step_index;

    const bool evaderOut = outOfBounds(s.evader, cfg);
    const bool pursuerOut = s.pursuer && outOfBounds(*s.pursuer, cfg);
    const bool evaderSpin = overspun(s.evader, cfg);
    const bool pursuerSpin = s.pursuer && overspun(*s.pursuer, cfg);

    // A diverged state cannot be scored; fall back to the pre-step state so
    // the outcome stays finite.
    if (!stateFinite(s.evader)) s.evader = evaderStart;
    if (s.pursuer && !stateFinite(*s.pursuer)) s.pursuer = pursuerStart;

    StepOutcome out;
    out.distance_to_target = (s.destination - s.evader.position()).norm();
    out.separation = separationOf(s);

    if (evaderOut || pursuerOut) {
        out.status = EpisodeStatus::OutOfBounds;
    } else if (evaderSpin || pursuerSpin) {
        out.status = EpisodeStatus::Overspin;
    } else if (intercepted) {
        out.status = EpisodeStatus::Intercepted;
    } else if (out.distance_to_target < stopRadius) {
        out.status = EpisodeStatus::Success;
    } else if (s.step_index >= cfg.max_steps) {
        out.status = EpisodeStatus::MaxSteps;
    }
    s.status = out.status;
    out.done = s.done();

    const RewardConfig& rc = cfg.reward;
    for (AgentRole role : agentRoles(s.scenario)) {
        const auto idx = static_cast<std::size_t>(role);
        const bool isEvader = role == AgentRole::Evader;

        AgentOutcome a;
        a.role = role;
        a.tmin = timeToGo(isEvader ? evaderTarget(s) : pursuitTarget(s, cfg), cfg);
        a.shaped_reward = reward::stepReward(s.prev_tmin[idx], a.tmin);
        s.prev_tmin[idx] = a.tmin;

        switch (out.status) {
        case EpisodeStatus::OutOfBounds:
            if (isEvader ? evaderOut : pursuerOut) {
                a.terminal_reward = reward::terminalAdjustment(TerminalEvent::OutOfBounds, rc);
            }
            break;
        case EpisodeStatus::Overspin:
            if (isEvader ? evaderSpin : pursuerSpin) {
                a.terminal_reward = reward::terminalAdjustment(TerminalEvent::Overspin, rc);
            }
            break;
        case EpisodeStatus::Intercepted:
            a.terminal_reward = reward::terminalAdjustment(
                isEvader ? TerminalEvent::Intercepted : TerminalEvent::InterceptSuccess, rc);
            break;
        case EpisodeStatus::Success:
            if (isEvader) {
                // r_final = r_n + bonus; the bonus is reported as the terminal part.
                a.terminal_reward =
                    reward::terminalSuccess(0.0, s.evader.velocity(), s.destination_vel, a.tmin, rc);
            }
            break;
        default: break;
        }
        a.reward = a.shaped_reward + a.terminal_reward;
        a.observation = buildObservation(s, role, cfg);
        out.agents.push_back(a);
    }
    return out;
}

void retarget(EpisodeState& state, const Vec2& destination, const Vec2& destination_vel, const EpisodeConfig& cfg)
{
    if (!destination.isFinite() || !destination_vel.isFinite()) throw InvalidArgument("target must be finite");
    state.destination = destination;
    state.destination_vel = destination_vel;
    state.initial_tmin[0] = state.prev_tmin[0] = timeToGo(evaderTarget(state), cfg);
}

}  // namespace env

}  // namespace uavsim
