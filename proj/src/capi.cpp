#include "uavsim/uavsim.h"

#include "uavsim/bezier.hpp"
#include "uavsim/config.hpp"
#include "uavsim/environment.hpp"
#include "uavsim/error.hpp"
#include "uavsim/policies.hpp"
#include "uavsim/server.hpp"
#include "uavsim/trajectory.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <string>

struct uavsim_config {
    uavsim::EpisodeConfig cfg;
};

struct uavsim_env {
    uavsim::EpisodeConfig cfg;
    std::optional<uavsim::EpisodeState> state;
    std::optional<uavsim::TrajectoryLog> log;
    std::map<std::pair<int, int>, uavsim::policies::ScriptedAgent> agents;  // (agent, policy)
};

struct uavsim_server {
    std::unique_ptr<uavsim::EnvServer> server;
};

namespace {

thread_local std::string g_last_error;

uavsim_status statusOf(uavsim::ErrorCode code)
{
    switch (code) {
    case uavsim::ErrorCode::InvalidArgument: return UAVSIM_ERR_INVALID_ARGUMENT;
    case uavsim::ErrorCode::ContractViolation: return UAVSIM_ERR_CONTRACT;
    case uavsim::ErrorCode::IntegrationFailure: return UAVSIM_ERR_INTEGRATION;
    case uavsim::ErrorCode::Configuration: return UAVSIM_ERR_CONFIG;
    case uavsim::ErrorCode::Io: return UAVSIM_ERR_IO;
    }
    return UAVSIM_ERR_INTERNAL;
}

template <class F>
uavsim_status try_(F&& f)
{
    try {
        f();
    } catch (const uavsim::Error& e) {
        g_last_error = e.what();
        return statusOf(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return UAVSIM_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return UAVSIM_ERR_INTERNAL;
    }
    return UAVSIM_OK;
}

template <class T>
T& deref(T* p, const char* what)
{
    if (p == nullptr) throw uavsim::InvalidArgument(std::string(what) + " must not be NULL");
    return *p;
}

uavsim::bezier::BoundaryConditions toBoundary(const uavsim_boundary& b)
{
    return {{b.start_x, b.start_y}, {b.start_vx, b.start_vy}, {b.end_x, b.end_y}, {b.end_vx, b.end_vy}};
}

uavsim::EpisodeState& activeEpisode(uavsim_env& env)
{
    if (!env.state) throw uavsim::ContractViolation("no episode; call uavsim_env_reset first");
    return *env.state;
}

const uavsim::EpisodeState& activeEpisode(const uavsim_env& env)
{
    if (!env.state) throw uavsim::ContractViolation("no episode; call uavsim_env_reset first");
    return *env.state;
}

uavsim::AgentRole roleOf(const uavsim::EpisodeState& s, int agent)
{
    if (agent < 0 || agent >= uavsim::agentCount(s.scenario)) {
        throw uavsim::InvalidArgument("agent index out of range: " + std::to_string(agent));
    }
    return static_cast<uavsim::AgentRole>(agent);
}

}  // namespace

extern "C" {

const char* uavsim_version(void)
{
    return "1.0.0";
}

const char* uavsim_last_error(void)
{
    return g_last_error.c_str();
}

const char* uavsim_status_name(uavsim_status status)
{
    switch (status) {
    case UAVSIM_OK: return "ok";
    case UAVSIM_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case UAVSIM_ERR_CONTRACT: return "contract_violation";
    case UAVSIM_ERR_INTEGRATION: return "integration_failure";
    case UAVSIM_ERR_CONFIG: return "config_error";
    case UAVSIM_ERR_IO: return "io_error";
    case UAVSIM_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* uavsim_episode_status_name(int episode_status)
{
    if (episode_status < 0 || episode_status > UAVSIM_EPISODE_MAX_STEPS) return "unknown";
    return uavsim::toString(static_cast<uavsim::EpisodeStatus>(episode_status)).data();
}

uavsim_status uavsim_config_create(uavsim_config** out)
{
    return try_([&] { deref(out, "out") = new uavsim_config{}; });
}

uavsim_status uavsim_config_load(const char* path, uavsim_config** out)
{
    return try_([&] {
        auto cfg = std::make_unique<uavsim_config>();
        cfg->cfg = uavsim::loadConfig(&deref(path, "path"));
        deref(out, "out") = cfg.release();
    });
}

uavsim_status uavsim_config_set(uavsim_config* cfg, const char* key, const char* value)
{
    return try_([&] {
        uavsim::EpisodeConfig updated = deref(cfg, "cfg").cfg;
        uavsim::setConfigValue(updated, &deref(key, "key"), &deref(value, "value"));
        updated.validate();
        cfg->cfg = updated;
    });
}

uavsim_status uavsim_config_dump(const uavsim_config* cfg, char* buf, size_t capacity, size_t* needed)
{
    return try_([&] {
        const std::string text = uavsim::formatConfig(deref(cfg, "cfg").cfg);
        if (needed) *needed = text.size() + 1;
        if (buf == nullptr) return;
        if (capacity < text.size() + 1) throw uavsim::InvalidArgument("buffer too small for configuration dump");
        std::memcpy(buf, text.c_str(), text.size() + 1);
    });
}

uavsim_status uavsim_config_limits(const uavsim_config* cfg, double* v_max, double* a_max)
{
    return try_([&] {
        deref(v_max, "v_max") = deref(cfg, "cfg").cfg.limits.v_max;
        deref(a_max, "a_max") = cfg->cfg.limits.a_max;
    });
}

void uavsim_config_destroy(uavsim_config* cfg)
{
    delete cfg;
}

uavsim_status uavsim_min_time(const uavsim_boundary* bc, double v_max, double a_max, uavsim_min_time_result* out)
{
    return try_([&] {
        namespace bz = uavsim::bezier;
        const bz::BoundaryConditions b = toBoundary(deref(bc, "bc"));
        const bz::MinTimeResult r = bz::minTime(b, {v_max, a_max});
        uavsim_min_time_result res{};
        res.t_min = r.t_min;
        res.feasible = r.feasible ? 1 : 0;
        res.iterations = r.iterations;
        if (r.t_min > 0.0) {
            const bz::CubicCurve curve = bz::buildCurve(b, r.t_min);
            const bz::Extremum vs = bz::maxSpeed(curve);
            const bz::Extremum as = bz::maxAccel(curve);
            res.max_speed = vs.value;
            res.max_speed_tau = vs.tau;
            res.max_accel = as.value;
            res.max_accel_tau = as.tau;
        }
        deref(out, "out") = res;
    });
}

uavsim_status uavsim_curve_sample(const uavsim_boundary* bc, double duration, double tau, uavsim_curve_point* out)
{
    return try_([&] {
        namespace bz = uavsim::bezier;
        const bz::CubicCurve curve = bz::buildCurve(toBoundary(deref(bc, "bc")), duration);
        const uavsim::Vec2 p = bz::position(curve, tau);
        const uavsim::Vec2 v = bz::velocity(curve, tau);
        const uavsim::Vec2 a = bz::acceleration(curve, tau);
        deref(out, "out") = {tau, p.x, p.y, v.x, v.y, a.x, a.y};
    });
}

uavsim_status uavsim_env_create(const uavsim_config* cfg, uavsim_env** out)
{
    return try_([&] {
        auto env = std::make_unique<uavsim_env>();
        env->cfg = cfg ? cfg->cfg : uavsim::EpisodeConfig{};
        env->cfg.validate();
        deref(out, "out") = env.release();
    });
}

uavsim_status uavsim_env_reset(uavsim_env* env, int scenario, uint64_t seed)
{
    return try_([&] {
        uavsim_env& e = deref(env, "env");
        const uavsim::Scenario sc = uavsim::scenarioFromInt(scenario);
        uavsim::ResetResult r = uavsim::env::reset(sc, seed, e.cfg);
        e.state = std::move(r.state);
        e.log.emplace(sc);
        e.agents.clear();
    });
}

uavsim_status uavsim_env_agent_count(const uavsim_env* env, int* out)
{
    return try_([&] { deref(out, "out") = uavsim::agentCount(activeEpisode(deref(env, "env")).scenario); });
}

uavsim_status uavsim_env_observation(const uavsim_env* env, int agent, double* out13)
{
    return try_([&] {
        const uavsim_env& e = deref(env, "env");
        const uavsim::EpisodeState& s = activeEpisode(e);
        const uavsim::Observation obs = uavsim::env::buildObservation(s, roleOf(s, agent), e.cfg);
        std::memcpy(&deref(out13, "out"), obs.data(), sizeof(double) * obs.size());
    });
}

uavsim_status uavsim_env_step(uavsim_env* env, const double* actions, size_t count, uavsim_step_result* out)
{
    return try_([&] {
        uavsim_env& e = deref(env, "env");
        uavsim::EpisodeState& s = activeEpisode(e);
        if (count % UAVSIM_ACTION_SIZE != 0) throw uavsim::InvalidArgument("actions must come in (a1, a2) pairs");
        if (count > 0) deref(actions, "actions");

        std::vector<uavsim::ControlInput> controls;
        for (size_t i = 0; i < count; i += UAVSIM_ACTION_SIZE) controls.emplace_back(actions[i], actions[i + 1]);

        const uavsim::StepOutcome o = uavsim::env::step(s, controls, e.cfg);
        e.log->record(s, controls, o);

        uavsim_step_result r{};
        r.step = s.step_index;
        r.done = o.done ? 1 : 0;
        r.status = static_cast<int>(o.status);
        r.agent_count = static_cast<int>(o.agents.size());
        for (size_t i = 0; i < o.agents.size(); ++i) {
            r.reward[i] = o.agents[i].reward;
            r.shaped_reward[i] = o.agents[i].shaped_reward;
            r.terminal_reward[i] = o.agents[i].terminal_reward;
            r.tmin[i] = o.agents[i].tmin;
        }
        r.distance_to_target = o.distance_to_target;
        r.separation = o.separation ? *o.separation : std::numeric_limits<double>::quiet_NaN();
        deref(out, "out") = r;
    });
}

uavsim_status uavsim_env_policy_action(uavsim_env* env, int agent, int policy, double* out2)
{
    return try_([&] {
        uavsim_env& e = deref(env, "env");
        const uavsim::EpisodeState& s = activeEpisode(e);
        const uavsim::AgentRole role = roleOf(s, agent);
        if (policy < UAVSIM_POLICY_HOVER || policy > UAVSIM_POLICY_RANDOM) {
            throw uavsim::InvalidArgument("unknown policy id " + std::to_string(policy));
        }
        auto it = e.agents.find({agent, policy});
        if (it == e.agents.end()) {
            it = e.agents
                     .emplace(std::pair{agent, policy},
                              uavsim::policies::ScriptedAgent(static_cast<uavsim::policies::PolicyKind>(policy),
                                                              s.seed, role))
                     .first;
        }
        const uavsim::ControlInput u = it->second.act(s, e.cfg);
        double* dst = &deref(out2, "out");
        dst[0] = u.a1;
        dst[1] = u.a2;
    });
}

uavsim_status uavsim_policy_from_name(const char* name, int* out)
{
    return try_([&] { deref(out, "out") = static_cast<int>(uavsim::policies::policyFromName(&deref(name, "name"))); });
}

uavsim_status uavsim_env_initial_tmin(const uavsim_env* env, int agent, double* out)
{
    return try_([&] {
        const uavsim::EpisodeState& s = activeEpisode(deref(env, "env"));
        deref(out, "out") = s.initial_tmin[static_cast<size_t>(roleOf(s, agent))];
    });
}

uavsim_status uavsim_env_write_trajectory(const uavsim_env* env, const char* path)
{
    return try_([&] {
        const uavsim_env& e = deref(env, "env");
        if (!e.log) throw uavsim::ContractViolation("no episode recorded");
        std::ofstream f(&deref(path, "path"), std::ios::binary);
        if (!f) throw uavsim::IoError(std::string("cannot open ") + path + " for writing");
        e.log->write(f);
        f.flush();
        if (!f) throw uavsim::IoError(std::string("failed writing ") + path);
    });
}

void uavsim_env_destroy(uavsim_env* env)
{
    delete env;
}

uavsim_status uavsim_server_start(const uavsim_config* cfg, const char* bind_address, uint16_t port,
                                  uavsim_server** out)
{
    return try_([&] {
        auto s = std::make_unique<uavsim_server>();
        s->server = std::make_unique<uavsim::EnvServer>(cfg ? cfg->cfg : uavsim::EpisodeConfig{});
        s->server->start(bind_address ? bind_address : "127.0.0.1", port);
        deref(out, "out") = s.release();
    });
}

uavsim_status uavsim_server_port(const uavsim_server* server, uint16_t* out)
{
    return try_([&] { deref(out, "out") = deref(server, "server").server->port(); });
}

uavsim_status uavsim_server_wait(uavsim_server* server)
{
    return try_([&] { deref(server, "server").server->wait(); });
}

uavsim_status uavsim_server_stop(uavsim_server* server)
{
    return try_([&] { deref(server, "server").server->stop(); });
}

void uavsim_server_destroy(uavsim_server* server)
{
    delete server;
}

}  // extern "C"
