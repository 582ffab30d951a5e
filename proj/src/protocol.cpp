#include "uavsim/protocol.hpp"

#include "uavsim/error.hpp"

#include <json.hpp>

#include <cmath>
#include <vector>

namespace uavsim::protocol {

using nlohmann::json;

namespace {

struct ProtocolError {
    std::string code;
    std::string detail;
};

std::string errorReply(const std::string& code, const std::string& detail)
{
    return json{{"ok", false}, {"error", code}, {"detail", detail}}.dump();
}

json stateArray(const UavState& s)
{
    return json::array({s.time, s.x, s.altitude, s.vx, s.vy, s.tilt, s.omega});
}

json observationArray(const Observation& o)
{
    return json(std::vector<double>(o.begin(), o.end()));
}

json specPayload(const EpisodeConfig& cfg)
{
    json agents = json::object();
    for (int sc = 1; sc <= 3; ++sc) {
        json names = json::array();
        for (AgentRole r : agentRoles(static_cast<Scenario>(sc))) names.push_back(std::string(toString(r)));
        agents[std::to_string(sc)] = names;
    }
    return {
        {"ok", true},
        {"protocol_version", kVersion},
        {"scenarios", {1, 2, 3}},
        {"agents", agents},
        {"observation_dim", kObservationSize},
        {"action_dim", kActionSize},
        {"action_low", 0.0},
        {"action_high", 1.0},
        {"control_period", cfg.uav.control_period},
        {"max_steps", cfg.max_steps},
        {"observation_fields",
         {"H", "omega", "alpha", "beta", "speed", "L_D", "v_D", "phi_D", "gamma_D", "L_M", "v_M", "phi_M", "gamma_M"}},
    };
}

json episodeInfo(const EpisodeState& s)
{
    json info = json::object();
    json states = json::object();
    json tmin = json::object();
    states["evader"] = stateArray(s.evader);
    tmin["evader"] = s.prev_tmin[0];
    if (s.pursuer) {
        states["interceptor"] = stateArray(*s.pursuer);
        tmin["interceptor"] = s.prev_tmin[1];
    }
    info["state"] = states;
    info["tmin"] = tmin;
    info["destination"] = {s.destination.x, s.destination.y, s.destination_vel.x, s.destination_vel.y};
    if (s.ideal) {
        info["ideal"] = {s.ideal->state.x, s.ideal->state.altitude, s.ideal->state.heading};
        info["ideal_params"] = {{"speed", s.ideal->params.speed},
                                {"lateral_accel", s.ideal->params.lateral_accel},
                                {"lead_fraction", s.ideal->params.lead_fraction},
                                {"deadzone", s.ideal->params.deadzone}};
    }
    return info;
}

std::vector<ControlInput> parseActions(const json& request, Scenario scenario)
{
    if (!request.contains("actions")) throw ProtocolError{"bad_request", "step requires an 'actions' object"};
    const json& actions = request["actions"];
    if (!actions.is_object()) throw ProtocolError{"bad_action", "'actions' must map agent names to [a1, a2]"};

    const auto roles = agentRoles(scenario);
    if (actions.size() != roles.size()) {
        throw ProtocolError{"bad_action", "expected actions for " + std::to_string(roles.size()) + " agent(s)"};
    }
    std::vector<ControlInput> controls;
    for (AgentRole role : roles) {
        const std::string name(toString(role));
        const auto it = actions.find(name);
        if (it == actions.end()) throw ProtocolError{"bad_action", "missing action for agent '" + name + "'"};
        if (!it->is_array() || it->size() != kActionSize || !(*it)[0].is_number() || !(*it)[1].is_number()) {
            throw ProtocolError{"bad_action", "action for '" + name + "' must be [a1, a2]"};
        }
        controls.emplace_back((*it)[0].get<double>(), (*it)[1].get<double>());
    }
    return controls;
}

}  // namespace

Session::Session(std::shared_ptr<const EpisodeConfig> cfg, std::uint64_t id) : cfg_(std::move(cfg)), id_(id) {}

std::string Session::handle(std::string_view line)
{
    json request;
    try {
        request = json::parse(line);
    } catch (const json::parse_error& e) {
        return errorReply("bad_request", std::string("malformed JSON: ") + e.what());
    }

    try {
        if (!request.is_object() || !request.contains("cmd") || !request["cmd"].is_string()) {
            throw ProtocolError{"bad_request", "request must be an object with a string 'cmd'"};
        }
        const std::string cmd = request["cmd"];

        if (cmd == "spec") return specPayload(*cfg_).dump();

        if (cmd == "reset") {
            const auto sc = request.find("scenario");
            const auto sd = request.find("seed");
            if (sc == request.end() || !sc->is_number_integer()) {
                throw ProtocolError{"bad_request", "reset requires an integer 'scenario'"};
            }
            if (sd == request.end() || !sd->is_number_unsigned()) {
                throw ProtocolError{"bad_request", "reset requires a non-negative integer 'seed'"};
            }
            const int scenarioValue = sc->get<int>();
            if (scenarioValue < 1 || scenarioValue > 3) throw ProtocolError{"bad_request", "scenario must be 1, 2 or 3"};

            ResetResult r = env::reset(static_cast<Scenario>(scenarioValue), sd->get<std::uint64_t>(), *cfg_);
            episode_ = std::move(r.state);
            ++episodes_;

            json observations = json::object();
            json names = json::array();
            const auto roles = agentRoles(episode_->scenario);
            for (std::size_t i = 0; i < roles.size(); ++i) {
                observations[std::string(toString(roles[i]))] = observationArray(r.observations[i]);
                names.push_back(std::string(toString(roles[i])));
            }
            return json{{"ok", true},           {"episode", episodes_},         {"scenario", scenarioValue},
                        {"agents", names},      {"observations", observations}, {"info", episodeInfo(*episode_)}}
                .dump();
        }

        if (cmd == "step") {
            if (!episode_) throw ProtocolError{"no_episode", "no active episode; send reset first"};
            const std::vector<ControlInput> controls = parseActions(request, episode_->scenario);
            const StepOutcome out = env::step(*episode_, controls, *cfg_);

            json observations = json::object(), rewards = json::object(), shaped = json::object(),
                 terminal = json::object();
            for (const AgentOutcome& a : out.agents) {
                const std::string name(toString(a.role));
                observations[name] = observationArray(a.observation);
                rewards[name] = a.reward;
                shaped[name] = a.shaped_reward;
                terminal[name] = a.terminal_reward;
            }
            json info = episodeInfo(*episode_);
            info["distance_to_target"] = out.distance_to_target;
            info["separation"] = out.separation ? json(*out.separation) : json(nullptr);
            json actions = json::object();
            const auto roles = agentRoles(episode_->scenario);
            for (std::size_t i = 0; i < roles.size(); ++i) {
                actions[std::string(toString(roles[i]))] = {controls[i].a1, controls[i].a2};
            }
            info["applied_actions"] = actions;

            json reply{{"ok", true},
                       {"step", episode_->step_index},
                       {"observations", observations},
                       {"rewards", rewards},
                       {"shaped_rewards", shaped},
                       {"terminal_rewards", terminal},
                       {"done", out.done},
                       {"status", std::string(toString(out.status))},
                       {"info", info}};
            if (out.done) episode_.reset();
            return reply.dump();
        }

        if (cmd == "close") {
            closed_ = true;
            episode_.reset();
            return json{{"ok", true}, {"closed", true}, {"episodes", episodes_}}.dump();
        }

        throw ProtocolError{"bad_request", "unknown cmd '" + cmd + "'"};
    } catch (const ProtocolError& e) {
        return errorReply(e.code, e.detail);
    } catch (const ConfigError& e) {
        return errorReply("config_error", e.what());
    } catch (const InvalidArgument& e) {
        return errorReply("bad_request", e.what());
    } catch (const json::exception& e) {
        return errorReply("bad_request", e.what());
    } catch (const std::exception& e) {
        return errorReply("internal", e.what());
    }
}

}  // namespace uavsim::protocol
