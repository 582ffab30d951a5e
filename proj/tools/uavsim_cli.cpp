// Command-line front end. Everything goes through the C API in uavsim.h.

#include "uavsim/uavsim.h"

#include <CLI11.hpp>

#include <csignal>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <pthread.h>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(uavsim_status st, const char* context)
{
    if (st != UAVSIM_OK) {
        throw CliError(std::string(context) + ": " + uavsim_status_name(st) + ": " + uavsim_last_error());
    }
}

struct ConfigDeleter {
    void operator()(uavsim_config* c) const { uavsim_config_destroy(c); }
};
struct EnvDeleter {
    void operator()(uavsim_env* e) const { uavsim_env_destroy(e); }
};
struct ServerDeleter {
    void operator()(uavsim_server* s) const { uavsim_server_destroy(s); }
};
using ConfigPtr = std::unique_ptr<uavsim_config, ConfigDeleter>;
using EnvPtr = std::unique_ptr<uavsim_env, EnvDeleter>;
using ServerPtr = std::unique_ptr<uavsim_server, ServerDeleter>;

// --config wins over UAVSIM_CONFIG; neither means built-in defaults.
ConfigPtr loadConfig(const std::string& path)
{
    std::string resolved = path;
    if (resolved.empty()) {
        if (const char* env = std::getenv("UAVSIM_CONFIG"); env && *env) resolved = env;
    }
    uavsim_config* raw = nullptr;
    if (resolved.empty()) {
        check(uavsim_config_create(&raw), "config");
    } else {
        check(uavsim_config_load(resolved.c_str(), &raw), "config");
    }
    return ConfigPtr(raw);
}

std::vector<double> parseVector(const std::string& text, const char* flag)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CliError(std::string(flag) + ": not a number: '" + item + "'");
        }
    }
    if (out.size() != 4) throw CliError(std::string(flag) + " expects x,y,vx,vy");
    for (double v : out) {
        if (!std::isfinite(v)) throw CliError(std::string(flag) + ": values must be finite");
    }
    return out;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// ---- mintime ---------------------------------------------------------------

struct MinTimeArgs {
    std::string from;
    std::string to;
    std::optional<double> v_max;
    std::optional<double> a_max;
    int samples{0};
    bool strict{false};
    std::string config;
};

int runMinTime(const MinTimeArgs& args)
{
    const std::vector<double> a = parseVector(args.from, "--from");
    const std::vector<double> d = parseVector(args.to, "--to");
    ConfigPtr cfg = loadConfig(args.config);
    double vmax = 0.0, amax = 0.0;
    check(uavsim_config_limits(cfg.get(), &vmax, &amax), "config");
    if (args.v_max) vmax = *args.v_max;
    if (args.a_max) amax = *args.a_max;

    const uavsim_boundary bc{a[0], a[1], a[2], a[3], d[0], d[1], d[2], d[3]};
    uavsim_min_time_result r{};
    check(uavsim_min_time(&bc, vmax, amax, &r), "mintime");

    std::cout << "t_min " << fmt(r.t_min) << "\n"
              << "feasible " << (r.feasible ? "yes" : "no") << "\n"
              << "v_max " << fmt(vmax) << "\n"
              << "a_max " << fmt(amax) << "\n"
              << "max_speed " << fmt(r.max_speed) << " at tau " << fmt(r.max_speed_tau) << "\n"
              << "max_accel " << fmt(r.max_accel) << " at tau " << fmt(r.max_accel_tau) << "\n"
              << "iterations " << r.iterations << "\n";

    if (args.samples > 0 && r.feasible) {
        std::cout << "tau,x,y,vx,vy,ax,ay\n";
        for (int i = 0; i < args.samples; ++i) {
            const double tau = args.samples == 1 ? 0.0 : static_cast<double>(i) / (args.samples - 1);
            uavsim_curve_point p{tau, bc.start_x, bc.start_y, 0.0, 0.0, 0.0, 0.0};
            // A zero-duration solution is the stationary point itself.
            if (r.t_min > 0.0) check(uavsim_curve_sample(&bc, r.t_min, tau, &p), "sample");
            std::cout << fmt(p.tau) << ',' << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(p.vx) << ',' << fmt(p.vy)
                      << ',' << fmt(p.ax) << ',' << fmt(p.ay) << "\n";
        }
    }
    if (!r.feasible && args.strict) {
        std::cerr << "uavsim: no feasible duration up to the search cap\n";
        return 2;
    }
    return 0;
}

// ---- episodes --------------------------------------------------------------

struct EpisodeSummary {
    std::uint64_t seed{0};
    int status{UAVSIM_EPISODE_RUNNING};
    int steps{0};
    int agents{1};
    double reward[UAVSIM_MAX_AGENTS]{};
    double shaped[UAVSIM_MAX_AGENTS]{};
    double tmin0[UAVSIM_MAX_AGENTS]{};
    double tmin_final[UAVSIM_MAX_AGENTS]{};
};

EpisodeSummary runEpisode(uavsim_env* env, int scenario, std::uint64_t seed, int policy, int max_steps)
{
    check(uavsim_env_reset(env, scenario, seed), "reset");
    EpisodeSummary s;
    s.seed = seed;
    check(uavsim_env_agent_count(env, &s.agents), "reset");
    for (int i = 0; i < s.agents; ++i) {
        check(uavsim_env_initial_tmin(env, i, &s.tmin0[i]), "reset");
        s.tmin_final[i] = s.tmin0[i];
    }

    std::vector<double> actions(static_cast<std::size_t>(s.agents) * UAVSIM_ACTION_SIZE);
    uavsim_step_result r{};
    while (max_steps <= 0 || s.steps < max_steps) {
        for (int i = 0; i < s.agents; ++i) {
            check(uavsim_env_policy_action(env, i, policy, &actions[static_cast<std::size_t>(i) * 2]), "policy");
        }
        check(uavsim_env_step(env, actions.data(), actions.size(), &r), "step");
        ++s.steps;
        for (int i = 0; i < s.agents; ++i) {
            s.reward[i] += r.reward[i];
            s.shaped[i] += r.shaped_reward[i];
            s.tmin_final[i] = r.tmin[i];
        }
        if (r.done) break;
    }
    s.status = r.status;
    return s;
}

const char* agentName(int i)
{
    return i == 0 ? "evader" : "interceptor";
}

struct RolloutArgs {
    int scenario{1};
    std::uint64_t seed{0};
    std::string policy{"goto"};
    int steps{0};
    std::string out;
    std::string config;
};

int runRollout(const RolloutArgs& args)
{
    ConfigPtr cfg = loadConfig(args.config);
    int policy = 0;
    check(uavsim_policy_from_name(args.policy.c_str(), &policy), "policy");
    uavsim_env* raw = nullptr;
    check(uavsim_env_create(cfg.get(), &raw), "environment");
    EnvPtr env(raw);

    const EpisodeSummary s = runEpisode(env.get(), args.scenario, args.seed, policy, args.steps);
    if (!args.out.empty()) check(uavsim_env_write_trajectory(env.get(), args.out.c_str()), "export");

    std::cout << "scenario " << args.scenario << " seed " << args.seed << " policy " << args.policy << "\n"
              << "status " << uavsim_episode_status_name(s.status) << "\n"
              << "steps " << s.steps << "\n";
    for (int i = 0; i < s.agents; ++i) {
        const double residual = std::abs(s.shaped[i] - (s.tmin0[i] - s.tmin_final[i]));
        std::cout << agentName(i) << " reward " << fmt(s.reward[i]) << " shaped " << fmt(s.shaped[i]) << " tmin0 "
                  << fmt(s.tmin0[i]) << " tmin_final " << fmt(s.tmin_final[i]) << " telescoping_residual "
                  << fmt(residual) << "\n";
    }
    if (!args.out.empty()) std::cout << "trajectory " << args.out << "\n";
    return 0;
}

struct SweepArgs {
    int scenario{1};
    std::string seeds{"0:100"};
    std::string policy{"goto"};
    int jobs{1};
    std::string config;
};

std::pair<std::uint64_t, std::uint64_t> parseSeedRange(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw CliError("--seeds expects FIRST:END (END exclusive)");
    std::uint64_t first = 0, end = 0;
    try {
        first = std::stoull(text.substr(0, colon));
        end = std::stoull(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw CliError("--seeds expects FIRST:END with non-negative integers");
    }
    if (end <= first) throw CliError("--seeds range " + text + " is empty");
    return {first, end};
}

int runSweep(const SweepArgs& args)
{
    const auto [first, end] = parseSeedRange(args.seeds);
    ConfigPtr cfg = loadConfig(args.config);
    int policy = 0;
    check(uavsim_policy_from_name(args.policy.c_str(), &policy), "policy");

    const std::uint64_t count = end - first;
    const int jobs = std::max(1, std::min<int>(args.jobs, static_cast<int>(count)));
    std::vector<EpisodeSummary> results(count);

    // Worker w handles seeds first + w, first + w + jobs, ...; each owns its env.
    auto worker = [&](int w) {
        uavsim_env* raw = nullptr;
        check(uavsim_env_create(cfg.get(), &raw), "environment");
        EnvPtr env(raw);
        for (std::uint64_t i = static_cast<std::uint64_t>(w); i < count; i += static_cast<std::uint64_t>(jobs)) {
            results[i] = runEpisode(env.get(), args.scenario, first + i, policy, 0);
        }
    };
    std::vector<std::future<void>> pending;
    for (int w = 0; w < jobs; ++w) pending.push_back(std::async(std::launch::async, worker, w));
    for (auto& f : pending) f.get();

    const bool duel = results.front().agents > 1;
    std::cout << "seed,status,steps,reward,shaped_reward" << (duel ? ",interceptor_reward" : "") << "\n";
    int counts[UAVSIM_EPISODE_MAX_STEPS + 1]{};
    double total = 0.0;
    for (const EpisodeSummary& s : results) {
        std::cout << s.seed << ',' << uavsim_episode_status_name(s.status) << ',' << s.steps << ',' << fmt(s.reward[0])
                  << ',' << fmt(s.shaped[0]);
        if (duel) std::cout << ',' << fmt(s.reward[1]);
        std::cout << "\n";
        ++counts[s.status];
        total += s.reward[0];
    }
    const double n = static_cast<double>(count);
    std::cout << "\nepisodes,success_rate,intercepted_rate,out_of_bounds_rate,overspin_rate,max_steps_rate,mean_reward\n"
              << count << ',' << fmt(counts[UAVSIM_EPISODE_SUCCESS] / n) << ','
              << fmt(counts[UAVSIM_EPISODE_INTERCEPTED] / n) << ',' << fmt(counts[UAVSIM_EPISODE_OUT_OF_BOUNDS] / n)
              << ',' << fmt(counts[UAVSIM_EPISODE_OVERSPIN] / n) << ',' << fmt(counts[UAVSIM_EPISODE_MAX_STEPS] / n)
              << ',' << fmt(total / n) << "\n";
    return 0;
}

// ---- serve -----------------------------------------------------------------

struct ServeArgs {
    int port{5555};
    std::string bind{"127.0.0.1"};
    std::string config;
};

int runServe(const ServeArgs& args)
{
    if (args.port < 0 || args.port > 65535) throw CliError("--port must be in [0, 65535]");
    ConfigPtr cfg = loadConfig(args.config);

    // Route SIGINT/SIGTERM to a watcher thread so shutdown happens outside
    // signal context.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    uavsim_server* raw = nullptr;
    check(uavsim_server_start(cfg.get(), args.bind.c_str(), static_cast<std::uint16_t>(args.port), &raw), "serve");
    ServerPtr server(raw);
    std::uint16_t port = 0;
    check(uavsim_server_port(server.get(), &port), "serve");
    std::cout << "listening on " << args.bind << ":" << port << std::endl;

    std::thread watcher([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        uavsim_server_stop(server.get());
    });
    check(uavsim_server_wait(server.get()), "serve");
    watcher.join();
    std::cout << "server stopped" << std::endl;
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Planar UAV flight environment: time-to-go solver, scripted rollouts and environment server"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(uavsim_version()));

    MinTimeArgs mt;
    auto* mintime = app.add_subcommand("mintime", "Minimum feasible flight time between two boundary states");
    mintime->add_option("--from", mt.from, "Start state x,y,vx,vy")->required();
    mintime->add_option("--to", mt.to, "End state x,y,vx,vy")->required();
    mintime->add_option("--vmax", mt.v_max, "Speed limit in m/s (default from config)");
    mintime->add_option("--amax", mt.a_max, "Acceleration limit in m/s^2 (default from config)");
    mintime->add_option("--samples", mt.samples, "Print N evenly spaced trajectory samples")->check(CLI::NonNegativeNumber);
    mintime->add_flag("--strict", mt.strict, "Exit with status 2 when no feasible duration exists");
    mintime->add_option("--config", mt.config, "Configuration file (or set UAVSIM_CONFIG)");

    RolloutArgs ro;
    auto* rollout = app.add_subcommand("rollout", "Run one scripted episode and export its trajectory");
    rollout->add_option("--scenario", ro.scenario, "Scenario 1, 2 or 3")->check(CLI::Range(1, 3));
    rollout->add_option("--seed", ro.seed, "Episode seed");
    rollout->add_option("--policy", ro.policy, "Scripted policy")->check(CLI::IsMember({"hover", "goto", "random"}));
    rollout->add_option("--steps", ro.steps, "Stop after N steps (0 = run to termination)")
        ->check(CLI::NonNegativeNumber);
    rollout->add_option("--out", ro.out, "Trajectory CSV output path");
    rollout->add_option("--config", ro.config, "Configuration file (or set UAVSIM_CONFIG)");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Run a scripted policy over a range of seeds");
    sweep->add_option("--scenario", sw.scenario, "Scenario 1, 2 or 3")->check(CLI::Range(1, 3));
    sweep->add_option("--seeds", sw.seeds, "Seed range FIRST:END, END exclusive");
    sweep->add_option("--policy", sw.policy, "Scripted policy")->check(CLI::IsMember({"hover", "goto", "random"}));
    sweep->add_option("--jobs", sw.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--config", sw.config, "Configuration file (or set UAVSIM_CONFIG)");

    ServeArgs sv;
    auto* serve = app.add_subcommand("serve", "Serve episodes to remote trainers over TCP");
    serve->add_option("--port", sv.port, "TCP port (0 = ephemeral)");
    serve->add_option("--bind", sv.bind, "IPv4 address to bind");
    serve->add_option("--config", sv.config, "Configuration file (or set UAVSIM_CONFIG)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*mintime) return runMinTime(mt);
        if (*rollout) return runRollout(ro);
        if (*sweep) return runSweep(sw);
        if (*serve) return runServe(sv);
    } catch (const std::exception& e) {
        std::cerr << "uavsim: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
