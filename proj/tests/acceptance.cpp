// Acceptance checks, one PASS/FAIL line per criterion.

#include "support/line_client.hpp"
#include "support/oracles.hpp"
#include "uavsim/bezier.hpp"
#include "uavsim/dynamics.hpp"
#include "uavsim/environment.hpp"
#include "uavsim/interceptor.hpp"
#include "uavsim/policies.hpp"
#include "uavsim/server.hpp"
#include "uavsim/trajectory.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace uavsim;
using nlohmann::json;

namespace {

struct Verdict {
    bool pass{true};
    std::string detail;
};

double relErr(const Vec2& got, const Vec2& want)
{
    return (got - want).norm() / std::max(want.norm(), 1.0);
}

bezier::BoundaryConditions toBc(const oracle::Boundary& b)
{
    return {b.a, b.va, b.d, b.vd};
}

std::string fmt(const char* format, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

Verdict boundaryConditions()
{
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> T(0.1, 200.0);
    double worstVel = 0.0;
    int exactMisses = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto b = oracle::randomBoundary(rng);
        const auto c = bezier::buildCurve(toBc(b), T(rng));
        if (!(bezier::position(c, 0.0) == b.a) || !(bezier::position(c, 1.0) == b.d)) ++exactMisses;
        worstVel = std::max({worstVel, relErr(bezier::velocity(c, 0.0), b.va), relErr(bezier::velocity(c, 1.0), b.vd)});
    }
    return {exactMisses == 0 && worstVel <= 1e-9,
            "position misses " + std::to_string(exactMisses) + ", worst velocity rel err " + fmt("%.2e", worstVel)};
}

Verdict derivativeConsistency()
{
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> T(1.0, 100.0), U(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto b = oracle::randomBoundary(rng);
        const double dur = T(rng);
        const auto c = bezier::buildCurve(toBc(b), dur);
        const double tau = 0.01 + 0.98 * U(rng);
        const double h = 1e-4;
        // Central differences in tau, converted to time derivatives.
        const Vec2 fdV = (bezier::position(c, tau + h) - bezier::position(c, tau - h)) / (2.0 * h * dur);
        const Vec2 fdA = (bezier::velocity(c, tau + h) - bezier::velocity(c, tau - h)) / (2.0 * h * dur);
        const Vec2 v = bezier::velocity(c, tau), a = bezier::acceleration(c, tau);
        const double scaleV = std::max(v.norm(), (b.d - b.a).norm() / dur);
        const double scaleA = std::max(a.norm(), scaleV / dur);
        worst = std::max({worst, (fdV - v).norm() / scaleV, (fdA - a).norm() / scaleA});
    }
    return {worst <= 1e-5, "worst rel err " + fmt("%.2e", worst)};
}

Verdict minTimeClosedForm()
{
    const bezier::KinematicLimits lim{35.0, 16.8};
    double worst = 0.0;
    for (double d : {10.0, 100.0, 1000.0}) {
        const double expected = std::max(1.5 * d / lim.v_max, std::sqrt(6.0 * d / lim.a_max));
        const auto r = bezier::minTime({{0, 0}, {0, 0}, {d, 0}, {0, 0}}, lim);
        worst = std::max(worst, std::abs(r.t_min - expected) / expected);
    }
    std::mt19937_64 rng(103);
    int bracketFailures = 0;
    for (int i = 0; i < 500; ++i) {
        const auto bc = toBc(oracle::randomBoundary(rng, 2000.0, 30.0));
        const auto r = bezier::minTime(bc, lim);
        if (!r.feasible) continue;
        const bool lower = !bezier::isFeasible(bc, r.t_min * (1.0 - 1e-4), lim);
        if (!bezier::isFeasible(bc, r.t_min, lim) || !lower) ++bracketFailures;
    }
    return {worst <= 1e-3 && bracketFailures == 0,
            "closed-form rel err " + fmt("%.2e", worst) + ", bracketing failures " + std::to_string(bracketFailures)};
}

Verdict dynamicsAnchors()
{
    const UavParams p;
    const AtmosphereModel atm;
    const UavState rest{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const StateDerivative spin = dynamics::derivatives(rest, {0.0, 1.0}, p, atm);
    const StateDerivative full = dynamics::derivatives(rest, {1.0, 1.0}, p, atm);
    const double peak = std::hypot(full.dvx, full.dvy + atm.g0);

    const double hoverA = dynamics::hoverThrottle(p, atm, 1000.0);
    UavState s{0.0, 1000.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 100; ++i) s = dynamics::step(s, {hoverA, hoverA}, p, atm, p.control_period, p.substeps);
    const double hoverDrift = std::abs(s.altitude - 1000.0);

    // Gravity is the only force in the closed form, so the drag term is switched off.
    UavParams vacuum = p;
    vacuum.drag_area = 0.0;
    const UavState fall = dynamics::step({0.0, 1000.0, 0.0, 0.0, 0.0, 0.0, 0.0}, {0.0, 0.0}, vacuum, atm, 0.05, 5);
    const double fallErr = std::max(std::abs(fall.vy + atm.g0 * 0.05), std::abs(fall.altitude - 1000.0 + 0.5 * atm.g0 * 0.0025));

    const bool ok = std::abs(spin.domega - 16.8) < 1e-12 && std::abs(peak - 16.8) < 1e-12 && hoverDrift < 1e-4 &&
                    fallErr < 1e-4;
    return {ok, "domega " + fmt("%.12g", spin.domega) + ", peak thrust accel " + fmt("%.12g", peak) + ", hover |dH| " +
                    fmt("%.2e", hoverDrift) + ", free-fall err " + fmt("%.2e", fallErr)};
}

Verdict rk4Order()
{
    const UavParams p;
    const AtmosphereModel atm;
    const UavState s0{0.0, 1000.0, 5.0, -2.0, 0.1, 0.0, 0.0};
    const ControlInput u{0.45, 0.75};
    const auto run = [&](int n) { return dynamics::step(s0, u, p, atm, 1.0, n); };
    const UavState ref = run(2000);
    const auto err = [&](const UavState& s) {
        return std::hypot(s.x - ref.x, s.altitude - ref.altitude, s.tilt - ref.tilt) +
               std::hypot(s.vx - ref.vx, s.vy - ref.vy, s.omega - ref.omega);
    };
    const double order = std::log2(err(run(10)) / err(run(20)));
    return {order >= 3.5, "measured order " + fmt("%.3f", order)};
}

Verdict telescoping()
{
    const EpisodeConfig cfg;
    const policies::PolicyKind kinds[] = {policies::PolicyKind::Goto, policies::PolicyKind::Random,
                                          policies::PolicyKind::Hover};
    double worst = 0.0;
    int episodes = 0;
    for (int i = 0; i < 100; ++i) {
        const Scenario sc = scenarioFromInt(i % 3 + 1);
        const auto seed = static_cast<std::uint64_t>(1000 + i);
        const auto kind = kinds[(i / 3) % 3];
        EpisodeState s = env::reset(sc, seed, cfg).state;
        std::vector<policies::ScriptedAgent> agents;
        for (AgentRole r : agentRoles(sc)) agents.emplace_back(kind, seed, r);
        std::array<double, 2> sum{};
        StepOutcome out;
        while (!s.done()) {
            std::vector<ControlInput> u;
            for (auto& a : agents) u.push_back(a.act(s, cfg));
            out = env::step(s, u, cfg);
            for (std::size_t k = 0; k < out.agents.size(); ++k) sum[k] += out.agents[k].shaped_reward;
        }
        for (std::size_t k = 0; k < out.agents.size(); ++k) {
            worst = std::max(worst, std::abs(sum[k] - (s.initial_tmin[k] - out.agents[k].tmin)));
        }
        ++episodes;
    }
    return {worst <= 1e-9, std::to_string(episodes) + " episodes, worst residual " + fmt("%.2e", worst)};
}

Verdict interceptorInvariants()
{
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double speedErr = 0.0, rateExcess = 0.0;
    int monotoneFailures = 0;
    for (int trial = 0; trial < 200; ++trial) {
        InterceptorParams p{20.0 + 20.0 * U(rng), 20.0 + 20.0 * U(rng), U(rng), 0.035 + 0.14 * U(rng)};
        InterceptorState m{-2000.0 + 4000.0 * U(rng), 3000.0 * U(rng), kPi * (2.0 * U(rng) - 1.0)};
        Vec2 target{-2000.0 + 4000.0 * U(rng), 3000.0 * U(rng)};
        const Vec2 targetVel{10.0 * (U(rng) - 0.5), 10.0 * (U(rng) - 0.5)};
        for (int k = 0; k < 200; ++k) {
            const Vec2 aim = interceptor::leadPoint(target, targetVel, m.position(), p);
            const InterceptorState next = interceptor::step(m, aim, p, 0.05);
            const double rate = interceptor::turnRate(m, aim, p);
            const double chord = (next.position() - m.position()).norm();
            const double arc = rate == 0.0 ? chord : chord * (rate * 0.05 / 2.0) / std::sin(rate * 0.05 / 2.0);
            speedErr = std::max(speedErr, std::abs(arc / 0.05 - p.speed) / p.speed);
            rateExcess = std::max(rateExcess, std::abs(wrapAngle(next.heading - m.heading)) / 0.05 -
                                                  p.lateral_accel / p.speed);
            m = next;
            target += 0.05 * targetVel;
        }

        // Pure pursuit of a fixed point with no deadzone.
        p.lead_fraction = 0.0;
        p.deadzone = 0.0;
        InterceptorState q{0.0, 1500.0, kPi * (2.0 * U(rng) - 1.0)};
        const Vec2 fixed{-2000.0 + 4000.0 * U(rng), 3000.0 * U(rng)};
        const double increment = p.lateral_accel / p.speed * 0.05;
        double prev = std::abs(signedAngle(q.direction(), fixed - q.position()));
        for (int k = 0; k < 400 && prev > increment; ++k) {
            q = interceptor::step(q, fixed, p, 0.05);
            const double e = std::abs(signedAngle(q.direction(), fixed - q.position()));
            if (e > prev + 1e-12) ++monotoneFailures;
            prev = e;
        }
    }
    const bool ok = speedErr <= 1e-12 && rateExcess <= 1e-12 && monotoneFailures == 0;
    return {ok, "speed rel err " + fmt("%.2e", speedErr) + ", turn-rate excess " + fmt("%.2e", rateExcess) +
                    ", heading-error increases " + std::to_string(monotoneFailures)};
}

std::vector<std::vector<ControlInput>> actionTape(Scenario sc, std::uint64_t seed, int steps)
{
    StreamRng rng(seed, 999);
    std::vector<std::vector<ControlInput>> tape;
    for (int i = 0; i < steps; ++i) {
        std::vector<ControlInput> u;
        for (int k = 0; k < agentCount(sc); ++k) u.emplace_back(0.35 + 0.4 * rng.uniform01(), 0.35 + 0.4 * rng.uniform01());
        tape.push_back(u);
    }
    return tape;
}

std::string exportInProcess(Scenario sc, std::uint64_t seed, const std::vector<std::vector<ControlInput>>& tape,
                            const EpisodeConfig& cfg)
{
    EpisodeState s = env::reset(sc, seed, cfg).state;
    TrajectoryLog log(sc);
    for (const auto& u : tape) {
        if (s.done()) break;
        const StepOutcome out = env::step(s, u, cfg);
        log.record(s, u, out);
    }
    return log.str();
}

UavRow rowFromReply(const json& reply, const std::string& name)
{
    const auto st = reply["info"]["state"][name].get<std::vector<double>>();
    const auto act = reply["info"]["applied_actions"][name].get<std::vector<double>>();
    UavRow row;
    row.state = {st[1], st[2], st[3], st[4], st[5], st[6], st[0]};
    row.control = {act[0], act[1]};
    row.tmin = reply["info"]["tmin"][name].get<double>();
    row.reward = reply["rewards"][name].get<double>();
    return row;
}

std::string exportOverTcp(std::uint16_t port, Scenario sc, std::uint64_t seed,
                          const std::vector<std::vector<ControlInput>>& tape)
{
    testing::LineClient client(port);
    const json r = json::parse(client.request(json{{"cmd", "reset"}, {"scenario", static_cast<int>(sc)}, {"seed", seed}}.dump()));
    if (r["ok"] != true) return "reset failed";
    TrajectoryLog log(sc);
    for (const auto& u : tape) {
        json actions = json::object();
        actions["evader"] = {u[0].a1, u[0].a2};
        if (u.size() > 1) actions["interceptor"] = {u[1].a1, u[1].a2};
        const json reply = json::parse(client.request(json{{"cmd", "step"}, {"actions", actions}}.dump()));
        if (reply["ok"] != true) return "step failed";
        TrajectoryRow row;
        row.step = reply["step"].get<int>();
        row.evader = rowFromReply(reply, "evader");
        if (reply["info"].contains("ideal")) {
            const auto m = reply["info"]["ideal"].get<std::vector<double>>();
            row.ideal = InterceptorState{m[0], m[1], m[2]};
        }
        if (reply["info"]["state"].contains("interceptor")) row.pursuer = rowFromReply(reply, "interceptor");
        log.append(row);
        if (reply["done"] == true) break;
    }
    client.request(R"({"cmd":"close"})");
    return log.str();
}

Verdict determinism()
{
    const EpisodeConfig cfg;
    EnvServer server(cfg);
    server.start("127.0.0.1", 0);
    int runs = 0, mismatches = 0;
    for (int sc = 1; sc <= 3; ++sc) {
        for (std::uint64_t seed : {3ULL, 17ULL}) {
            const Scenario scenario = scenarioFromInt(sc);
            const auto tape = actionTape(scenario, seed, 300);
            const std::string a = exportInProcess(scenario, seed, tape, cfg);
            const std::string b = exportInProcess(scenario, seed, tape, cfg);
            const std::string c = exportOverTcp(server.port(), scenario, seed, tape);
            if (a != b || a != c) ++mismatches;
            ++runs;
        }
    }
    server.stop();
    return {mismatches == 0, std::to_string(runs) + " tapes, mismatching exports " + std::to_string(mismatches)};
}

Verdict spawnContracts()
{
    const EpisodeConfig cfg;
    int radiusViolations = 0, nonzeroTails = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const EpisodeState s = env::reset(Scenario::EvadeInterceptor, seed, cfg).state;
        const double d = (s.ideal->state.position() - s.evader.position()).norm();
        if (d > cfg.spawn_radius_factor * s.initial_tmin[0] * s.ideal->params.speed) ++radiusViolations;
        const Observation o = env::reset(Scenario::FlightToPoint, seed, cfg).observations[0];
        if (o[9] != 0.0 || o[10] != 0.0 || o[11] != 0.0 || o[12] != 0.0) ++nonzeroTails;
    }

    // Constructed terminal events.
    const auto base = [](Scenario sc) {
        EpisodeState s;
        s.scenario = sc;
        s.evader = UavState{0.0, 1000.0, 0.0, 0.0, 0.0, 0.0, 0.0};
        s.destination = {2000.0, 1000.0};
        return s;
    };
    const double h = dynamics::hoverThrottle(cfg.uav, cfg.atmosphere, 1000.0);
    const std::vector<ControlInput> one{{h, h}}, two{{h, h}, {h, h}};
    std::vector<std::pair<std::string, bool>> events;
    const auto expect = [&](const std::string& name, EpisodeState s, const std::vector<ControlInput>& u,
                            EpisodeStatus status, std::vector<double> terminal) {
        const StepOutcome out = env::step(s, u, cfg);
        bool ok = out.status == status && out.agents.size() == terminal.size();
        for (std::size_t k = 0; ok && k < terminal.size(); ++k) {
            ok = out.agents[k].terminal_reward == terminal[k] &&
                 out.agents[k].reward == out.agents[k].shaped_reward + terminal[k];
        }
        events.emplace_back(name, ok);
    };
    {
        EpisodeState s = base(Scenario::FlightToPoint);
        s.evader.x = 4999.9;
        s.evader.vx = 30.0;
        expect("boundary", s, one, EpisodeStatus::OutOfBounds, {-100.0});
    }
    {
        EpisodeState s = base(Scenario::FlightToPoint);
        s.evader.omega = 20.5;
        expect("overspin", s, one, EpisodeStatus::Overspin, {-100.0});
    }
    {
        EpisodeState s = base(Scenario::EvadeInterceptor);
        s.ideal = IdealInterceptor{{-9.0, 1000.0, 0.0}, {30.0, 30.0, 0.0, 0.1}};
        expect("intercepted", s, one, EpisodeStatus::Intercepted, {-100.0});
    }
    {
        EpisodeState s = base(Scenario::UavDuel);
        s.pursuer = UavState{9.0, 1000.0, 0.0, 0.0, 0.0, 0.0, 0.0};
        expect("duel intercept", s, two, EpisodeStatus::Intercepted, {-100.0, 100.0});
    }
    {
        EpisodeState s = base(Scenario::UavDuel);
        s.pursuer = UavState{500.0, 1000.0, 0.0, 0.0, 0.0, 25.0, 0.0};
        expect("duel overspin", s, two, EpisodeStatus::Overspin, {0.0, -100.0});
    }
    int eventFailures = 0;
    std::string failed;
    for (const auto& [name, ok] : events) {
        if (!ok) {
            ++eventFailures;
            failed += " " + name;
        }
    }
    return {radiusViolations == 0 && nonzeroTails == 0 && eventFailures == 0,
            "radius violations " + std::to_string(radiusViolations) + ", non-zero opponent blocks " +
                std::to_string(nonzeroTails) + ", penalty mismatches " + std::to_string(eventFailures) + failed};
}

Verdict baselineCompetence()
{
    const EpisodeConfig cfg;
    int successes = 0, negativeOnSuccess = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        EpisodeState s = env::reset(Scenario::FlightToPoint, seed, cfg).state;
        StreamRng rng(seed, 500);
        const double offset = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * rng.uniform(50.0, 500.0);
        double x = s.evader.x + offset;
        if (!cfg.world_x.contains(x)) x = s.evader.x - offset;
        env::retarget(s, {x, s.evader.altitude}, s.destination_vel, cfg);

        policies::ScriptedAgent agent(policies::PolicyKind::Goto, seed, AgentRole::Evader);
        double shaped = 0.0;
        while (!s.done()) {
            const ControlInput u = agent.act(s, cfg);
            shaped += env::step(s, std::span(&u, 1), cfg).agents[0].shaped_reward;
        }
        if (s.status == EpisodeStatus::Success) {
            ++successes;
            if (!(shaped > 0.0)) ++negativeOnSuccess;
        }
    }
    return {successes >= 25 && negativeOnSuccess == 0,
            "successes " + std::to_string(successes) + "/50, non-positive shaped return on success " +
                std::to_string(negativeOnSuccess)};
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"bezier boundary conditions", boundaryConditions},
        {"derivative consistency", derivativeConsistency},
        {"min-time closed form and bracketing", minTimeClosedForm},
        {"dynamics anchors", dynamicsAnchors},
        {"RK4 convergence order", rk4Order},
        {"telescoping reward identity", telescoping},
        {"interceptor invariants", interceptorInvariants},
        {"environment determinism", determinism},
        {"scenario spawn contracts", spawnContracts},
        {"baseline competence", baselineCompetence},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!v.pass) ++failures;
        std::printf("criterion %2zu %s  %s: %s (%.2f s)\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    v.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
