#include "uavsim/config.hpp"

#include "uavsim/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace uavsim {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parseReal(std::string_view text, std::string_view key)
{
    text = trim(text);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return value;
}

int parseInt(std::string_view text, std::string_view key)
{
    text = trim(text);
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return value;
}

Interval parseInterval(std::string_view text, std::string_view key)
{
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw ConfigError("interval '" + std::string(key) + "' must be written as 'lo, hi'");
    }
    return {parseReal(text.substr(0, comma), key), parseReal(text.substr(comma + 1), key)};
}

std::string formatReal(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Field {
    std::string name;
    std::function<void(EpisodeConfig&, std::string_view)> set;
    std::function<std::string(const EpisodeConfig&)> get;
};

template <class Access>
Field real(std::string name, Access access)
{
    return {name, [access, name](EpisodeConfig& c, std::string_view v) { access(c) = parseReal(v, name); },
            [access](const EpisodeConfig& c) { return formatReal(access(c)); }};
}

template <class Access>
Field integer(std::string name, Access access)
{
    return {name, [access, name](EpisodeConfig& c, std::string_view v) { access(c) = parseInt(v, name); },
            [access](const EpisodeConfig& c) { return std::to_string(access(c)); }};
}

template <class Access>
Field interval(std::string name, Access access)
{
    return {name, [access, name](EpisodeConfig& c, std::string_view v) { access(c) = parseInterval(v, name); },
            [access](const EpisodeConfig& c) {
                const Interval& i = access(c);
                return formatReal(i.lo) + ", " + formatReal(i.hi);
            }};
}

#define UAVSIM_FIELD(kind, key, member) kind(key, [](auto& c) -> auto& { return c.member; })

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = [] {
        std::vector<Field> f{
            UAVSIM_FIELD(interval, "world_x", world_x),
            UAVSIM_FIELD(interval, "world_h", world_h),
            UAVSIM_FIELD(interval, "spawn_x", spawn_x),
            UAVSIM_FIELD(interval, "spawn_h", spawn_h),
            UAVSIM_FIELD(interval, "init_speed", init_speed),
            UAVSIM_FIELD(interval, "init_tilt", init_tilt),
            UAVSIM_FIELD(interval, "init_omega", init_omega),
            UAVSIM_FIELD(interval, "target_speed", target_speed),
            UAVSIM_FIELD(real, "omega_limit", omega_limit),
            UAVSIM_FIELD(integer, "max_steps", max_steps),
            UAVSIM_FIELD(interval, "interceptor_speed", interceptor_speed),
            UAVSIM_FIELD(interval, "interceptor_accel", interceptor_accel),
            UAVSIM_FIELD(interval, "interceptor_lead", interceptor_lead),
            UAVSIM_FIELD(interval, "interceptor_deadzone", interceptor_deadzone),
            UAVSIM_FIELD(real, "spawn_radius_factor", spawn_radius_factor),
            UAVSIM_FIELD(real, "pursuit_speed_factor", pursuit_speed_factor),
            UAVSIM_FIELD(real, "interceptor_spawn_radius", interceptor_spawn_radius),
            UAVSIM_FIELD(real, "mass", uav.mass),
            UAVSIM_FIELD(real, "f_max0", uav.f_max0),
            UAVSIM_FIELD(real, "inertia", uav.inertia),
            UAVSIM_FIELD(real, "drag_area", uav.drag_area),
            UAVSIM_FIELD(real, "arm", uav.arm),
            UAVSIM_FIELD(real, "control_period", uav.control_period),
            UAVSIM_FIELD(integer, "substeps", uav.substeps),
            UAVSIM_FIELD(real, "v_max", limits.v_max),
            UAVSIM_FIELD(real, "a_max", limits.a_max),
            UAVSIM_FIELD(real, "boundary_penalty", reward.boundary_penalty),
            UAVSIM_FIELD(real, "spin_penalty", reward.spin_penalty),
            UAVSIM_FIELD(real, "intercept_penalty", reward.intercept_penalty),
            UAVSIM_FIELD(real, "intercept_bonus", reward.intercept_bonus),
            UAVSIM_FIELD(real, "success_scale", reward.success_scale),
            UAVSIM_FIELD(real, "stop_radius", reward.stop_radius),
            UAVSIM_FIELD(real, "vel_epsilon", reward.vel_epsilon),
            UAVSIM_FIELD(real, "tmin_epsilon", reward.tmin_epsilon),
            UAVSIM_FIELD(real, "rho0", atmosphere.rho0),
            UAVSIM_FIELD(real, "T0", atmosphere.T0),
            UAVSIM_FIELD(real, "lapse_rate", atmosphere.lapse_rate),
            UAVSIM_FIELD(real, "g0", atmosphere.g0),
            UAVSIM_FIELD(real, "gas_constant", atmosphere.gas_constant),
        };
        f.push_back({"pursuit_direction",
                     [](EpisodeConfig& c, std::string_view v) {
                         v = trim(v);
                         if (v == "closing") c.pursuit_direction = PursuitDirection::Closing;
                         else if (v == "opening") c.pursuit_direction = PursuitDirection::Opening;
                         else throw ConfigError("pursuit_direction must be 'closing' or 'opening'");
                     },
                     [](const EpisodeConfig& c) {
                         return std::string(c.pursuit_direction == PursuitDirection::Closing ? "closing" : "opening");
                     }});
        f.push_back({"final_reward_denominator",
                     [](EpisodeConfig& c, std::string_view v) {
                         v = trim(v);
                         if (v == "difference") c.reward.final_reward_denominator = FinalRewardDenominator::Difference;
                         else if (v == "sum") c.reward.final_reward_denominator = FinalRewardDenominator::Sum;
                         else throw ConfigError("final_reward_denominator must be 'difference' or 'sum'");
                     },
                     [](const EpisodeConfig& c) {
                         return std::string(c.reward.final_reward_denominator == FinalRewardDenominator::Difference
                                                ? "difference"
                                                : "sum");
                     }});
        return f;
    }();
    return table;
}

#undef UAVSIM_FIELD

bool nonEmpty(const Interval& i) { return i.lo <= i.hi; }
bool inside(const Interval& inner, const Interval& outer) { return inner.lo >= outer.lo && inner.hi <= outer.hi; }

}  // namespace

void EpisodeConfig::validate() const
{
    for (const Interval* i : {&world_x, &world_h, &spawn_x, &spawn_h, &init_speed, &init_tilt, &init_omega,
                              &target_speed, &interceptor_speed, &interceptor_accel, &interceptor_lead,
                              &interceptor_deadzone}) {
        if (!nonEmpty(*i)) throw ConfigError("interval bounds must satisfy lo <= hi");
    }
    if (!inside(spawn_x, world_x) || !inside(spawn_h, world_h)) {
        throw ConfigError("spawn region must lie inside the world region");
    }
    if (world_h.lo < 0.0 || world_h.hi >= AtmosphereModel::kCeiling) {
        throw ConfigError("world altitude range must lie inside [0, 11000)");
    }
    if (max_steps < 1) throw ConfigError("max_steps must be at least 1");
    if (!(omega_limit > 0.0)) throw ConfigError("omega_limit must be positive");
    if (init_speed.lo < 0.0 || target_speed.lo < 0.0) throw ConfigError("speed intervals must be non-negative");
    if (interceptor_speed.lo <= 0.0) throw ConfigError("interceptor speed must be positive");
    if (interceptor_accel.lo < 0.0 || interceptor_deadzone.lo < 0.0) {
        throw ConfigError("interceptor acceleration and deadzone must be non-negative");
    }
    if (interceptor_lead.lo < 0.0 || interceptor_lead.hi > 1.0) throw ConfigError("interceptor_lead must lie in [0, 1]");
    if (!(spawn_radius_factor > 0.0) || !(pursuit_speed_factor >= 0.0) || !(interceptor_spawn_radius >= 0.0)) {
        throw ConfigError("spawn and pursuit factors must be positive");
    }
    if (!(limits.v_max > 0.0) || !(limits.a_max > 0.0)) throw ConfigError("v_max and a_max must be positive");
    try {
        uav.validate();
        reward.validate();
        atmosphere.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

void setConfigValue(EpisodeConfig& cfg, std::string_view key, std::string_view value)
{
    key = trim(key);
    for (const Field& f : fields()) {
        if (f.name == key) {
            f.set(cfg, value);
            return;
        }
    }
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

EpisodeConfig parseConfig(std::string_view text, EpisodeConfig cfg)
{
    int lineNo = 0;
    while (!text.empty()) {
        ++lineNo;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(lineNo) + ": expected 'key = value'");
        }
        setConfigValue(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
}

EpisodeConfig loadConfig(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open configuration file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parseConfig(buffer.str());
}

std::string formatConfig(const EpisodeConfig& cfg)
{
    std::string out;
    for (const Field& f : fields()) {
        out += f.name + " = " + f.get(cfg) + "\n";
    }
    return out;
}

std::vector<std::string> configKeys()
{
    std::vector<std::string> keys;
    for (const Field& f : fields()) keys.push_back(f.name);
    return keys;
}

}  // namespace uavsim
