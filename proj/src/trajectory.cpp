#include "uavsim/trajectory.hpp"

#include <cstdio>
#include <sstream>

namespace uavsim {

namespace {

void appendReal(std::string& out, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    out += buf;
}

void appendUav(std::string& out, const UavRow& r, bool withTime)
{
    if (withTime) appendReal(out, r.state.time);
    for (double v : {r.state.x, r.state.altitude, r.state.vx, r.state.vy, r.state.tilt, r.state.omega, r.control.a1,
                     r.control.a2, r.tmin, r.reward}) {
        appendReal(out, v);
    }
}

}  // namespace

void TrajectoryLog::record(const EpisodeState& state, std::span<const ControlInput> actions,
                           const StepOutcome& outcome)
{
    TrajectoryRow row;
    row.step = state.step_index;
    row.evader = {state.evader, actions[0], outcome.agents[0].tmin, outcome.agents[0].reward};
    if (state.ideal) row.ideal = state.ideal->state;
    if (state.pursuer) row.pursuer = UavRow{*state.pursuer, actions[1], outcome.agents[1].tmin, outcome.agents[1].reward};
    rows_.push_back(row);
}

std::string TrajectoryLog::header() const
{
    std::string h = "step,t,x,H,vx,vy,beta,omega,a1,a2,tmin,reward";
    if (scenario_ == Scenario::EvadeInterceptor) h += ",mx,mH,m_heading";
    if (scenario_ == Scenario::UavDuel) h += ",ix,iH,ivx,ivy,ibeta,iomega,ia1,ia2,itmin,ireward";
    return h;
}

std::string TrajectoryLog::formatRow(const TrajectoryRow& row) const
{
    std::string line = std::to_string(row.step);
    appendUav(line, row.evader, true);
    if (scenario_ == Scenario::EvadeInterceptor && row.ideal) {
        for (double v : {row.ideal->x, row.ideal->altitude, row.ideal->heading}) appendReal(line, v);
    }
    if (scenario_ == Scenario::UavDuel && row.pursuer) appendUav(line, *row.pursuer, false);
    return line;
}

void TrajectoryLog::write(std::ostream& out) const
{
    out << header() << '\n';
    for (const TrajectoryRow& row : rows_) out << formatRow(row) << '\n';
}

std::string TrajectoryLog::str() const
{
    std::ostringstream out;
    write(out);
    return out.str();
}

}  // namespace uavsim
