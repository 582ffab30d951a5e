#pragma once

#include "uavsim/environment.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace uavsim {

struct UavRow {
    UavState state;
    ControlInput control;
    double tmin{0.0};
    double reward{0.0};
};

// One control step of an episode, as written to the trajectory export.
struct TrajectoryRow {
    int step{0};
    UavRow evader;
    std::optional<InterceptorState> ideal;  // scenario 2
    std::optional<UavRow> pursuer;          // scenario 3
};

// Comma-separated export, one row per control step after reset:
//   step,t,x,H,vx,vy,beta,omega,a1,a2,tmin,reward
// followed by mx,mH,m_heading in scenario 2 or
//   ix,iH,ivx,ivy,ibeta,iomega,ia1,ia2,itmin,ireward in scenario 3.
// Reals are printed with 17 significant digits.
class TrajectoryLog {
public:
    explicit TrajectoryLog(Scenario scenario) : scenario_(scenario) {}

    void record(const EpisodeState& state, std::span<const ControlInput> actions, const StepOutcome& outcome);
    void append(TrajectoryRow row) { rows_.push_back(std::move(row)); }

    [[nodiscard]] const std::vector<TrajectoryRow>& rows() const { return rows_; }
    [[nodiscard]] std::string header() const;
    [[nodiscard]] std::string formatRow(const TrajectoryRow& row) const;

    void write(std::ostream& out) const;
    [[nodiscard]] std::string str() const;

private:
    Scenario scenario_;
    std::vector<TrajectoryRow> rows_;
};

}  // namespace uavsim
