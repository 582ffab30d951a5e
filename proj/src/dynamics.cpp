#include "uavsim/dynamics.hpp"

#include "uavsim/error.hpp"

#include <algorithm>
#include <cmath>

namespace uavsim {

void UavParams::validate() const
{
    const bool ok = mass > 0.0 && f_max0 > 0.0 && inertia > 0.0 && drag_area > 0.0 && arm > 0.0 &&
                    control_period > 0.0 && substeps >= 1 &&
                    std::isfinite(mass + f_max0 + inertia + drag_area + arm + control_period);
    if (!ok) throw InvalidArgument("UAV parameters must be positive and finite");
}

ControlInput::ControlInput(double a1_, double a2_)
    : a1(std::isnan(a1_) ? 0.0 : std::clamp(a1_, 0.0, 1.0)), a2(std::isnan(a2_) ? 0.0 : std::clamp(a2_, 0.0, 1.0))
{
}

namespace dynamics {

namespace {

double clampedAltitude(double altitude)
{
    return std::clamp(altitude, 0.0, std::nextafter(AtmosphereModel::kCeiling, 0.0));
}

UavState advance(const UavState& s, const StateDerivative& d, double h)
{
    UavState out = s;
    out.x += h * d.dx;
    out.altitude += h * d.daltitude;
    out.vx += h * d.dvx;
    out.vy += h * d.dvy;
    out.tilt += h * d.dtilt;
    out.omega += h * d.domega;
    return out;
}

}  // namespace

StateDerivative derivatives(const UavState& s, const ControlInput& u, const UavParams& p, const AtmosphereModel& atmos)
{
    // NaN states propagate to the caller's finiteness check.
    const double altitude = std::isnan(s.altitude) ? 0.0 : clampedAltitude(s.altitude);
    const double thrust = p.f_max0 * atmos.thrustScale(altitude);
    const double rho = atmos.density(altitude);

    const double thrustAccel = thrust * (u.a1 + u.a2) / p.mass;
    const double dragFactor = p.drag_area * rho * s.speed() / p.mass;

    StateDerivative d;
    d.dx = s.vx;
    d.daltitude = s.vy;
    d.dvx = thrustAccel * std::sin(-s.tilt) - dragFactor * s.vx;
    d.dvy = thrustAccel * std::cos(s.tilt) - atmos.g0 - dragFactor * s.vy;
    d.dtilt = s.omega;
    d.domega = p.arm * thrust * (u.a2 - u.a1) / p.inertia;
    return d;
}

UavState rk4Substep(const UavState& s, const ControlInput& u, const UavParams& p, const AtmosphereModel& atmos,
                    double h)
{
    const StateDerivative k1 = derivatives(s, u, p, atmos);
    const StateDerivative k2 = derivatives(advance(s, k1, h / 2.0), u, p, atmos);
    const StateDerivative k3 = derivatives(advance(s, k2, h / 2.0), u, p, atmos);
    const StateDerivative k4 = derivatives(advance(s, k3, h), u, p, atmos);

    const double w = h / 6.0;
    UavState out = s;
    out.x += w * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    out.altitude += w * (k1.daltitude + 2.0 * k2.daltitude + 2.0 * k3.daltitude + k4.daltitude);
    out.vx += w * (k1.dvx + 2.0 * k2.dvx + 2.0 * k3.dvx + k4.dvx);
    out.vy += w * (k1.dvy + 2.0 * k2.dvy + 2.0 * k3.dvy + k4.dvy);
    out.tilt += w * (k1.dtilt + 2.0 * k2.dtilt + 2.0 * k3.dtilt + k4.dtilt);
    out.omega += w * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega);
    out.time += h;
    return out;
}

UavState step(const UavState& state, const ControlInput& control, const UavParams& params,
              const AtmosphereModel& atmos, double dt, int substeps)
{
    if (!(dt > 0.0) || substeps < 1) {
        throw InvalidArgument("integration step requires dt > 0 and at least one substep");
    }
    const double h = dt / substeps;
    UavState s = state;
    for (int i = 0; i < substeps; ++i) {
        s = rk4Substep(s, control, params, atmos, h);
    }
    s.time = state.time + dt;
    s.tilt = wrapAngle(s.tilt);
    const bool finite = std::isfinite(s.x) && std::isfinite(s.altitude) && std::isfinite(s.vx) &&
                        std::isfinite(s.vy) && std::isfinite(s.tilt) && std::isfinite(s.omega);
    if (!finite) throw IntegrationFailure("UAV state diverged during integration");
    return s;
}

double angleOfAttack(const UavState& state)
{
    if (state.speed() < 1e-9) return 0.0;
    return wrapAngle(std::atan2(state.vy, state.vx) - state.tilt);
}

double hoverThrottle(const UavParams& params, const AtmosphereModel& atmos, double altitude)
{
    const double thrust = params.f_max0 * atmos.thrustScale(clampedAltitude(altitude));
    return params.mass * atmos.g0 / (2.0 * thrust);
}

}  // namespace dynamics

}  // namespace uavsim
