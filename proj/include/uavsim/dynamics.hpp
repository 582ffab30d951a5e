#pragma once

#include "uavsim/atmosphere.hpp"
#include "uavsim/vec2.hpp"

namespace uavsim {

// Planar two-rotor UAV parameters.
struct UavParams {
    double mass{5.0};             // kg
    double f_max0{42.0};          // N, per-rotor thrust at sea level
    double inertia{1.25};         // kg m^2
    double drag_area{0.2};        // m^2, drag coefficient times reference area
    double arm{0.5};              // m
    double control_period{0.05};  // s
    int substeps{5};              // RK4 steps per control period

    void validate() const;
};

struct UavState {
    double x{0.0};         // m
    double altitude{0.0};  // m
    double vx{0.0};        // m/s
    double vy{0.0};        // m/s
    double tilt{0.0};      // rad, inclination of the body axis, (-pi, pi]
    double omega{0.0};     // rad/s
    double time{0.0};      // s

    [[nodiscard]] Vec2 position() const { return {x, altitude}; }
    [[nodiscard]] Vec2 velocity() const { return {vx, vy}; }
    [[nodiscard]] double speed() const { return std::hypot(vx, vy); }
    // Unit vector along the body axis.
    [[nodiscard]] Vec2 axis() const { return {std::cos(tilt), std::sin(tilt)}; }

    friend bool operator==(const UavState&, const UavState&) = default;
};

// Relative rotor thrusts. Values are clamped into [0, 1] on construction.
struct ControlInput {
    double a1{0.0};
    double a2{0.0};

    ControlInput() = default;
    ControlInput(double a1_, double a2_);
};

struct StateDerivative {
    double dx{0.0};
    double daltitude{0.0};
    double dvx{0.0};
    double dvy{0.0};
    double dtilt{0.0};
    double domega{0.0};
};

namespace dynamics {

// Right-hand side of the rigid-body equations of motion:
//   dvx/dt = F(H)(a1+a2)/m * sin(-tilt) - k rho |v| vx / m
//   dvy/dt = F(H)(a1+a2)/m * cos(tilt)  - g - k rho |v| vy / m
//   domega/dt = arm F(H)(a2-a1) / I
// with k the drag area. Density is looked up at the altitude clamped into the
// atmosphere model range, so RK4 stages that dip below ground stay defined.
[[nodiscard]] StateDerivative derivatives(const UavState& state, const ControlInput& control, const UavParams& params,
                                          const AtmosphereModel& atmos);

// One classical RK4 step of length h (no angle wrapping, no finiteness check).
[[nodiscard]] UavState rk4Substep(const UavState& state, const ControlInput& control, const UavParams& params,
                                  const AtmosphereModel& atmos, double h);

// Advances the state by dt with the control held constant, using `substeps`
// RK4 steps. Throws IntegrationFailure if the result is not finite.
[[nodiscard]] UavState step(const UavState& state, const ControlInput& control, const UavParams& params,
                            const AtmosphereModel& atmos, double dt, int substeps);

// Angle from the body axis to the velocity vector; zero below 1e-9 m/s.
[[nodiscard]] double angleOfAttack(const UavState& state);

// Rotor command pair that balances gravity at the given altitude.
[[nodiscard]] double hoverThrottle(const UavParams& params, const AtmosphereModel& atmos, double altitude);

}  // namespace dynamics

}  // namespace uavsim
