#pragma once

namespace uavsim {

// International Standard Atmosphere, troposphere layer only.
struct AtmosphereModel {
    double rho0{1.225};          // kg/m^3
    double T0{288.15};           // K
    double lapse_rate{0.0065};   // K/m
    double g0{9.80665};          // m/s^2, also the gravity used by the dynamics
    double gas_constant{287.05}; // J/(kg K)

    static constexpr double kCeiling = 11000.0;  // m

    void validate() const;

    // Air density at `altitude` metres. Throws InvalidArgument outside [0, kCeiling).
    [[nodiscard]] double density(double altitude) const;

    // F_max(H) / F_max(0) = cbrt(rho(H) / rho(0)).
    [[nodiscard]] double thrustScale(double altitude) const;
};

}  // namespace uavsim
