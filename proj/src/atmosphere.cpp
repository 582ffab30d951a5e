#include "uavsim/atmosphere.hpp"

#include "uavsim/error.hpp"

#include <cmath>
#include <string>

namespace uavsim {

void AtmosphereModel::validate() const
{
    const bool ok = rho0 > 0.0 && T0 > 0.0 && lapse_rate > 0.0 && g0 > 0.0 && gas_constant > 0.0 &&
                    std::isfinite(rho0 + T0 + lapse_rate + g0 + gas_constant);
    if (!ok) throw InvalidArgument("atmosphere constants must be positive and finite");
    if (lapse_rate * kCeiling >= T0) throw InvalidArgument("lapse rate drives temperature non-positive below the ceiling");
}

double AtmosphereModel::density(double altitude) const
{
    if (!(altitude >= 0.0 && altitude < kCeiling)) {
        throw InvalidArgument("altitude outside the troposphere model range [0, 11000): " + std::to_string(altitude));
    }
    const double exponent = g0 / (gas_constant * lapse_rate) - 1.0;
    return rho0 * std::pow(1.0 - lapse_rate * altitude / T0, exponent);
}

double AtmosphereModel::thrustScale(double altitude) const
{
    return std::cbrt(density(altitude) / rho0);
}

}  // namespace uavsim
