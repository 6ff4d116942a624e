#ifndef OPTOENT_CONSTANTS_HPP
#define OPTOENT_CONSTANTS_HPP

#include <numbers>

namespace optoent::constants {

// CODATA 2018 exact / recommended values, SI units.
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double boltzmann = 1.380649e-23;      // J / K
inline constexpr double speed_of_light = 299792458.0;  // m / s

inline constexpr double pi = std::numbers::pi;

}  // namespace optoent::constants

#endif  // OPTOENT_CONSTANTS_HPP
