#ifndef OPTOENT_PARAMS_HPP
#define OPTOENT_PARAMS_HPP

#include <cmath>
#include <string>
#include <variant>

#include "optoent/constants.hpp"
#include "optoent/error.hpp"

namespace optoent {

// Cavity 1 at -delta and cavity 2 at an effective detuning of +delta, imposed
// directly. The mirror displacement is then a consequence, not an unknown.
struct EffectiveDetuning {
  double delta = 0.0;  // rad/s
};

// Bare detunings. The effective cavity-2 detuning is found self-consistently.
struct BareDetuning {
  double delta1 = 0.0;  // rad/s
  double delta2 = 0.0;  // rad/s
};

using DetuningSpec = std::variant<EffectiveDetuning, BareDetuning>;

// Raw experimental inputs, SI units throughout. Rates and frequencies are
// angular (rad/s).
struct PhysicalParams {
  double cavity_length = 1e-3;                     // L, m
  double cavity_decay = constants::pi * 1e7;       // kappa, both cavities
  double drive_wavelength = 810e-9;                // lambda, m
  double drive_power = 35e-3;                      // P, W
  double mech_frequency = 2 * constants::pi * 1e7; // omega_m
  double mech_mass = 5e-12;                        // m, kg
  double mech_damping = 200 * constants::pi;       // gamma_m
  double atom_decay = constants::pi * 1e7;         // gamma_a
  double atom_coupling = 1.2 * constants::pi * 1e7;  // G_a = g sqrt(N)
  double cavity_coupling = 2 * constants::pi * 1e7;  // J
  double atom_detuning = -2 * constants::pi * 1e7;   // Delta_a
  double temperature = 0.4;                          // T, K
  double atom_number = 1e7;                          // N, diagnostics only
  DetuningSpec detuning = EffectiveDetuning{2 * constants::pi * 1e7};

  // Set when Delta_a was not given explicitly and the -omega_m default
  // (atoms on the Stokes sideband) was used.
  bool atom_detuning_assumed = true;
};

// Reference parameters: Delta = J = omega_m, Delta_a = -omega_m, T = 400 mK.
inline PhysicalParams reference_params() { return PhysicalParams{}; }

struct DerivedConstants {
  double cavity_frequency = 0.0;    // omega_c = omega_l = 2 pi c / lambda
  double radiation_coupling = 0.0;  // G0
  double drive_amplitude = 0.0;     // Omega_l
  double thermal_occupation = 0.0;  // nbar
  double quality_factor = 0.0;      // Q = omega_m / gamma_m
  bool markovian_warning = false;   // Q <= 100
};

inline double cavity1_detuning(const PhysicalParams& p) {
  if (const auto* eff = std::get_if<EffectiveDetuning>(&p.detuning)) return -eff->delta;
  return std::get<BareDetuning>(p.detuning).delta1;
}

inline bool is_effective_mode(const PhysicalParams& p) {
  return std::holds_alternative<EffectiveDetuning>(p.detuning);
}

// Bose-Einstein occupation of a mode of angular frequency omega at T.
inline double thermal_occupation(double omega, double temperature) {
  if (temperature <= 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

inline bool positive(double x) { return std::isfinite(x) && x > 0.0; }
inline bool nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace detail

inline void validate(const PhysicalParams& p) {
  using detail::nonnegative;
  using detail::positive;
  using detail::require;
  require(positive(p.cavity_length), "cavity length must be positive");
  require(positive(p.cavity_decay), "cavity decay rate must be positive");
  require(positive(p.drive_wavelength), "drive wavelength must be positive");
  require(nonnegative(p.drive_power), "drive power must be nonnegative");
  require(positive(p.mech_frequency), "mechanical frequency must be positive");
  require(positive(p.mech_mass), "mechanical mass must be positive");
  require(positive(p.mech_damping), "mechanical damping must be positive");
  require(positive(p.atom_decay), "atomic decay rate must be positive");
  require(nonnegative(p.atom_coupling), "atomic coupling must be nonnegative");
  require(nonnegative(p.cavity_coupling), "cavity coupling J must be nonnegative");
  require(std::isfinite(p.atom_detuning), "atomic detuning must be finite");
  require(nonnegative(p.temperature), "temperature must be nonnegative");
  require(positive(p.atom_number), "atom number must be positive");
  if (const auto* eff = std::get_if<EffectiveDetuning>(&p.detuning)) {
    require(std::isfinite(eff->delta), "detuning must be finite");
  } else {
    const auto& bare = std::get<BareDetuning>(p.detuning);
    require(std::isfinite(bare.delta1) && std::isfinite(bare.delta2), "detunings must be finite");
  }
}

inline DerivedConstants derive_constants(const PhysicalParams& p) {
  validate(p);
  using namespace constants;
  DerivedConstants d;
  d.cavity_frequency = 2.0 * pi * speed_of_light / p.drive_wavelength;
  d.radiation_coupling =
      (d.cavity_frequency / p.cavity_length) * std::sqrt(hbar / (p.mech_mass * p.mech_frequency));
  d.drive_amplitude = std::sqrt(2.0 * p.drive_power * p.cavity_decay / (hbar * d.cavity_frequency));
  d.thermal_occupation = thermal_occupation(p.mech_frequency, p.temperature);
  d.quality_factor = p.mech_frequency / p.mech_damping;
  d.markovian_warning = d.quality_factor <= 100.0;
  return d;
}

}  // namespace optoent

#endif  // OPTOENT_PARAMS_HPP
