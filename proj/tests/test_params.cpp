#include <cmath>

#include <gtest/gtest.h>

#include "optoent/params.hpp"

using namespace optoent;

namespace {

// Independent long-double evaluations of the closed forms.
long double omega_c_ref(long double lambda) {
  return 2.0L * 3.14159265358979323846264338327950288L * 299792458.0L / lambda;
}

long double nbar_ref(long double omega, long double T) {
  return 1.0L / (std::exp(1.054571817e-34L * omega / (1.380649e-23L * T)) - 1.0L);
}

}  // namespace

TEST(DeriveConstants, CavityFrequencyFromWavelength) {
  const auto d = derive_constants(reference_params());
  const double ref = static_cast<double>(omega_c_ref(810e-9L));
  EXPECT_NEAR(d.cavity_frequency, ref, 1e-12 * ref);
  // 2 pi c / 810 nm.
  EXPECT_NEAR(d.cavity_frequency, 2.32550e15, 1e-5 * 2.32550e15);
}

TEST(DeriveConstants, ZeroTemperatureHasNoThermalPhonons) {
  auto p = reference_params();
  p.temperature = 0.0;
  EXPECT_EQ(derive_constants(p).thermal_occupation, 0.0);
  p.mech_frequency = 1.0;
  EXPECT_EQ(derive_constants(p).thermal_occupation, 0.0);
}

TEST(DeriveConstants, ReferenceThermalOccupation) {
  const auto p = reference_params();
  const auto d = derive_constants(p);
  const double ref = static_cast<double>(nbar_ref(p.mech_frequency, 0.4L));
  EXPECT_NEAR(d.thermal_occupation, ref, 1e-10 * ref);
  EXPECT_NEAR(d.thermal_occupation, 833.0, 0.5);
}

TEST(DeriveConstants, ReferenceRadiationCoupling) {
  const auto p = reference_params();
  const auto d = derive_constants(p);
  const long double ref = omega_c_ref(810e-9L) / 1e-3L *
                          std::sqrt(1.054571817e-34L / (5e-12L * 2.0L * 3.14159265358979323846L * 1e7L));
  EXPECT_NEAR(d.radiation_coupling, static_cast<double>(ref), 1e-9 * static_cast<double>(ref));
  EXPECT_NEAR(d.radiation_coupling, 1.35e3, 5.0);
}

TEST(DeriveConstants, DriveAmplitudeFormula) {
  const auto p = reference_params();
  const auto d = derive_constants(p);
  const long double ref =
      std::sqrt(2.0L * 35e-3L * p.cavity_decay / (1.054571817e-34L * omega_c_ref(810e-9L)));
  EXPECT_NEAR(d.drive_amplitude, static_cast<double>(ref), 1e-9 * static_cast<double>(ref));
}

TEST(DeriveConstants, DimensionalScaling) {
  auto p = reference_params();
  const auto base = derive_constants(p);
  p.drive_power *= 2.0;
  EXPECT_NEAR(derive_constants(p).drive_amplitude / base.drive_amplitude, std::sqrt(2.0), 1e-14);
  p = reference_params();
  p.cavity_length *= 2.0;
  EXPECT_NEAR(derive_constants(p).radiation_coupling / base.radiation_coupling, 0.5, 1e-15);
}

TEST(DeriveConstants, ThermalOccupationIncreasingAndConvex) {
  const double wm = reference_params().mech_frequency;
  double prev = thermal_occupation(wm, 0.01);
  double prev_slope = -1.0;
  for (double T = 0.02; T < 50.0; T += 0.01) {
    const double n = thermal_occupation(wm, T);
    EXPECT_GT(n, prev);
    const double slope = (n - prev) / 0.01;
    if (prev_slope >= 0.0) {
      EXPECT_GE(slope, prev_slope * (1 - 1e-9));
    }
    prev_slope = slope;
    prev = n;
  }
}

TEST(DeriveConstants, ClassicalLimit) {
  const double wm = reference_params().mech_frequency;
  const double t_quantum = constants::hbar * wm / constants::boltzmann;
  for (double factor : {100.0, 300.0, 1e4}) {
    const double T = factor * t_quantum;
    const double classical = constants::boltzmann * T / (constants::hbar * wm) - 0.5;
    EXPECT_NEAR(thermal_occupation(wm, T), classical, 0.01 * classical);
  }
}

TEST(DeriveConstants, QualityFactorAndMarkovianWarning) {
  auto p = reference_params();
  auto d = derive_constants(p);
  EXPECT_NEAR(d.quality_factor, 1e5, 1e-6);
  EXPECT_FALSE(d.markovian_warning);
  p.mech_damping = p.mech_frequency / 100.0;
  EXPECT_TRUE(derive_constants(p).markovian_warning);
}

TEST(DeriveConstants, RejectsInvalidInputs) {
  auto check = [](auto mutate) {
    auto p = reference_params();
    mutate(p);
    EXPECT_THROW(derive_constants(p), ParameterError);
  };
  check([](PhysicalParams& p) { p.drive_wavelength = 0.0; });
  check([](PhysicalParams& p) { p.cavity_length = -1e-3; });
  check([](PhysicalParams& p) { p.mech_mass = 0.0; });
  check([](PhysicalParams& p) { p.mech_frequency = -1.0; });
  check([](PhysicalParams& p) { p.cavity_decay = 0.0; });
  check([](PhysicalParams& p) { p.temperature = -0.1; });
  check([](PhysicalParams& p) { p.drive_power = std::nan(""); });
  check([](PhysicalParams& p) { p.detuning = EffectiveDetuning{INFINITY}; });
}

TEST(DeriveConstants, ZeroPowerAndCouplingsAreAllowed) {
  auto p = reference_params();
  p.drive_power = 0.0;
  p.cavity_coupling = 0.0;
  p.atom_coupling = 0.0;
  const auto d = derive_constants(p);
  EXPECT_EQ(d.drive_amplitude, 0.0);
}
