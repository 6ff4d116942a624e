#ifndef OPTOENT_STEADY_STATE_HPP
#define OPTOENT_STEADY_STATE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <variant>
#include <vector>

#include "optoent/error.hpp"
#include "optoent/params.hpp"

namespace optoent {

using complex = std::complex<double>;

// Classical mean values around which the fluctuations are linearized.
struct SteadyState {
  double q_s = 0.0;  // dimensionless mirror displacement
  double p_s = 0.0;  // always zero
  complex a1_s{};
  complex a2_s{};
  complex c_s{};
  double delta1 = 0.0;      // cavity-1 detuning used, rad/s
  double delta2_eff = 0.0;  // Delta2' = Delta2 - G0 q_s, rad/s
  double coupling_G = 0.0;  // sqrt(2) G0 |a2_s|, rad/s
};

struct SteadyStateSolution {
  std::vector<SteadyState> branches;  // sorted by q_s, never empty
  int fixed_point_iterations = 0;
  bool fixed_point_converged = true;

  bool multivalued() const { return branches.size() > 1; }
  // Smallest-|q_s| branch; q_s >= 0 so this is the first one.
  const SteadyState& primary() const { return branches.front(); }
};

struct SteadyStateOptions {
  int max_iterations = 10000;
  double damping = 0.5;
  double tolerance = 1e-12;  // relative step size
};

struct ValidityReport {
  double excitation_prob = 0.0;  // G_a^2 |a1_s|^2 / (N (Delta_a^2 + gamma_a^2))
  double amp1_abs = 0.0;
  double amp2_abs = 0.0;
  double quality_factor = 0.0;
  bool low_excitation_ok = false;  // excitation_prob < 0.1
  bool strong_drive_ok = false;    // min(|a1_s|, |a2_s|) > 10
  bool markovian_ok = false;       // Q > 100
};

struct FieldAmplitudes {
  complex a1{};
  complex a2{};
  complex c{};
};

// Closed-form mean fields for given cavity-1 and effective cavity-2 detunings,
// evaluated a1 -> a2 -> c.
inline FieldAmplitudes field_amplitudes(const PhysicalParams& p, const DerivedConstants& d,
                                        double delta1, double delta2_eff) {
  const complex i{0.0, 1.0};
  const complex cavity2 = p.cavity_decay + i * delta2_eff;
  const complex atoms = p.atom_decay + i * p.atom_detuning;
  const double J = p.cavity_coupling;
  const double Ga = p.atom_coupling;

  FieldAmplitudes f;
  f.a1 = d.drive_amplitude /
         (p.cavity_decay + i * delta1 + Ga * Ga / atoms + J * J / cavity2);
  f.a2 = -i * J * f.a1 / cavity2;
  f.c = -i * Ga * f.a1 / atoms;
  return f;
}

namespace detail {

inline SteadyState assemble_state(const PhysicalParams& p, const DerivedConstants& d,
                                  double delta1, double delta2_eff) {
  const FieldAmplitudes f = field_amplitudes(p, d, delta1, delta2_eff);
  SteadyState s;
  s.a1_s = f.a1;
  s.a2_s = f.a2;
  s.c_s = f.c;
  s.q_s = d.radiation_coupling * std::norm(f.a2) / p.mech_frequency;
  s.p_s = 0.0;
  s.delta1 = delta1;
  s.delta2_eff = delta2_eff;
  s.coupling_G = std::sqrt(2.0) * d.radiation_coupling * std::abs(f.a2);
  return s;
}

// Bisection on a sign-changing bracket down to adjacent doubles.
template <typename F>
double refine_root(F&& f, double lo, double hi, double f_lo) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = std::midpoint(lo, hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return std::midpoint(lo, hi);
}

}  // namespace detail

// Solve the stationary mean-value equations.
//
// Effective mode is closed form. Bare mode solves q = G0 |a2(Delta2 - G0 q)|^2 / omega_m:
// a damped fixed-point iteration first, then a bracketing scan over the whole
// admissible interval [0, q_max] so that every branch of a bistable response is
// returned. q_max follows from |a1| <= Omega_l / kappa and |a2| <= J |a1| / kappa.
inline SteadyStateSolution solve_steady_state(const PhysicalParams& p, const DerivedConstants& d,
                                              const SteadyStateOptions& opt = {}) {
  SteadyStateSolution out;
  if (const auto* eff = std::get_if<EffectiveDetuning>(&p.detuning)) {
    out.branches.push_back(detail::assemble_state(p, d, -eff->delta, eff->delta));
    return out;
  }

  const auto& bare = std::get<BareDetuning>(p.detuning);
  const double G0 = d.radiation_coupling;
  auto displacement = [&](double q) {
    const FieldAmplitudes f = field_amplitudes(p, d, bare.delta1, bare.delta2 - G0 * q);
    return G0 * std::norm(f.a2) / p.mech_frequency;
  };
  auto residual = [&](double q) { return q - displacement(q); };

  std::vector<double> roots;

  double q = 0.0;
  out.fixed_point_converged = false;
  for (int k = 1; k <= opt.max_iterations; ++k) {
    const double next = q + opt.damping * (displacement(q) - q);
    const double step = std::abs(next - q);
    q = next;
    out.fixed_point_iterations = k;
    if (step == 0.0 || step <= opt.tolerance * std::abs(q)) {
      out.fixed_point_converged = true;
      break;
    }
  }

  const double a2_bound = p.cavity_coupling * d.drive_amplitude / (p.cavity_decay * p.cavity_decay);
  const double q_max = G0 * a2_bound * a2_bound / p.mech_frequency;
  if (q_max > 0.0 && G0 > 0.0) {
    // Resolve features of width ~kappa in the effective detuning.
    constexpr std::size_t max_samples = 4'000'000;
    const double resolution = std::min(p.cavity_decay, p.atom_decay) / (32.0 * G0);
    std::size_t samples = static_cast<std::size_t>(std::ceil(q_max / resolution));
    samples = std::clamp<std::size_t>(samples, 64, max_samples);
    const double hi_end = q_max * (1.0 + 1e-9);
    double prev_q = 0.0;
    double prev_f = residual(0.0);
    if (prev_f == 0.0) roots.push_back(0.0);
    for (std::size_t k = 1; k <= samples; ++k) {
      const double qk = hi_end * static_cast<double>(k) / static_cast<double>(samples);
      const double fk = residual(qk);
      if (fk == 0.0) {
        roots.push_back(qk);
      } else if (prev_f != 0.0 && ((fk < 0.0) != (prev_f < 0.0))) {
        roots.push_back(detail::refine_root(residual, prev_q, qk, prev_f));
      }
      prev_q = qk;
      prev_f = fk;
    }
  } else {
    roots.push_back(0.0);
  }

  if (out.fixed_point_converged) roots.push_back(q);
  if (roots.empty()) {
    throw ConvergenceError("steady-state displacement did not converge", q);
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || std::abs(r - unique.back()) > 1e-9 * std::max(std::abs(r), 1e-300)) {
      unique.push_back(r);
    }
  }
  for (double r : unique) {
    out.branches.push_back(detail::assemble_state(p, d, bare.delta1, bare.delta2 - G0 * r));
  }
  return out;
}

inline ValidityReport validity_report(const PhysicalParams& p, const SteadyState& s) {
  ValidityReport v;
  v.amp1_abs = std::abs(s.a1_s);
  v.amp2_abs = std::abs(s.a2_s);
  const double Ga = p.atom_coupling;
  v.excitation_prob = Ga * Ga * std::norm(s.a1_s) /
                      (p.atom_number * (p.atom_detuning * p.atom_detuning + p.atom_decay * p.atom_decay));
  v.quality_factor = p.mech_frequency / p.mech_damping;
  v.low_excitation_ok = v.excitation_prob < 0.1;
  v.strong_drive_ok = std::min(v.amp1_abs, v.amp2_abs) > 10.0;
  v.markovian_ok = v.quality_factor > 100.0;
  return v;
}

}  // namespace optoent

#endif  // OPTOENT_STEADY_STATE_HPP
