#ifndef OPTOENT_LINEAR_DYNAMICS_HPP
#define OPTOENT_LINEAR_DYNAMICS_HPP

#include <cstdio>
#include <ostream>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "optoent/error.hpp"
#include "optoent/params.hpp"
#include "optoent/steady_state.hpp"

namespace optoent {

using Mat8 = Eigen::Matrix<double, 8, 8>;

// Quadrature ordering of the fluctuation vector:
// (dq, dp, dX1, dY1, dX2, dY2, dx, dy).
namespace quadrature {
inline constexpr int q = 0, p = 1, X1 = 2, Y1 = 3, X2 = 4, Y2 = 5, x = 6, y = 7;
}

struct StabilityVerdict {
  bool stable = false;
  bool marginal = false;  // |abscissa| within the marginal band; counted unstable
  double spectral_abscissa = 0.0;
};

// Relative width of the band around zero abscissa treated as marginal.
inline constexpr double marginal_band = 1e-9;

// Eigenvalue-based stability: stable iff max Re(lambda) < -band * scale.
// Eigen's EigenSolver does Hessenberg reduction followed by shifted QR.
template <int N>
StabilityVerdict check_stability(const Eigen::Matrix<double, N, N>& A, double scale = 1.0) {
  Eigen::EigenSolver<Eigen::Matrix<double, N, N>> solver(A, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue iteration did not converge");
  }
  StabilityVerdict v;
  v.spectral_abscissa = solver.eigenvalues().real().maxCoeff();
  const double band = marginal_band * scale;
  v.marginal = std::abs(v.spectral_abscissa) <= band;
  v.stable = v.spectral_abscissa < -band;
  return v;
}

struct LinearModel {
  Mat8 drift = Mat8::Zero();
  Mat8 diffusion = Mat8::Zero();
  double frequency_scale = 1.0;  // omega_m; sets the marginal band
  StabilityVerdict stability;

  bool stable() const { return stability.stable; }
  double spectral_abscissa() const { return stability.spectral_abscissa; }
};

inline StabilityVerdict check_stability(const LinearModel& model) {
  return check_stability<8>(model.drift, model.frequency_scale);
}

inline Mat8 drift_matrix(double omega_m, double gamma_m, double kappa, double gamma_a, double delta1,
                         double delta2_eff, double delta_a, double J, double G, double Ga) {
  using namespace quadrature;
  Mat8 A = Mat8::Zero();
  A(q, p) = omega_m;

  A(p, q) = -omega_m;
  A(p, p) = -gamma_m;
  A(p, X2) = G;

  A(X1, X1) = -kappa;
  A(X1, Y1) = delta1;
  A(X1, Y2) = J;
  A(X1, y) = Ga;

  A(Y1, X1) = -delta1;
  A(Y1, Y1) = -kappa;
  A(Y1, X2) = -J;
  A(Y1, x) = -Ga;

  A(X2, Y1) = J;
  A(X2, X2) = -kappa;
  A(X2, Y2) = delta2_eff;

  A(Y2, q) = G;
  A(Y2, X1) = -J;
  A(Y2, X2) = -delta2_eff;
  A(Y2, Y2) = -kappa;

  A(x, Y1) = Ga;
  A(x, x) = -gamma_a;
  A(x, y) = delta_a;

  A(y, X1) = -Ga;
  A(y, x) = -delta_a;
  A(y, y) = -gamma_a;
  return A;
}

inline Mat8 diffusion_matrix(double gamma_m, double nbar, double kappa, double gamma_a) {
  Eigen::Matrix<double, 8, 1> diag;
  diag << 0.0, gamma_m * (2.0 * nbar + 1.0), kappa, kappa, kappa, kappa, gamma_a, gamma_a;
  return diag.asDiagonal();
}

// The steady state enters only through Delta2' and G = sqrt(2) G0 |a2_s|.
inline LinearModel build_linear_model(const PhysicalParams& p, const DerivedConstants& d,
                                      const SteadyState& s) {
  LinearModel m;
  m.drift = drift_matrix(p.mech_frequency, p.mech_damping, p.cavity_decay, p.atom_decay,
                         cavity1_detuning(p), s.delta2_eff, p.atom_detuning, p.cavity_coupling,
                         s.coupling_G, p.atom_coupling);
  m.diffusion = diffusion_matrix(p.mech_damping, d.thermal_occupation, p.cavity_decay, p.atom_decay);
  m.frequency_scale = p.mech_frequency;
  m.stability = check_stability(m);
  return m;
}

// Row-major plain-text dump, one row per line, full double precision.
template <typename Derived>
void write_matrix(std::ostream& os, const Eigen::MatrixBase<Derived>& M) {
  char buf[40];
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17e", static_cast<double>(M(r, c)));
      if (c) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace optoent

#endif  // OPTOENT_LINEAR_DYNAMICS_HPP
