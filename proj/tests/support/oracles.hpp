// Independent reference computations used only by the test suites.
#ifndef OPTOENT_TESTS_ORACLES_HPP
#define OPTOENT_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "optoent/optoent.hpp"

namespace oracle {

using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat4 = Eigen::Matrix<double, 4, 4>;

// ---------------------------------------------------------------------------
// V = int_0^inf exp(A t) D exp(A t)^T dt by adaptive Gauss-Kronrod (7/15).

struct IntegralResult {
  Mat8 V = Mat8::Zero();
  double horizon = 0.0;
  // The neglected tail equals f(H) V f(H)^T; this is ||f(H)||^2 ||V||.
  double truncation_bound = 0.0;
};

namespace detail {

inline const std::array<double, 15>& kronrod_nodes() {
  static const std::array<double, 15> x = {
      -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
      -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
      -0.586087235467691130294144845693013, -0.405845151377397166906606412076961,
      -0.207784955007898467600689403773245, 0.0,
      0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
      0.586087235467691130294144845693013,  0.741531185599394439863864773280788,
      0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
      0.991455371120812639206854697526329};
  return x;
}

inline const std::array<double, 15>& kronrod_weights() {
  static const std::array<double, 15> w = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
      0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
      0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
      0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
      0.022935322010529224963732008058970};
  return w;
}

// Gauss weights on the odd Kronrod nodes (indices 1, 3, ..., 13).
inline const std::array<double, 7>& gauss_weights() {
  static const std::array<double, 7> w = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
      0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
      0.129484966168869693270611432679082};
  return w;
}

inline void integrate_panel(const std::function<Mat8(double)>& f, double a, double b, Mat8& kronrod,
                            Mat8& gauss) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  kronrod.setZero();
  gauss.setZero();
  for (int i = 0; i < 15; ++i) {
    const Mat8 v = f(mid + half * kronrod_nodes()[i]);
    kronrod += kronrod_weights()[i] * v;
    if (i % 2 == 1) gauss += gauss_weights()[i / 2] * v;
  }
  kronrod *= half;
  gauss *= half;
}

inline Mat8 adaptive(const std::function<Mat8(double)>& f, double a, double b, double tol, int depth) {
  Mat8 k, g;
  integrate_panel(f, a, b, k, g);
  if ((k - g).norm() <= tol || depth > 40) return k;
  const double m = 0.5 * (a + b);
  return adaptive(f, a, m, 0.5 * tol, depth + 1) + adaptive(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

// horizon <= 0 picks the smallest doubling of 1/|abscissa| with ||exp(A H)|| < 1e-12.
inline IntegralResult integral_crosscheck(const Mat8& A, const Mat8& D, double horizon = 0.0,
                                          double rel_tol = 1e-11) {
  IntegralResult out;
  const Eigen::EigenSolver<Mat8> es(A, false);
  const double abscissa = es.eigenvalues().real().maxCoeff();
  if (horizon <= 0.0) {
    horizon = 1.0 / std::abs(abscissa);
    while ((A * horizon).exp().norm() >= 1e-12) horizon *= 2.0;
  }
  out.horizon = horizon;

  auto integrand = [&](double t) -> Mat8 {
    const Mat8 f = (A * t).exp();
    return f * D * f.transpose();
  };
  // Panels on a geometric-ish grid: unit-scale early dynamics, long tail later.
  const double scale = std::max(D.norm(), 1e-300);
  const double t0 = std::min(horizon, 1.0 / std::max(A.cwiseAbs().maxCoeff(), 1e-300));
  std::vector<double> edges = {0.0};
  for (double t = t0; t < horizon; t *= 2.0) edges.push_back(t);
  edges.push_back(horizon);
  Mat8 V = Mat8::Zero();
  const double per_panel = rel_tol * scale / static_cast<double>(edges.size());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    V += detail::adaptive(integrand, edges[i], edges[i + 1], per_panel, 0);
  }
  out.V = 0.5 * (V + V.transpose());
  const double fh = (A * horizon).exp().norm();
  out.truncation_bound = fh * fh * out.V.norm();
  return out;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial and Routh-Hurwitz table.

// Coefficients c[0..n] of det(sI - A) = c[0] s^n + c[1] s^{n-1} + ... + c[n],
// by the Faddeev-LeVerrier recursion in extended precision.
template <int N>
std::array<long double, N + 1> characteristic_polynomial(const Eigen::Matrix<double, N, N>& A) {
  using LMat = Eigen::Matrix<long double, N, N>;
  const LMat Al = A.template cast<long double>();
  std::array<long double, N + 1> c{};
  c[0] = 1.0L;
  LMat M = LMat::Zero();
  for (int k = 1; k <= N; ++k) {
    M = Al * M + c[k - 1] * LMat::Identity();
    c[k] = -(Al * M).trace() / static_cast<long double>(k);
  }
  return c;
}

// True iff every root of the polynomial has negative real part: all entries in
// the first column of the Routh array are strictly positive.
template <std::size_t M>
bool routh_hurwitz_stable(const std::array<long double, M>& coeffs) {
  const std::size_t n = M - 1;
  const std::size_t cols = n / 2 + 1;
  std::vector<std::vector<long double>> table(n + 1, std::vector<long double>(cols + 1, 0.0L));
  for (std::size_t j = 0; j < cols; ++j) {
    if (2 * j < M) table[0][j] = coeffs[2 * j];
    if (2 * j + 1 < M) table[1][j] = coeffs[2 * j + 1];
  }
  if (!(table[0][0] > 0.0L)) return false;
  for (std::size_t i = 2; i <= n; ++i) {
    const long double pivot = table[i - 1][0];
    if (!(pivot > 0.0L)) return false;
    for (std::size_t j = 0; j < cols; ++j) {
      table[i][j] = (pivot * table[i - 2][j + 1] - table[i - 2][0] * table[i - 1][j + 1]) / pivot;
    }
  }
  for (std::size_t i = 0; i <= n; ++i)
    if (!(table[i][0] > 0.0L)) return false;
  return true;
}

template <int N>
bool routh_hurwitz_stable(const Eigen::Matrix<double, N, N>& A) {
  return routh_hurwitz_stable(characteristic_polynomial<N>(A));
}

// ---------------------------------------------------------------------------
// Symplectic spectrum of the partial transpose by brute force: the moduli of
// the eigenvalues of i * Omega * Vpt, with Omega = J (+) J and Vpt obtained by
// flipping the sign of the second mode's momentum.

inline std::array<double, 2> partial_transpose_symplectic(const Mat4& Vs) {
  Mat4 P = Mat4::Identity();
  P(3, 3) = -1.0;
  const Mat4 Vpt = P * Vs * P;
  Mat4 Omega = Mat4::Zero();
  Omega(0, 1) = 1.0;
  Omega(1, 0) = -1.0;
  Omega(2, 3) = 1.0;
  Omega(3, 2) = -1.0;
  const Mat4 W = Omega * Vpt;
  Eigen::EigenSolver<Mat4> es(W, false);
  std::array<double, 4> mods{};
  for (int i = 0; i < 4; ++i) mods[i] = std::abs(es.eigenvalues()[i]);
  std::sort(mods.begin(), mods.end());
  return {mods[0], mods[2]};
}

// ---------------------------------------------------------------------------
// Mean-value equations: largest relative mismatch between stored values and
// the right-hand sides they must satisfy.

inline double relative_gap(std::complex<double> x, std::complex<double> rhs) {
  const double scale = std::max({std::abs(x), std::abs(rhs), 1e-300});
  return std::abs(x - rhs) / scale;
}

inline double steady_state_residual(const optoent::PhysicalParams& p, const optoent::DerivedConstants& d,
                                    const optoent::SteadyState& s) {
  const std::complex<double> i{0.0, 1.0};
  const double J = p.cavity_coupling, Ga = p.atom_coupling, kappa = p.cavity_decay;
  const std::complex<double> cav2 = kappa + i * s.delta2_eff;
  const std::complex<double> atoms = p.atom_decay + i * p.atom_detuning;
  double worst = std::abs(s.p_s);
  worst = std::max(worst, relative_gap(s.q_s, d.radiation_coupling * std::norm(s.a2_s) / p.mech_frequency));
  worst = std::max(worst, relative_gap(s.a2_s, -i * J * s.a1_s / cav2));
  worst = std::max(worst, relative_gap(s.a1_s, d.drive_amplitude / (kappa + i * s.delta1 + Ga * Ga / atoms +
                                                                     J * J / cav2)));
  worst = std::max(worst, relative_gap(s.c_s, -i * Ga * s.a1_s / atoms));
  if (const auto* bare = std::get_if<optoent::BareDetuning>(&p.detuning)) {
    worst = std::max(worst, relative_gap(s.delta2_eff, bare->delta2 - d.radiation_coupling * s.q_s));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Random instances.

inline Mat8 random_stable(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> margin(0.1, 1.0);
  Mat8 R;
  for (int i = 0; i < 64; ++i) R(i) = n(rng);
  const Eigen::EigenSolver<Mat8> es(R, false);
  const double shift = es.eigenvalues().real().maxCoeff() + margin(rng);
  return R - shift * Mat8::Identity();
}

inline Mat8 random_psd(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat8 B;
  for (int i = 0; i < 64; ++i) B(i) = n(rng);
  return B * B.transpose();
}

inline Mat8 random_orthogonal(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat8 B;
  for (int i = 0; i < 64; ++i) B(i) = n(rng);
  return Eigen::HouseholderQR<Mat8>(B).householderQ();
}

inline Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d R;
  R << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return R;
}

// Physical parameter draw over a broad but plausible region.
inline optoent::PhysicalParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); };
  optoent::PhysicalParams p = optoent::reference_params();
  const double wm = p.mech_frequency;
  p.cavity_decay = wm * log_uniform(0.1, 2.0);
  p.atom_decay = wm * log_uniform(0.1, 2.0);
  p.mech_damping = wm * log_uniform(1e-5, 1e-2);
  p.atom_coupling = wm * u(rng);
  p.cavity_coupling = wm * 2.5 * u(rng);
  p.atom_detuning = wm * (4.0 * u(rng) - 2.0);
  p.drive_power = log_uniform(1e-4, 0.1);
  p.temperature = 10.0 * u(rng);
  p.detuning = optoent::EffectiveDetuning{wm * (3.0 * u(rng) - 0.5)};
  return p;
}

}  // namespace oracle

#endif  // OPTOENT_TESTS_ORACLES_HPP
