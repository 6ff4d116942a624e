#ifndef OPTOENT_ENTANGLEMENT_HPP
#define OPTOENT_ENTANGLEMENT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string_view>

#include <Eigen/Dense>

#include "optoent/error.hpp"
#include "optoent/lyapunov.hpp"

namespace optoent {

using Mat4 = Eigen::Matrix<double, 4, 4>;
using Mat2 = Eigen::Matrix<double, 2, 2>;

// Two-mode partitions of the eight quadratures. The first three pair the
// mirror with another subsystem; the rest are only reachable on request.
enum class BipartitePair {
  MirrorCavity1,
  MirrorCavity2,
  MirrorAtoms,
  Cavity1Cavity2,
  Cavity1Atoms,
  Cavity2Atoms,
};

inline constexpr std::array<BipartitePair, 3> mirror_pairs = {
    BipartitePair::MirrorCavity1, BipartitePair::MirrorCavity2, BipartitePair::MirrorAtoms};

// Zero-based quadrature indices (first mode's two, then the second mode's two).
inline constexpr std::array<int, 4> pair_indices(BipartitePair pair) {
  switch (pair) {
    case BipartitePair::MirrorCavity1: return {0, 1, 2, 3};
    case BipartitePair::MirrorCavity2: return {0, 1, 4, 5};
    case BipartitePair::MirrorAtoms: return {0, 1, 6, 7};
    case BipartitePair::Cavity1Cavity2: return {2, 3, 4, 5};
    case BipartitePair::Cavity1Atoms: return {2, 3, 6, 7};
    case BipartitePair::Cavity2Atoms: return {4, 5, 6, 7};
  }
  return {0, 1, 2, 3};
}

inline constexpr std::string_view pair_name(BipartitePair pair) {
  switch (pair) {
    case BipartitePair::MirrorCavity1: return "mirror_cavity1";
    case BipartitePair::MirrorCavity2: return "mirror_cavity2";
    case BipartitePair::MirrorAtoms: return "mirror_atoms";
    case BipartitePair::Cavity1Cavity2: return "cavity1_cavity2";
    case BipartitePair::Cavity1Atoms: return "cavity1_atoms";
    case BipartitePair::Cavity2Atoms: return "cavity2_atoms";
  }
  return "?";
}

struct EntanglementReport {
  BipartitePair pair = BipartitePair::MirrorCavity1;
  Mat4 Vs = Mat4::Zero();
  double sigma = 0.0;  // det Vm + det Vb - 2 det Vmb (partially transposed)
  double nu_minus = 0.0;
  double nu_plus = 0.0;
  double log_negativity = 0.0;  // max(0, -ln(2 nu_minus)), nats
  bool entangled = false;
  bool physical = false;
};

// Discriminants below zero by less than this (relative to Sigma^2) are
// rounding noise and clamped.
inline constexpr double discriminant_tolerance = 1e-12;
// nu_minus within this of 1/2 counts as separable.
inline constexpr double separability_tolerance = 1e-12;
inline constexpr double physicality_tolerance = 1e-9;

inline Mat4 extract_submatrix(const Mat8& V, BipartitePair pair) {
  const auto idx = pair_indices(pair);
  Mat4 Vs;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) Vs(r, c) = V(idx[r], idx[c]);
  return Vs;
}

namespace detail {

struct SymplecticPair {
  double minus = 0.0;
  double plus = 0.0;
  bool ok = false;
};

// Symplectic eigenvalues from the two invariants Sigma and det Vs.
// nu_-^2 is taken as det / nu_+^2, which avoids cancellation when nu_+ >> nu_-.
inline SymplecticPair symplectic_from_invariants(double sigma, double det) {
  SymplecticPair out;
  double disc = sigma * sigma - 4.0 * det;
  if (disc < -discriminant_tolerance * std::max(1.0, sigma * sigma)) return out;
  disc = std::max(disc, 0.0);
  const double plus_sq = 0.5 * (sigma + std::sqrt(disc));
  if (!(plus_sq > 0.0)) return out;
  const double minus_sq = det / plus_sq;
  if (minus_sq < -discriminant_tolerance * std::max(1.0, plus_sq)) return out;
  out.plus = std::sqrt(plus_sq);
  out.minus = std::sqrt(std::max(minus_sq, 0.0));
  out.ok = true;
  return out;
}

}  // namespace detail

inline EntanglementReport logarithmic_negativity(const Mat4& Vs,
                                                 BipartitePair pair = BipartitePair::MirrorCavity1) {
  EntanglementReport rep;
  rep.pair = pair;
  rep.Vs = Vs;

  const Mat2 Vm = Vs.topLeftCorner<2, 2>();
  const Mat2 Vb = Vs.bottomRightCorner<2, 2>();
  const Mat2 Vmb = Vs.topRightCorner<2, 2>();
  const double det_m = Vm.determinant();
  const double det_b = Vb.determinant();
  const double det_mb = Vmb.determinant();
  const double det_s = Vs.determinant();

  rep.sigma = det_m + det_b - 2.0 * det_mb;
  const auto pt = detail::symplectic_from_invariants(rep.sigma, det_s);
  if (!pt.ok) {
    std::ostringstream msg;
    msg << "inconsistent covariance submatrix: Sigma^2 - 4 det Vs = "
        << rep.sigma * rep.sigma - 4.0 * det_s;
    throw NumericalError(msg.str());
  }
  rep.nu_minus = pt.minus;
  rep.nu_plus = pt.plus;
  rep.entangled = rep.nu_minus < 0.5 - separability_tolerance;
  rep.log_negativity = rep.entangled ? -std::log(2.0 * rep.nu_minus) : 0.0;

  // Uncertainty principle on the untransposed state: its symplectic
  // eigenvalues are the singular values of V^(1/2) Omega V^(1/2). The closed
  // form in (det Vm + det Vb + 2 det Vmb, det Vs) loses half the digits near
  // pure states, where the two eigenvalues coincide.
  Eigen::SelfAdjointEigenSolver<Mat4> eig(Vs);
  if (eig.eigenvalues().minCoeff() > 0.0) {
    const Mat4 root = eig.operatorSqrt();
    Mat4 omega = Mat4::Zero();
    omega(0, 1) = omega(2, 3) = 1.0;
    omega(1, 0) = omega(3, 2) = -1.0;
    const Eigen::JacobiSVD<Mat4> svd(root * omega * root);
    rep.physical = svd.singularValues().minCoeff() >= 0.5 - physicality_tolerance;
  }
  return rep;
}

inline EntanglementReport pair_report(const Mat8& V, BipartitePair pair) {
  return logarithmic_negativity(extract_submatrix(V, pair), pair);
}

// E_N^1 (mirror-cavity 1), E_N^2 (mirror-cavity 2), E_N^3 (mirror-atoms).
inline std::array<EntanglementReport, 3> all_pairs_report(const Mat8& V) {
  return {pair_report(V, mirror_pairs[0]), pair_report(V, mirror_pairs[1]),
          pair_report(V, mirror_pairs[2])};
}

}  // namespace optoent

#endif  // OPTOENT_ENTANGLEMENT_HPP
