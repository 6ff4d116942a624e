#ifndef OPTOENT_LYAPUNOV_HPP
#define OPTOENT_LYAPUNOV_HPP

#include <algorithm>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "optoent/error.hpp"
#include "optoent/linear_dynamics.hpp"

namespace optoent {

template <int N>
struct CovarianceMatrix {
  using Matrix = Eigen::Matrix<double, N, N>;

  Matrix V = Matrix::Zero();
  // ||A V + V A^T + D||_F / max(||D||_F, eps)
  double residual_norm = 0.0;
  // Reciprocal condition estimate of the vectorized system.
  double rcond = 0.0;
};

using Covariance8 = CovarianceMatrix<8>;

struct LyapunovOptions {
  double residual_tolerance = 1e-10;
  int refinement_steps = 2;
  // Scale of the marginal-stability band; <= 0 means max |A_ij|.
  double frequency_scale = 0.0;
};

template <int N>
double lyapunov_residual(const Eigen::Matrix<double, N, N>& A, const Eigen::Matrix<double, N, N>& D,
                         const Eigen::Matrix<double, N, N>& V) {
  const double denom = std::max(D.norm(), std::numeric_limits<double>::epsilon());
  return (A * V + V * A.transpose() + D).norm() / denom;
}

// Solve A V + V A^T = -D for the unique symmetric V of a stable A.
//
// Column-major vectorization turns the equation into
// (I (x) A + A (x) I) vec(V) = -vec(D), solved by LU with partial pivoting and
// a couple of steps of iterative refinement. The result is symmetrized.
template <int N>
CovarianceMatrix<N> solve_lyapunov(const Eigen::Matrix<double, N, N>& A,
                                   const Eigen::Matrix<double, N, N>& D,
                                   const LyapunovOptions& opt = {}) {
  static_assert(N > 0, "fixed-size matrices only");
  using Matrix = Eigen::Matrix<double, N, N>;

  const double scale = opt.frequency_scale > 0.0 ? opt.frequency_scale
                                                 : std::max(A.cwiseAbs().maxCoeff(), 1e-300);
  const StabilityVerdict verdict = check_stability<N>(A, scale);
  if (!verdict.stable) {
    std::ostringstream msg;
    msg << "drift matrix is not stable (spectral abscissa " << verdict.spectral_abscissa
        << "); the Lyapunov equation has no unique stationary solution";
    throw StabilityError(msg.str(), verdict.spectral_abscissa);
  }

  constexpr int M = N * N;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(M, M);
  for (int j = 0; j < N; ++j) {
    // I (x) A: block-diagonal copies of A.
    K.block(j * N, j * N, N, N) += A;
    // A (x) I: A(j, k) on the diagonal of block (j, k).
    for (int k = 0; k < N; ++k) {
      if (A(j, k) == 0.0) continue;
      for (int i = 0; i < N; ++i) K(j * N + i, k * N + i) += A(j, k);
    }
  }

  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(D.data(), M);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
  const double rcond = lu.rcond();
  if (!(rcond > std::numeric_limits<double>::epsilon())) {
    throw NumericalError("vectorized Lyapunov system is singular to working precision",
                         rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity());
  }
  Eigen::VectorXd x = lu.solve(rhs);
  for (int step = 0; step < opt.refinement_steps; ++step) {
    const Eigen::VectorXd r = rhs - K * x;
    x += lu.solve(r);
  }

  CovarianceMatrix<N> out;
  const Matrix V = Eigen::Map<const Matrix>(x.data());
  out.V = 0.5 * (V + V.transpose());
  out.rcond = rcond;
  out.residual_norm = lyapunov_residual<N>(A, D, out.V);
  if (!(out.residual_norm <= opt.residual_tolerance)) {
    std::ostringstream msg;
    msg << "Lyapunov residual " << out.residual_norm << " exceeds tolerance " << opt.residual_tolerance;
    throw NumericalError(msg.str(), 1.0 / rcond);
  }
  return out;
}

inline Covariance8 solve_lyapunov(const LinearModel& model) {
  LyapunovOptions opt;
  opt.frequency_scale = model.frequency_scale;
  return solve_lyapunov<8>(model.drift, model.diffusion, opt);
}

}  // namespace optoent

#endif  // OPTOENT_LYAPUNOV_HPP
