#ifndef OPTOENT_PIPELINE_HPP
#define OPTOENT_PIPELINE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "optoent/entanglement.hpp"
#include "optoent/linear_dynamics.hpp"
#include "optoent/lyapunov.hpp"
#include "optoent/params.hpp"
#include "optoent/steady_state.hpp"

namespace optoent {

enum class PointStatus { Ok, Unstable, Failed };

// Everything computed for a single parameter set. Entanglement values exist
// only for stable points; absence is not separability.
struct PointResult {
  PointStatus status = PointStatus::Failed;
  std::string message;

  double omega_m = 1.0;  // mechanical frequency, for normalized output
  DerivedConstants derived;
  SteadyState steady;
  std::size_t branch_count = 0;
  ValidityReport validity;
  StabilityVerdict stability;
  double lyapunov_residual = 0.0;
  std::optional<std::array<EntanglementReport, 3>> reports;

  bool ok() const { return status == PointStatus::Ok; }
  bool multivalued() const { return branch_count > 1; }
  // E_N for one of the three mirror pairs; empty unless status is Ok.
  std::optional<double> log_negativity(BipartitePair pair) const {
    if (!reports) return std::nullopt;
    for (const auto& r : *reports)
      if (r.pair == pair) return r.log_negativity;
    return std::nullopt;
  }
};

// derive -> steady state -> linear model -> stability gate -> Lyapunov -> E_N.
// Invalid parameters throw ParameterError; numerical trouble downstream of
// that is reported in the result.
inline PointResult evaluate_point(const PhysicalParams& p) {
  PointResult r;
  r.derived = derive_constants(p);
  r.omega_m = p.mech_frequency;
  try {
    const SteadyStateSolution sol = solve_steady_state(p, r.derived);
    r.steady = sol.primary();
    r.branch_count = sol.branches.size();
    r.validity = validity_report(p, r.steady);

    const LinearModel model = build_linear_model(p, r.derived, r.steady);
    r.stability = model.stability;
    if (!model.stable()) {
      r.status = PointStatus::Unstable;
      r.message = model.stability.marginal ? "marginally stable" : "unstable";
      return r;
    }
    const Covariance8 cov = solve_lyapunov(model);
    r.lyapunov_residual = cov.residual_norm;
    r.reports = all_pairs_report(cov.V);
    r.status = PointStatus::Ok;
  } catch (const ParameterError&) {
    throw;
  } catch (const Error& e) {
    r.status = PointStatus::Failed;
    r.message = e.what();
    r.reports.reset();
  }
  return r;
}

}  // namespace optoent

#endif  // OPTOENT_PIPELINE_HPP
