#ifndef OPTOENT_CRITICAL_TEMPERATURE_HPP
#define OPTOENT_CRITICAL_TEMPERATURE_HPP

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "optoent/error.hpp"
#include "optoent/pipeline.hpp"

namespace optoent {

struct CriticalTempResult {
  double critical_temperature = 0.0;  // T_c = T_high
  double t_low = 0.0;                 // E_N > 0
  double t_high = 0.0;                // E_N = 0
  BipartitePair pair = BipartitePair::MirrorAtoms;
  double tolerance = 0.1;
  // E_N sampled on an even grid over [T_base, T_max]; used for the
  // monotonic-decrease check.
  std::vector<std::pair<double, double>> profile;
  bool monotonic = true;
};

// E_N of one mirror pair at temperature T. The drift matrix does not depend on
// T, so an unstable point is unstable at every temperature.
inline double log_negativity_at(PhysicalParams p, BipartitePair pair, double temperature) {
  p.temperature = temperature;
  const PointResult r = evaluate_point(p);
  if (r.status == PointStatus::Unstable) {
    throw StabilityError("system is unstable; no stationary entanglement", r.stability.spectral_abscissa);
  }
  if (r.status == PointStatus::Failed) throw NumericalError(r.message);
  return *r.log_negativity(pair);
}

// Bisection for the smallest T with E_N = 0, starting from p.temperature.
inline CriticalTempResult find_critical_temperature(const PhysicalParams& p, BipartitePair pair,
                                                    double t_max, double tolerance = 0.1,
                                                    int profile_samples = 16) {
  if (!(tolerance > 0.0)) throw ParameterError("temperature tolerance must be positive");
  const double t_base = p.temperature;
  if (!(t_max > t_base)) throw ParameterError("T_max must exceed the base temperature");

  CriticalTempResult res;
  res.pair = pair;
  res.tolerance = tolerance;

  if (!(log_negativity_at(p, pair, t_base) > 0.0)) {
    std::ostringstream msg;
    msg << "no crossing: E_N is already zero at the base temperature " << t_base << " K";
    throw NoCrossingError(msg.str());
  }
  if (log_negativity_at(p, pair, t_max) > 0.0) {
    std::ostringstream msg;
    msg << "no crossing: E_N is still positive at T_max = " << t_max << " K";
    throw NoCrossingError(msg.str());
  }

  double lo = t_base;
  double hi = t_max;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (log_negativity_at(p, pair, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  res.t_low = lo;
  res.t_high = hi;
  res.critical_temperature = hi;

  const int n = std::max(profile_samples, 2);
  res.profile.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double t = t_base + (t_max - t_base) * k / (n - 1);
    res.profile.emplace_back(t, log_negativity_at(p, pair, t));
  }
  for (std::size_t k = 1; k < res.profile.size(); ++k) {
    if (res.profile[k].second > res.profile[k - 1].second + 1e-12) res.monotonic = false;
  }
  return res;
}

}  // namespace optoent

#endif  // OPTOENT_CRITICAL_TEMPERATURE_HPP
