#ifndef OPTOENT_SWEEP_HPP
#define OPTOENT_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "optoent/error.hpp"
#include "optoent/pipeline.hpp"

namespace optoent {

enum class SweepAxis { DeltaOverOmegaM, TemperatureK, JOverOmegaM };

inline constexpr std::string_view axis_column(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::DeltaOverOmegaM: return "Delta_over_omega_m";
    case SweepAxis::TemperatureK: return "T_K";
    case SweepAxis::JOverOmegaM: return "J_over_omega_m";
  }
  return "?";
}

struct SweepSpec {
  SweepAxis axis = SweepAxis::DeltaOverOmegaM;
  double start = 0.0;
  double stop = 2.5;
  int points = 201;
  // Secondary axis; when unset it defaults to J (or Delta for a J sweep).
  std::optional<SweepAxis> overlay_axis;
  std::vector<double> overlays;
  PhysicalParams base;
  unsigned threads = 1;  // 0 = hardware concurrency

  SweepAxis resolved_overlay_axis() const {
    if (overlay_axis) return *overlay_axis;
    return axis == SweepAxis::JOverOmegaM ? SweepAxis::DeltaOverOmegaM : SweepAxis::JOverOmegaM;
  }
  std::size_t row_count() const {
    return static_cast<std::size_t>(points) * std::max<std::size_t>(overlays.size(), 1);
  }
};

struct SweepRow {
  double axis_value = 0.0;
  std::optional<double> overlay_value;
  PointResult result;
};

inline void validate(const SweepSpec& s) {
  if (!std::isfinite(s.start) || !std::isfinite(s.stop) || !(s.start < s.stop))
    throw ConfigError("sweep requires finite start < stop");
  if (s.points < 2) throw ConfigError("sweep requires at least 2 points");
  for (double v : s.overlays)
    if (!std::isfinite(v)) throw ConfigError("overlay values must be finite");
  if (!s.overlays.empty() && s.resolved_overlay_axis() == s.axis)
    throw ConfigError("overlay axis must differ from the sweep axis");
  validate(s.base);
}

// Set one axis coordinate. Delta always switches to effective-detuning mode.
inline PhysicalParams apply_axis(PhysicalParams p, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::DeltaOverOmegaM:
      p.detuning = EffectiveDetuning{value * p.mech_frequency};
      break;
    case SweepAxis::TemperatureK:
      p.temperature = value;
      break;
    case SweepAxis::JOverOmegaM:
      p.cavity_coupling = value * p.mech_frequency;
      break;
  }
  return p;
}

inline std::vector<double> sweep_grid(const SweepSpec& s) {
  std::vector<double> grid(static_cast<std::size_t>(s.points));
  const double n = static_cast<double>(s.points - 1);
  for (int k = 0; k < s.points; ++k) grid[k] = s.start + (s.stop - s.start) * (k / n);
  grid.back() = s.stop;
  return grid;
}

// Rows are overlay-major: all grid points of overlay 0, then overlay 1, ...
// Points are independent; the worker pool only changes who computes a row,
// never its value or position.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  const std::vector<double> grid = sweep_grid(spec);
  const std::size_t total = spec.row_count();
  std::vector<SweepRow> rows(total);

  auto evaluate = [&](std::size_t index) {
    SweepRow& row = rows[index];
    const std::size_t k = index % grid.size();
    row.axis_value = grid[k];
    PhysicalParams p = spec.base;
    if (!spec.overlays.empty()) {
      row.overlay_value = spec.overlays[index / grid.size()];
      p = apply_axis(p, spec.resolved_overlay_axis(), *row.overlay_value);
    }
    p = apply_axis(p, spec.axis, row.axis_value);
    try {
      row.result = evaluate_point(p);
    } catch (const Error& e) {
      row.result = PointResult{};
      row.result.status = PointStatus::Failed;
      row.result.message = e.what();
    }
  };

  unsigned workers = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) evaluate(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) evaluate(i);
      });
    }
  }
  return rows;
}

namespace detail {

// Shortest representation that round-trips; independent of locale.
inline void put_double(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace detail

inline std::string csv_header(const SweepSpec& spec) {
  std::string h(axis_column(spec.axis));
  if (!spec.overlays.empty()) {
    h += ',';
    h += axis_column(spec.resolved_overlay_axis());
  }
  h += ",EN1,EN2,EN3,nu1,nu2,nu3,stable,low_excitation_ok,strong_drive_ok,"
       "abs_a1,abs_a2,q_s,Delta2_eff_over_omega_m,G_over_omega_m";
  return h;
}

// Unstable rows leave the entanglement columns empty; failed rows leave every
// computed column empty.
inline std::string csv_row(const SweepRow& row) {
  std::string line;
  detail::put_double(line, row.axis_value);
  if (row.overlay_value) {
    line += ',';
    detail::put_double(line, *row.overlay_value);
  }
  const PointResult& r = row.result;
  const bool have_state = r.status != PointStatus::Failed;
  for (int k = 0; k < 3; ++k) {
    line += ',';
    if (r.reports) detail::put_double(line, (*r.reports)[k].log_negativity);
  }
  for (int k = 0; k < 3; ++k) {
    line += ',';
    if (r.reports) detail::put_double(line, (*r.reports)[k].nu_minus);
  }
  auto flag = [&](bool b) {
    line += ',';
    if (have_state) line += b ? '1' : '0';
  };
  flag(r.status == PointStatus::Ok);
  flag(r.validity.low_excitation_ok);
  flag(r.validity.strong_drive_ok);
  auto number = [&](double v) {
    line += ',';
    if (have_state) detail::put_double(line, v);
  };
  number(r.validity.amp1_abs);
  number(r.validity.amp2_abs);
  number(r.steady.q_s);
  number(r.steady.delta2_eff / r.omega_m);
  number(r.steady.coupling_G / r.omega_m);
  return line;
}

inline void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  os << csv_header(spec) << '\n';
  for (const auto& row : rows) os << csv_row(row) << '\n';
}

}  // namespace optoent

#endif  // OPTOENT_SWEEP_HPP
