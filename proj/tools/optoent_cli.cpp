#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "optoent/optoent.hpp"

using namespace optoent;

namespace {

enum ExitCode { ok = 0, failure = 1, config_error = 2, unstable = 3, no_crossing = 4 };

struct Options {
  std::string config;
  std::vector<std::string> sets;
  // Shortcuts; each maps onto one config key.
  std::optional<double> temperature, J, delta, delta_a, power, start, stop;
  std::optional<int> points;
  std::optional<unsigned> threads;
  std::optional<std::string> axis;
  std::vector<double> overlays;
  // Outputs.
  std::string csv_path, svg_path, plot_pair = "mirror_atoms";
  std::optional<std::string> pair;
  std::optional<double> t_max, tol;
  bool dump_matrices = false;
};

void add_shared(CLI::App& app, Options& o) {
  app.add_option("-c,--config", o.config, "JSON configuration file");
  app.add_option("--set", o.sets, "Override a config key: section.key=value (repeatable)");
  app.add_option("--temperature", o.temperature, "mirror.temperature [K]");
  app.add_option("--J", o.J, "cavity.coupling_J in units of omega_m");
  app.add_option("--delta", o.delta, "effective detuning Delta in units of omega_m");
  app.add_option("--delta-a", o.delta_a, "atoms.detuning in units of omega_m");
  app.add_option("--power", o.power, "drive.power [W]");
}

void add_sweep_shortcuts(CLI::App& app, Options& o) {
  app.add_option("--axis", o.axis, "sweep.axis: delta, temperature or J");
  app.add_option("--start", o.start, "sweep.start");
  app.add_option("--stop", o.stop, "sweep.stop");
  app.add_option("--points", o.points, "sweep.points");
  app.add_option("--overlays", o.overlays, "sweep.overlays")->delimiter(',');
  app.add_option("--threads", o.threads, "sweep.threads (0 = all cores)");
}

template <class T>
void put(json& root, const char* section, const char* key, const std::optional<T>& v) {
  if (v) apply_override(root, std::string(section) + "." + key + "=" + json(*v).dump());
}

json build_config(const Options& o) {
  json root = o.config.empty() ? json::object() : load_json_file(o.config);
  for (const auto& s : o.sets) apply_override(root, s);
  put(root, "mirror", "temperature", o.temperature);
  put(root, "cavity", "coupling_J_in_omega_m", o.J);
  put(root, "atoms", "detuning_in_omega_m", o.delta_a);
  put(root, "drive", "power", o.power);
  if (o.delta) {
    apply_override(root, "detuning.mode=\"effective\"");
    for (const char* k : {"delta1", "delta2", "delta1_in_omega_m", "delta2_in_omega_m"}) root["detuning"].erase(k);
    put(root, "detuning", "delta_in_omega_m", o.delta);
  }
  put(root, "sweep", "axis", o.axis);
  put(root, "sweep", "start", o.start);
  put(root, "sweep", "stop", o.stop);
  put(root, "sweep", "points", o.points);
  put(root, "sweep", "threads", o.threads);
  if (!o.overlays.empty()) apply_override(root, "sweep.overlays=" + json(o.overlays).dump());
  put(root, "tcrit", "pair", o.pair);
  put(root, "tcrit", "t_max", o.t_max);
  put(root, "tcrit", "tolerance", o.tol);
  return root;
}

void note_assumptions(const PhysicalParams& p) {
  if (p.atom_detuning_assumed)
    std::cerr << "note: atomic detuning not given; using Delta_a = -omega_m\n";
  if (derive_constants(p).markovian_warning)
    std::cerr << "warning: mechanical quality factor below 100; Markovian noise model is questionable\n";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void print_params(std::ostream& os, const PhysicalParams& p, const DerivedConstants& d) {
  const double wm = p.mech_frequency;
  os << "omega_m           " << wm << " rad/s\n"
     << "temperature       " << p.temperature << " K\n"
     << "J / omega_m       " << p.cavity_coupling / wm << "\n"
     << "Delta_a / omega_m " << p.atom_detuning / wm << (p.atom_detuning_assumed ? " (assumed)" : "") << "\n";
  if (const auto* eff = std::get_if<EffectiveDetuning>(&p.detuning)) {
    os << "Delta / omega_m   " << eff->delta / wm << "\n";
  } else {
    const auto& bare = std::get<BareDetuning>(p.detuning);
    os << "Delta1 / omega_m  " << bare.delta1 / wm << "\n"
       << "Delta2 / omega_m  " << bare.delta2 / wm << "\n";
  }
  os << "G0                " << d.radiation_coupling << " rad/s\n"
     << "drive amplitude   " << d.drive_amplitude << " 1/s^(1/2)\n"
     << "thermal phonons   " << d.thermal_occupation << "\n";
}

void print_state(std::ostream& os, const PointResult& r) {
  const double wm = r.omega_m;
  os << "steady branches   " << r.branch_count << (r.multivalued() ? " (smallest displacement used)" : "") << "\n"
     << "q_s               " << r.steady.q_s << "\n"
     << "|a1_s|            " << r.validity.amp1_abs << "\n"
     << "|a2_s|            " << r.validity.amp2_abs << "\n"
     << "Delta2' / omega_m " << r.steady.delta2_eff / wm << "\n"
     << "G / omega_m       " << r.steady.coupling_G / wm << "\n"
     << "excitation prob   " << r.validity.excitation_prob << "  low excitation: " << yes_no(r.validity.low_excitation_ok)
     << "\n"
     << "strong drive      " << yes_no(r.validity.strong_drive_ok) << "\n"
     << "markovian (Q>100) " << yes_no(r.validity.markovian_ok) << "\n"
     << "spectral abscissa " << r.stability.spectral_abscissa / wm << " omega_m\n"
     << "stable            " << yes_no(r.stability.stable) << (r.stability.marginal ? " (marginal)" : "") << "\n";
}

int run_point(const Options& o, bool check_only) {
  const PhysicalParams p = params_from_json(build_config(o));
  note_assumptions(p);
  const PointResult r = evaluate_point(p);
  print_params(std::cout, p, r.derived);
  if (r.status == PointStatus::Failed) {
    std::cerr << "error: " << r.message << "\n";
    return failure;
  }
  print_state(std::cout, r);
  if (check_only) {
    if (o.dump_matrices) {
      const LinearModel m = build_linear_model(p, r.derived, r.steady);
      std::cout << "drift matrix A\n";
      write_matrix(std::cout, m.drift);
      std::cout << "diffusion matrix D\n";
      write_matrix(std::cout, m.diffusion);
    }
    return ok;
  }
  if (r.status == PointStatus::Unstable) {
    std::cerr << "error: " << r.message << "\n";
    return unstable;
  }
  std::cout << "lyapunov residual " << r.lyapunov_residual << "\n";
  for (const auto& rep : *r.reports) {
    std::cout << pair_name(rep.pair) << ": E_N = " << rep.log_negativity << "  nu_minus = " << rep.nu_minus
              << "  physical: " << yes_no(rep.physical) << "\n";
  }
  return ok;
}

int run_sweep_cmd(const Options& o) {
  const json root = build_config(o);
  const SweepSpec spec = sweep_from_json(root);
  note_assumptions(spec.base);
  const auto rows = run_sweep(spec);
  if (o.csv_path.empty() || o.csv_path == "-") {
    write_csv(std::cout, spec, rows);
  } else {
    std::ofstream out(o.csv_path);
    if (!out) throw ConfigError("cannot write '" + o.csv_path + "'");
    write_csv(out, spec, rows);
  }
  if (!o.svg_path.empty()) {
    std::ofstream out(o.svg_path);
    if (!out) throw ConfigError("cannot write '" + o.svg_path + "'");
    write_svg(out, spec, rows, parse_pair(o.plot_pair));
  }
  std::size_t unstable_rows = 0, failed_rows = 0;
  for (const auto& r : rows) {
    unstable_rows += r.result.status == PointStatus::Unstable;
    failed_rows += r.result.status == PointStatus::Failed;
  }
  if (unstable_rows || failed_rows)
    std::cerr << rows.size() << " rows, " << unstable_rows << " unstable, " << failed_rows << " failed\n";
  return ok;
}

int run_tcrit(const Options& o) {
  const json root = build_config(o);
  const PhysicalParams p = params_from_json(root);
  const TcritSettings t = tcrit_from_json(root);
  note_assumptions(p);
  try {
    const auto res = find_critical_temperature(p, t.pair, t.t_max, t.tolerance);
    std::cout << "pair     " << pair_name(res.pair) << "\n"
              << "T_c      " << res.critical_temperature << " K\n"
              << "bracket  [" << res.t_low << ", " << res.t_high << "] K\n";
    if (!res.monotonic) {
      std::cerr << "warning: E_N is not monotonically decreasing in T; sampled profile:\n";
      for (const auto& [temp, en] : res.profile) std::cerr << "  " << temp << " K  " << en << "\n";
    }
    return ok;
  } catch (const NoCrossingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return no_crossing;
  } catch (const StabilityError& e) {
    std::cerr << "error: " << e.what() << " (spectral abscissa " << e.spectral_abscissa() / p.mech_frequency
              << " omega_m)\n";
    return unstable;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement in a two-cavity optomechanical system with an atomic ensemble"};
  app.require_subcommand(1);
  Options o;

  auto* point = app.add_subcommand("point", "Evaluate one parameter set");
  auto* check = app.add_subcommand("check", "Stability and validity report only");
  auto* sweep = app.add_subcommand("sweep", "One-dimensional sweep with optional overlays, written as CSV");
  auto* tcrit = app.add_subcommand("tcrit", "Critical temperature search");
  for (auto* sub : {point, check, sweep, tcrit}) add_shared(*sub, o);
  add_sweep_shortcuts(*sweep, o);
  check->add_flag("--dump-matrices", o.dump_matrices, "Print the drift and diffusion matrices");
  sweep->add_option("--csv", o.csv_path, "CSV output path (default stdout)");
  sweep->add_option("--svg", o.svg_path, "SVG plot output path");
  sweep->add_option("--plot-pair", o.plot_pair, "Pair to plot: mirror_cavity1, mirror_cavity2, mirror_atoms");
  tcrit->add_option("--pair", o.pair, "tcrit.pair");
  tcrit->add_option("--t-max", o.t_max, "tcrit.t_max [K]");
  tcrit->add_option("--tol", o.tol, "tcrit.tolerance [K]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    if (point->parsed()) return run_point(o, false);
    if (check->parsed()) return run_point(o, true);
    if (sweep->parsed()) return run_sweep_cmd(o);
    return run_tcrit(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failure;
  }
}
