#ifndef OPTOENT_CONFIG_HPP
#define OPTOENT_CONFIG_HPP

// JSON configuration files. Schema (every key optional, reference defaults):
//
//   cavity:   length [m], decay_rate, coupling_J
//   drive:    wavelength [m], power [W]
//   mirror:   frequency [rad/s], mass [kg], damping, temperature [K]
//   atoms:    decay_rate, coupling_G_a, detuning, number
//   detuning: mode ("effective" | "bare"), delta | delta1, delta2
//   sweep:    axis ("delta" | "temperature" | "J"), start, stop, points,
//             overlay_axis, overlays [list], threads
//   tcrit:    pair, t_max [K], tolerance [K]
//
// Rates and detunings are rad/s; any of them may instead be given as a
// multiple of the mirror frequency with the suffix "_in_omega_m"
// (e.g. "coupling_J_in_omega_m": 2.0). mirror.frequency itself is rad/s.

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "optoent/critical_temperature.hpp"
#include "optoent/error.hpp"
#include "optoent/params.hpp"
#include "optoent/sweep.hpp"

namespace optoent {

using json = nlohmann::json;

struct TcritSettings {
  BipartitePair pair = BipartitePair::MirrorAtoms;
  double t_max = 100.0;
  double tolerance = 0.1;
};

inline BipartitePair parse_pair(std::string_view s) {
  for (auto pair : {BipartitePair::MirrorCavity1, BipartitePair::MirrorCavity2, BipartitePair::MirrorAtoms,
                    BipartitePair::Cavity1Cavity2, BipartitePair::Cavity1Atoms, BipartitePair::Cavity2Atoms}) {
    if (s == pair_name(pair)) return pair;
  }
  if (s == "1" || s == "EN1") return BipartitePair::MirrorCavity1;
  if (s == "2" || s == "EN2") return BipartitePair::MirrorCavity2;
  if (s == "3" || s == "EN3") return BipartitePair::MirrorAtoms;
  throw ConfigError("unknown pair '" + std::string(s) + "'");
}

inline SweepAxis parse_axis(std::string_view s) {
  if (s == "delta" || s == "Delta" || s == axis_column(SweepAxis::DeltaOverOmegaM))
    return SweepAxis::DeltaOverOmegaM;
  if (s == "temperature" || s == "T" || s == axis_column(SweepAxis::TemperatureK))
    return SweepAxis::TemperatureK;
  if (s == "J" || s == axis_column(SweepAxis::JOverOmegaM)) return SweepAxis::JOverOmegaM;
  throw ConfigError("unknown sweep axis '" + std::string(s) + "'");
}

inline std::string_view axis_key(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::DeltaOverOmegaM: return "delta";
    case SweepAxis::TemperatureK: return "temperature";
    case SweepAxis::JOverOmegaM: return "J";
  }
  return "?";
}

namespace detail {

inline constexpr std::string_view omega_suffix = "_in_omega_m";

class Section {
public:
  Section(const json& root, std::string name) : name_(std::move(name)) {
    if (!root.is_object()) throw ConfigError("configuration root must be an object");
    auto it = root.find(name_);
    if (it == root.end()) return;
    if (!it->is_object()) throw ConfigError("section '" + name_ + "' must be an object");
    node_ = &*it;
  }

  // Restrict to known keys so typos are reported rather than ignored.
  void allow(std::initializer_list<std::string_view> keys) const {
    if (!node_) return;
    std::set<std::string_view> known(keys);
    for (auto it = node_->begin(); it != node_->end(); ++it) {
      if (!known.count(it.key())) throw ConfigError("unknown key '" + name_ + "." + it.key() + "'");
    }
  }

  void number(std::string_view key, double& out) const {
    if (const json* v = find(key)) out = as_number(*v, key);
  }

  // Frequency given either in rad/s under `key` or in units of omega_m.
  // Returns true when a value was present.
  bool frequency(std::string_view key, double omega_m, double& out) const {
    const std::string scaled = std::string(key) + std::string(omega_suffix);
    const json* plain = find(key);
    const json* rel = find(scaled);
    if (plain && rel) throw ConfigError("both '" + path(key) + "' and '" + path(scaled) + "' given");
    if (plain) out = as_number(*plain, key);
    if (rel) out = as_number(*rel, scaled) * omega_m;
    return plain || rel;
  }

  const json* find(std::string_view key) const {
    if (!node_) return nullptr;
    auto it = node_->find(std::string(key));
    return it == node_->end() ? nullptr : &*it;
  }

  std::string path(std::string_view key) const { return name_ + "." + std::string(key); }

  double as_number(const json& v, std::string_view key) const {
    if (!v.is_number()) throw ConfigError("'" + path(key) + "' must be a number");
    return v.get<double>();
  }

  std::string string(std::string_view key, std::string fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError("'" + path(key) + "' must be a string");
    return v->get<std::string>();
  }

private:
  std::string name_;
  const json* node_ = nullptr;
};

inline void check_sections(const json& root) {
  static const std::set<std::string> known = {"cavity", "drive", "mirror", "atoms", "detuning", "sweep", "tcrit"};
  for (auto it = root.begin(); it != root.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError("unknown section '" + it.key() + "'");
  }
}

}  // namespace detail

inline PhysicalParams params_from_json(const json& root) {
  using detail::Section;
  if (!root.is_object()) throw ConfigError("configuration root must be an object");
  detail::check_sections(root);
  PhysicalParams p;

  const Section mirror(root, "mirror");
  mirror.allow({"frequency", "mass", "damping", "damping_in_omega_m", "temperature"});
  mirror.number("frequency", p.mech_frequency);
  const double wm = p.mech_frequency;
  mirror.number("mass", p.mech_mass);
  mirror.frequency("damping", wm, p.mech_damping);
  mirror.number("temperature", p.temperature);

  const Section cavity(root, "cavity");
  cavity.allow({"length", "decay_rate", "decay_rate_in_omega_m", "coupling_J", "coupling_J_in_omega_m"});
  cavity.number("length", p.cavity_length);
  cavity.frequency("decay_rate", wm, p.cavity_decay);
  cavity.frequency("coupling_J", wm, p.cavity_coupling);

  const Section drive(root, "drive");
  drive.allow({"wavelength", "power"});
  drive.number("wavelength", p.drive_wavelength);
  drive.number("power", p.drive_power);

  const Section atoms(root, "atoms");
  atoms.allow({"decay_rate", "decay_rate_in_omega_m", "coupling_G_a", "coupling_G_a_in_omega_m", "detuning",
               "detuning_in_omega_m", "number"});
  atoms.frequency("decay_rate", wm, p.atom_decay);
  atoms.frequency("coupling_G_a", wm, p.atom_coupling);
  p.atom_detuning = -wm;
  p.atom_detuning_assumed = !atoms.frequency("detuning", wm, p.atom_detuning);
  atoms.number("number", p.atom_number);

  const Section det(root, "detuning");
  det.allow({"mode", "delta", "delta_in_omega_m", "delta1", "delta1_in_omega_m", "delta2", "delta2_in_omega_m"});
  const std::string mode = det.string("mode", "effective");
  if (mode == "effective") {
    if (det.find("delta1") || det.find("delta2") || det.find("delta1_in_omega_m") || det.find("delta2_in_omega_m"))
      throw ConfigError("effective detuning mode takes only 'delta'");
    EffectiveDetuning eff{wm};
    det.frequency("delta", wm, eff.delta);
    p.detuning = eff;
  } else if (mode == "bare") {
    if (det.find("delta") || det.find("delta_in_omega_m"))
      throw ConfigError("bare detuning mode takes 'delta1' and 'delta2'");
    BareDetuning bare{-wm, wm};
    det.frequency("delta1", wm, bare.delta1);
    det.frequency("delta2", wm, bare.delta2);
    p.detuning = bare;
  } else {
    throw ConfigError("detuning.mode must be 'effective' or 'bare'");
  }

  try {
    validate(p);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  return p;
}

// Canonical form: every value in SI / rad/s, no "_in_omega_m" keys. Doubles are
// written in round-trip precision, so re-parsing reproduces p exactly.
inline json params_to_json(const PhysicalParams& p) {
  json j;
  j["cavity"] = {{"length", p.cavity_length}, {"decay_rate", p.cavity_decay}, {"coupling_J", p.cavity_coupling}};
  j["drive"] = {{"wavelength", p.drive_wavelength}, {"power", p.drive_power}};
  j["mirror"] = {{"frequency", p.mech_frequency},
                 {"mass", p.mech_mass},
                 {"damping", p.mech_damping},
                 {"temperature", p.temperature}};
  j["atoms"] = {{"decay_rate", p.atom_decay}, {"coupling_G_a", p.atom_coupling}, {"number", p.atom_number}};
  if (!p.atom_detuning_assumed) j["atoms"]["detuning"] = p.atom_detuning;
  if (const auto* eff = std::get_if<EffectiveDetuning>(&p.detuning)) {
    j["detuning"] = {{"mode", "effective"}, {"delta", eff->delta}};
  } else {
    const auto& bare = std::get<BareDetuning>(p.detuning);
    j["detuning"] = {{"mode", "bare"}, {"delta1", bare.delta1}, {"delta2", bare.delta2}};
  }
  return j;
}

inline SweepSpec sweep_from_json(const json& root) {
  SweepSpec s;
  s.base = params_from_json(root);
  const detail::Section sec(root, "sweep");
  sec.allow({"axis", "start", "stop", "points", "overlay_axis", "overlays", "threads"});
  s.axis = parse_axis(sec.string("axis", "delta"));
  sec.number("start", s.start);
  sec.number("stop", s.stop);
  if (const json* v = sec.find("points")) {
    if (!v->is_number_integer()) throw ConfigError("'sweep.points' must be an integer");
    s.points = v->get<int>();
  }
  if (sec.find("overlay_axis")) s.overlay_axis = parse_axis(sec.string("overlay_axis", ""));
  if (const json* v = sec.find("overlays")) {
    if (!v->is_array()) throw ConfigError("'sweep.overlays' must be a list");
    for (const auto& e : *v) s.overlays.push_back(sec.as_number(e, "overlays"));
  }
  if (const json* v = sec.find("threads")) {
    if (!v->is_number_integer() || v->get<long long>() < 0)
      throw ConfigError("'sweep.threads' must be a nonnegative integer");
    s.threads = v->get<unsigned>();
  }
  validate(s);
  return s;
}

inline TcritSettings tcrit_from_json(const json& root) {
  TcritSettings t;
  const detail::Section sec(root, "tcrit");
  sec.allow({"pair", "t_max", "tolerance"});
  if (sec.find("pair")) t.pair = parse_pair(sec.string("pair", ""));
  sec.number("t_max", t.t_max);
  sec.number("tolerance", t.tolerance);
  if (!(t.tolerance > 0.0)) throw ConfigError("'tcrit.tolerance' must be positive");
  return t;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
}

// Apply "section.key=value". The value is read as JSON when it parses
// (numbers, lists, quoted strings) and as a bare string otherwise.
inline void apply_override(json& root, std::string_view assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq || dot == 0 || dot + 1 == eq)
    throw ConfigError("override must look like section.key=value, got '" + std::string(assignment) + "'");
  const std::string section(assignment.substr(0, dot));
  const std::string key(assignment.substr(dot + 1, eq - dot - 1));
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = text;
  if (!root.is_object()) root = json::object();
  json& sec = root[section];
  if (!sec.is_object()) sec = json::object();
  // An override replaces whichever unit form was in the file.
  const std::string suffix(detail::omega_suffix);
  if (key.size() > suffix.size() && key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0) {
    sec.erase(key.substr(0, key.size() - suffix.size()));
  } else {
    sec.erase(key + suffix);
  }
  sec[key] = std::move(value);
}

}  // namespace optoent

#endif  // OPTOENT_CONFIG_HPP
