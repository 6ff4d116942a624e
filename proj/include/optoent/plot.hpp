#ifndef OPTOENT_PLOT_HPP
#define OPTOENT_PLOT_HPP

#include <algorithm>
#include <array>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "optoent/sweep.hpp"

namespace optoent {

namespace detail {

inline std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

// Line plot of E_N for one pair against the sweep axis, one curve per overlay.
// Absent (unstable or failed) points break the curve.
inline void write_svg(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows,
                      BipartitePair pair = BipartitePair::MirrorAtoms, const std::string& note = {}) {
  constexpr double width = 720, height = 480;
  constexpr double left = 70, right = 170, top = 40, bottom = 60;
  constexpr double plot_w = width - left - right, plot_h = height - top - bottom;
  static constexpr std::array<const char*, 6> palette = {"#1f4e9c", "#c0392b", "#1e8449",
                                                         "#7d3c98", "#d68910", "#17202a"};

  double y_max = 0.0;
  for (const auto& r : rows)
    if (auto v = r.result.log_negativity(pair)) y_max = std::max(y_max, *v);
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  auto sx = [&](double x) { return left + plot_w * (x - spec.start) / (spec.stop - spec.start); };
  auto sy = [&](double y) { return top + plot_h * (1.0 - y / y_max); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">E_N ("
     << pair_name(pair) << ")";
  if (!note.empty()) os << " &#8212; " << detail::xml_escape(note);
  os << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double xv = spec.start + (spec.stop - spec.start) * k / 5.0;
    const double yv = y_max * k / 5.0;
    os << "<text x=\"" << detail::fmt("%.2f", sx(xv)) << "\" y=\"" << height - bottom + 18
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
       << detail::fmt("%.3g", xv) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << detail::fmt("%.2f", sy(yv) + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
       << detail::fmt("%.3g", yv) << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 16
     << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << axis_column(spec.axis)
     << "</text>\n";

  const std::size_t n_series = std::max<std::size_t>(spec.overlays.size(), 1);
  const std::size_t per_series = static_cast<std::size_t>(spec.points);
  for (std::size_t s = 0; s < n_series; ++s) {
    const char* colour = palette[s % palette.size()];
    std::string points;
    auto flush = [&] {
      if (!points.empty())
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\""
           << points << "\"/>\n";
      points.clear();
    };
    for (std::size_t k = 0; k < per_series && s * per_series + k < rows.size(); ++k) {
      const SweepRow& row = rows[s * per_series + k];
      const auto v = row.result.log_negativity(pair);
      if (!v) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += detail::fmt("%.2f", sx(row.axis_value)) + ',' + detail::fmt("%.2f", sy(*v));
    }
    flush();

    const double ly = top + 16.0 * static_cast<double>(s) + 10.0;
    std::string label = "single";
    if (!spec.overlays.empty())
      label = std::string(axis_column(spec.resolved_overlay_axis())) + " = " +
              detail::fmt("%g", spec.overlays[s]);
    os << "<line x1=\"" << width - right + 10 << "\" y1=\"" << ly << "\" x2=\"" << width - right + 30
       << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << width - right + 34 << "\" y=\"" << ly + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace optoent

#endif  // OPTOENT_PLOT_HPP
