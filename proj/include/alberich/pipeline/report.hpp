#pragma once

#include "alberich/acoustics/unit_cell.hpp"
#include "alberich/core/csv.hpp"
#include "alberich/core/error.hpp"
#include "alberich/inverse/genetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace alberich::pipeline {

struct Series {
  std::string label;
  std::vector<double> frequencies;
  std::vector<double> values;
};

namespace svg {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

inline std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += ch;
    }
  }
  return out;
}

inline constexpr std::array<const char*, 6> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

/// Plot-area geometry shared by the renderer and its tests.
struct Frame {
  double width = 800.0;
  double height = 440.0;
  double left = 70.0;
  double right = 560.0;
  double top = 30.0;
  double bottom = 390.0;
};

} // namespace svg

inline void validate_series(const std::vector<Series>& series) {
  if (series.empty()) {
    throw InvalidInput("report needs at least one spectrum");
  }
  for (const auto& s : series) {
    if (s.label.find_first_of(",\n\r") != std::string::npos) {
      throw InvalidInput("series labels may not contain commas or line breaks");
    }
    if (s.frequencies.empty() || s.frequencies.size() != s.values.size()) {
      throw InvalidInput("series '" + s.label + "' is empty or has mismatched lengths");
    }
    for (std::size_t i = 0; i < s.frequencies.size(); ++i) {
      if (!(s.frequencies[i] > 0.0) || !std::isfinite(s.values[i])) {
        throw InvalidInput("series '" + s.label + "' has a non-positive frequency or non-finite value");
      }
    }
  }
}

/// Absorption against log frequency, one polyline per series, y from 0 to 1.
inline std::string render_absorption_svg(const std::vector<Series>& series, const std::string& title = "Absorption") {
  validate_series(series);
  const svg::Frame fr;
  double f_lo = series.front().frequencies.front();
  double f_hi = f_lo;
  for (const auto& s : series) {
    const auto [mn, mx] = std::minmax_element(s.frequencies.begin(), s.frequencies.end());
    f_lo = std::min(f_lo, *mn);
    f_hi = std::max(f_hi, *mx);
  }
  const double a = std::log10(f_lo);
  const double b = f_hi > f_lo ? std::log10(f_hi) : a + 1.0;
  auto px = [&](double f) { return fr.left + (std::log10(f) - a) / (b - a) * (fr.right - fr.left); };
  auto py = [&](double v) { return fr.bottom - std::clamp(v, 0.0, 1.0) * (fr.bottom - fr.top); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg::num(fr.width) << "\" height=\""
    << svg::num(fr.height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << svg::num(0.5 * (fr.left + fr.right)) << "\" y=\"18\" text-anchor=\"middle\">"
    << svg::escape(title) << "</text>\n";
  o << "<g id=\"axes\" stroke=\"black\" fill=\"none\">\n";
  o << "<rect x=\"" << svg::num(fr.left) << "\" y=\"" << svg::num(fr.top) << "\" width=\""
    << svg::num(fr.right - fr.left) << "\" height=\"" << svg::num(fr.bottom - fr.top) << "\"/>\n";
  o << "</g>\n<g id=\"ticks\" fill=\"black\">\n";
  for (int d = static_cast<int>(std::ceil(a - 1e-9)); d <= static_cast<int>(std::floor(b + 1e-9)); ++d) {
    const double x = px(std::pow(10.0, d));
    o << "<line x1=\"" << svg::num(x) << "\" y1=\"" << svg::num(fr.bottom) << "\" x2=\"" << svg::num(x)
      << "\" y2=\"" << svg::num(fr.bottom + 5) << "\" stroke=\"black\"/>";
    o << "<text x=\"" << svg::num(x) << "\" y=\"" << svg::num(fr.bottom + 18)
      << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double v = 0.2 * k;
    const double y = py(v);
    o << "<line x1=\"" << svg::num(fr.left - 5) << "\" y1=\"" << svg::num(y) << "\" x2=\"" << svg::num(fr.left)
      << "\" y2=\"" << svg::num(y) << "\" stroke=\"black\"/>";
    o << "<text x=\"" << svg::num(fr.left - 8) << "\" y=\"" << svg::num(y + 4) << "\" text-anchor=\"end\">"
      << svg::num(v).substr(0, 3) << "</text>\n";
  }
  o << "</g>\n";
  o << "<text x=\"" << svg::num(0.5 * (fr.left + fr.right)) << "\" y=\"" << svg::num(fr.height - 12)
    << "\" text-anchor=\"middle\">Frequency (Hz)</text>\n";
  o << "<text x=\"18\" y=\"" << svg::num(0.5 * (fr.top + fr.bottom))
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << svg::num(0.5 * (fr.top + fr.bottom))
    << ")\">Absorption coefficient</text>\n";

  o << "<g id=\"series\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    o << "<polyline class=\"series\" data-label=\"" << svg::escape(s.label) << "\" stroke=\""
      << svg::palette[k % svg::palette.size()] << "\" points=\"";
    for (std::size_t i = 0; i < s.frequencies.size(); ++i) {
      o << (i == 0 ? "" : " ") << svg::num(px(s.frequencies[i])) << "," << svg::num(py(s.values[i]));
    }
    o << "\"/>\n";
  }
  o << "</g>\n<g id=\"legend\">\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double y = fr.top + 12.0 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << svg::num(fr.right + 12) << "\" y1=\"" << svg::num(y) << "\" x2=\""
      << svg::num(fr.right + 36) << "\" y2=\"" << svg::num(y) << "\" stroke=\""
      << svg::palette[k % svg::palette.size()] << "\" stroke-width=\"2\"/>";
    o << "<text x=\"" << svg::num(fr.right + 42) << "\" y=\"" << svg::num(y + 4) << "\">"
      << svg::escape(series[k].label) << "</text>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

/// Cross-section of one unit cell: water on the left, steel plate on the
/// right, voids drawn at (D, B) with y measured down from the top edge.
inline std::string render_cell_svg(const acoustics::UnitCell& c, bool with_backing = true,
                                   double steel_mm = 30.0) {
  constexpr double scale = 4.0; // px per mm
  constexpr double margin = 40.0;
  const double plate = with_backing ? steel_mm : 0.0;
  const double w = 2.0 * margin + scale * (c.t + plate);
  const double h = 2.0 * margin + scale * c.h;
  auto X = [&](double mm) { return margin + scale * mm; };
  auto Y = [&](double mm) { return margin + scale * mm; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg::num(w) << "\" height=\"" << svg::num(h)
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<rect id=\"coating\" x=\"" << svg::num(X(0)) << "\" y=\"" << svg::num(Y(0)) << "\" width=\""
    << svg::num(scale * c.t) << "\" height=\"" << svg::num(scale * c.h)
    << "\" fill=\"#e8d9a8\" stroke=\"black\"/>\n";
  if (with_backing) {
    o << "<rect id=\"steel\" x=\"" << svg::num(X(c.t)) << "\" y=\"" << svg::num(Y(0)) << "\" width=\""
      << svg::num(scale * plate) << "\" height=\"" << svg::num(scale * c.h)
      << "\" fill=\"#9aa0a6\" stroke=\"black\"/>\n";
  }
  const std::array<std::array<double, 3>, 4> voids{{{c.D1, c.B1, c.r1}, {c.D1, c.B2, c.r1},
                                                    {c.D2, c.B3, c.r2}, {c.D2, c.B4, c.r2}}};
  for (const auto& v : voids) {
    o << "<circle class=\"void\" cx=\"" << svg::num(X(v[0])) << "\" cy=\"" << svg::num(Y(v[1])) << "\" r=\""
      << svg::num(scale * v[2]) << "\" fill=\"white\" stroke=\"black\"/>\n";
  }
  o << "<text x=\"" << svg::num(margin / 2) << "\" y=\"" << svg::num(h / 2) << "\" text-anchor=\"middle\">water</text>\n";
  o << "<text x=\"" << svg::num(X(0.5 * c.t)) << "\" y=\"" << svg::num(h - margin / 3)
    << "\" text-anchor=\"middle\">t = " << svg::num(c.t) << " mm, h = " << svg::num(c.h) << " mm</text>\n";
  o << "<text x=\"" << svg::num(X(0.5 * c.t)) << "\" y=\"" << svg::num(margin * 0.6)
    << "\" text-anchor=\"middle\">r1 = " << svg::num(c.r1) << ", r2 = " << svg::num(c.r2) << ", D1 = "
    << svg::num(c.D1) << ", D2 = " << svg::num(c.D2) << " mm</text>\n";
  o << "</svg>\n";
  return o.str();
}

inline void write_series_csv(std::ostream& os, const std::vector<Series>& series) {
  validate_series(series);
  os << "series,frequency_Hz,absorption\n";
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.frequencies.size(); ++i) {
      os << s.label << ',' << csv::format(s.frequencies[i]) << ',' << csv::format(s.values[i]) << '\n';
    }
  }
}

inline void write_trace_csv(std::ostream& os, const std::vector<inverse::GenerationStats>& trace) {
  csv::Writer w(os, {"generation", "best", "mean"});
  for (const auto& g : trace) {
    w.row({static_cast<double>(g.generation), g.best, g.mean});
  }
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw ConfigError("write failed for " + path.string());
  }
}

/// Writes absorption.svg, absorption.csv, optionally cell.svg and ga_trace.csv
/// into `dir`; returns the paths written.
inline std::vector<std::filesystem::path> emit_report(const std::filesystem::path& dir, const std::vector<Series>& spectra,
                                                      const std::optional<acoustics::UnitCell>& cell = std::nullopt,
                                                      const std::vector<inverse::GenerationStats>& trace = {},
                                                      bool with_backing = true) {
  validate_series(spectra);
  std::vector<std::filesystem::path> written;
  written.push_back(dir / "absorption.svg");
  write_text(written.back(), render_absorption_svg(spectra));
  std::ostringstream data;
  write_series_csv(data, spectra);
  written.push_back(dir / "absorption.csv");
  write_text(written.back(), data.str());
  if (cell) {
    written.push_back(dir / "cell.svg");
    write_text(written.back(), render_cell_svg(*cell, with_backing));
  }
  if (!trace.empty()) {
    std::ostringstream t;
    write_trace_csv(t, trace);
    written.push_back(dir / "ga_trace.csv");
    write_text(written.back(), t.str());
  }
  return written;
}

} // namespace alberich::pipeline
