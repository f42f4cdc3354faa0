// Copyright 2026 The ofc-pointing Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace ofcpoint {
namespace {

constexpr double kWidth = 720.0;
constexpr double kPanelHeight = 240.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 28.0;
constexpr double kBottom = 40.0;

std::string num(double v, int digits = 2) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, digits);
  return std::string(buf, r.ptr);
}

std::string tick(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
  return std::string(buf, r.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      const double pad = std::max(1e-9, 0.05 * std::abs(hi));
      lo -= pad;
      hi += pad;
    }
  }
};

void render_panel(std::ostringstream& out, const PlotPanel& p, double y0) {
  Range xr, yr;
  for (const auto& l : p.lines) {
    for (double v : l.x) xr.add(v);
    for (double v : l.y) yr.add(v);
  }
  for (const auto& b : p.bands) {
    for (double v : b.x) xr.add(v);
    for (double v : b.lo) yr.add(v);
    for (double v : b.hi) yr.add(v);
  }
  if (p.stripe) {
    yr.add(p.stripe->first);
    yr.add(p.stripe->second);
  }
  xr.finish();
  yr.finish();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kPanelHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return y0 + kTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * ph; };

  out << "<g>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(y0 + 18)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(p.title) << "</text>\n";
  if (p.stripe) {
    const double a = sy(std::max(p.stripe->first, p.stripe->second));
    const double b = sy(std::min(p.stripe->first, p.stripe->second));
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(a) << "\" width=\"" << num(pw)
        << "\" height=\"" << num(b - a) << "\" fill=\"#999999\" fill-opacity=\"0.25\"/>\n";
  }
  for (const auto& b : p.bands) {
    out << "<polygon fill=\"" << b.color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < b.x.size(); ++i) out << num(sx(b.x[i])) << ',' << num(sy(b.hi[i])) << ' ';
    for (std::size_t i = b.x.size(); i-- > 0;) out << num(sx(b.x[i])) << ',' << num(sy(b.lo[i])) << ' ';
    out << "\"/>\n";
  }
  for (const auto& l : p.lines) {
    out << "<polyline fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"1.5\"";
    if (l.dashed) out << " stroke-dasharray=\"5,3\"";
    out << " points=\"";
    const std::size_t n = std::min(l.x.size(), l.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (std::isfinite(l.y[i])) out << num(sx(l.x[i])) << ',' << num(sy(l.y[i])) << ' ';
    }
    out << "\"/>\n";
  }

  // Axes with min/max ticks.
  const double bottom = y0 + kTop + ph;
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(bottom) << "\" x2=\"" << num(kLeft + pw)
      << "\" y2=\"" << num(bottom) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y0 + kTop) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(bottom) << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << num(kLeft) << "\" y=\"" << num(bottom + 14)
      << "\" font-size=\"10\" text-anchor=\"middle\">" << tick(xr.lo) << "</text>\n";
  out << "<text x=\"" << num(kLeft + pw) << "\" y=\"" << num(bottom + 14)
      << "\" font-size=\"10\" text-anchor=\"middle\">" << tick(xr.hi) << "</text>\n";
  out << "<text x=\"" << num(kLeft - 4) << "\" y=\"" << num(bottom)
      << "\" font-size=\"10\" text-anchor=\"end\">" << tick(yr.lo) << "</text>\n";
  out << "<text x=\"" << num(kLeft - 4) << "\" y=\"" << num(y0 + kTop + 8)
      << "\" font-size=\"10\" text-anchor=\"end\">" << tick(yr.hi) << "</text>\n";
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(bottom + 30)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << escape(p.xlabel) << "</text>\n";
  out << "<text x=\"14\" y=\"" << num(y0 + kTop + ph / 2) << "\" font-size=\"11\" "
      << "text-anchor=\"middle\" transform=\"rotate(-90 14 " << num(y0 + kTop + ph / 2) << ")\">"
      << escape(p.ylabel) << "</text>\n";

  double ly = y0 + kTop + 12;
  for (const auto& l : p.lines) {
    if (l.label.empty()) continue;
    out << "<text x=\"" << num(kLeft + pw - 4) << "\" y=\"" << num(ly) << "\" font-size=\"10\" "
        << "text-anchor=\"end\" fill=\"" << l.color << "\">" << escape(l.label) << "</text>\n";
    ly += 12;
  }
  out << "</g>\n";
}

}  // namespace

std::string render_svg(const std::vector<PlotPanel>& panels) {
  std::ostringstream out;
  const double height = kPanelHeight * static_cast<double>(std::max<std::size_t>(1, panels.size()));
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth, 0) << "\" height=\""
      << num(height, 0) << "\" viewBox=\"0 0 " << num(kWidth, 0) << ' ' << num(height, 0)
      << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    render_panel(out, panels[i], kPanelHeight * static_cast<double>(i));
  }
  out << "</svg>\n";
  return out.str();
}

const std::string& palette(std::size_t i) {
  static const std::vector<std::string> colors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  return colors[i % colors.size()];
}

}  // namespace ofcpoint
