// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qwalk/app/chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qwalk::app {
namespace {

constexpr double kWidth = 760, kHeight = 500;
constexpr double kLeft = 70, kRight = 190, kTop = 44, kBottom = 56;
constexpr double kPlotW = kWidth - kLeft - kRight, kPlotH = kHeight - kTop - kBottom;

// Fixed-precision coordinates keep the output stable and compact.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

void header(std::ostringstream& svg, const std::string& title, const std::string& comment) {
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  if (!comment.empty()) {
    std::string safe = comment;
    for (std::size_t p; (p = safe.find("--")) != std::string::npos;) safe.replace(p, 2, "- -");
    svg << "<!-- " << safe << " -->\n";
  }
  svg << "<title>" << escape(title) << "</title>\n";
  svg << "<text x=\"" << num(kLeft + kPlotW / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << escape(title) << "</text>\n";
}

// Roughly five ticks at 1, 2 or 5 times a power of ten.
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0)) return {lo};
  const double raw = span / 5;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double stepv = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      stepv = m * mag;
      break;
    }
  }
  std::vector<double> out;
  for (double v = std::ceil(lo / stepv) * stepv; v <= hi + 1e-9 * span; v += stepv) {
    out.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  }
  return out;
}

struct Axes {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * kPlotW; }
  double py(double y) const { return kTop + kPlotH - (y - y0) / (y1 - y0) * kPlotH; }
};

void draw_axes(std::ostringstream& svg, const Axes& a, const std::string& xl, const std::string& yl,
               bool y_ticks = true) {
  svg << "<g stroke=\"#333\" fill=\"none\">\n";
  svg << "<path d=\"M" << num(kLeft) << ' ' << num(kTop) << "V" << num(kTop + kPlotH) << "H"
      << num(kLeft + kPlotW) << "\"/>\n";
  for (double x : ticks(a.x0, a.x1)) {
    svg << "<path d=\"M" << num(a.px(x)) << ' ' << num(kTop + kPlotH) << "v5\"/>\n";
  }
  if (y_ticks) {
    for (double y : ticks(a.y0, a.y1)) {
      svg << "<path d=\"M" << num(kLeft) << ' ' << num(a.py(y)) << "h-5\"/>\n";
    }
  }
  svg << "</g>\n<g fill=\"#333\">\n";
  for (double x : ticks(a.x0, a.x1)) {
    svg << "<text x=\"" << num(a.px(x)) << "\" y=\"" << num(kTop + kPlotH + 18)
        << "\" text-anchor=\"middle\">" << label_num(x) << "</text>\n";
  }
  if (y_ticks) {
    for (double y : ticks(a.y0, a.y1)) {
      svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(a.py(y) + 4)
          << "\" text-anchor=\"end\">" << label_num(y) << "</text>\n";
    }
  }
  svg << "<text x=\"" << num(kLeft + kPlotW / 2) << "\" y=\"" << num(kHeight - 14)
      << "\" text-anchor=\"middle\">" << escape(xl) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << num(kTop + kPlotH / 2) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 18 " << num(kTop + kPlotH / 2) << ")\">" << escape(yl)
      << "</text>\n</g>\n";
}

// Dark blue through teal to yellow.
std::string ramp(double u) {
  static constexpr std::array<std::array<double, 3>, 5> stops{{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  u = std::clamp(u, 0.0, 1.0) * (stops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), stops.size() - 2);
  const double f = u - i;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
  return buf;
}

}  // namespace

std::string render_line_chart(const LineChart& chart, const std::string& comment) {
  bool any = false;
  for (const LineSeries& s : chart.series) any = any || !s.points.empty();
  if (!any) throw std::invalid_argument("render_line_chart: empty series");

  Axes a{INFINITY, -INFINITY, 0.0, -INFINITY};
  for (const LineSeries& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      a.x0 = std::min(a.x0, x);
      a.x1 = std::max(a.x1, x);
      a.y0 = std::min(a.y0, y);
      a.y1 = std::max(a.y1, y);
    }
  }
  for (const ReferenceLine& r : chart.references) {
    a.y0 = std::min(a.y0, r.y);
    a.y1 = std::max(a.y1, r.y);
  }
  if (a.x1 <= a.x0) a.x1 = a.x0 + 1;
  if (a.y1 <= a.y0) a.y1 = a.y0 + 1;
  a.y1 += 0.05 * (a.y1 - a.y0);

  std::ostringstream svg;
  header(svg, chart.title, comment);
  draw_axes(svg, a, chart.x_label, chart.y_label);

  for (const ReferenceLine& r : chart.references) {
    svg << "<line class=\"reference\" x1=\"" << num(kLeft) << "\" y1=\"" << num(a.py(r.y))
        << "\" x2=\"" << num(kLeft + kPlotW) << "\" y2=\"" << num(a.py(r.y))
        << "\" stroke=\"#777\" stroke-dasharray=\"6 4\"/>\n";
  }
  for (const LineSeries& s : chart.series) {
    if (s.points.empty()) continue;
    svg << "<polyline fill=\"none\" stroke=\"" << escape(s.color)
        << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      svg << (i ? " " : "") << num(a.px(s.points[i].first)) << ',' << num(a.py(s.points[i].second));
    }
    svg << "\"/>\n";
  }

  // Legend.
  double ly = kTop + 10;
  const double lx = kLeft + kPlotW + 16;
  svg << "<g class=\"legend\">\n";
  for (const LineSeries& s : chart.series) {
    svg << "<path d=\"M" << num(lx) << ' ' << num(ly) << "h22\" stroke=\"" << escape(s.color)
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.label)
        << "</text>\n";
    ly += 20;
  }
  for (const ReferenceLine& r : chart.references) {
    svg << "<path d=\"M" << num(lx) << ' ' << num(ly)
        << "h22\" stroke=\"#777\" stroke-dasharray=\"6 4\"/>\n";
    svg << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly + 4) << "\">" << escape(r.label)
        << " = " << label_num(r.y) << "</text>\n";
    ly += 20;
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::string render_heatmap(const Heatmap& map, const std::string& comment) {
  if (map.cells.empty()) throw std::invalid_argument("render_heatmap: empty grid");
  const int T = map.horizon;
  const int width = 2 * T + 1;
  double hi = 0.0;
  for (const auto& row : map.cells) {
    if (static_cast<int>(row.size()) != width) {
      throw std::invalid_argument("render_heatmap: row width must be 2 * horizon + 1");
    }
    for (double v : row) hi = std::max(hi, v);
  }
  if (!(hi > 0.0)) throw std::invalid_argument("render_heatmap: no nonzero cells");
  const double lo = std::min(map.floor, hi / 10);
  const double log_lo = std::log10(lo), log_hi = std::log10(hi);

  // x in [-T - 0.5, T + 0.5], t grows downward like a chessboard diagram.
  Axes a{-T - 0.5, T + 0.5, 0, 1};
  std::ostringstream svg;
  header(svg, map.title, comment);
  const double cw = kPlotW / width;
  const double ch = kPlotH / static_cast<double>(map.cells.size());

  svg << "<g class=\"cells\">\n";
  for (std::size_t t = 0; t < map.cells.size(); ++t) {
    for (int i = 0; i < width; ++i) {
      const double v = map.cells[t][i];
      if (!(v > 0.0)) continue;
      const double u = (std::log10(std::max(v, lo)) - log_lo) / (log_hi - log_lo);
      svg << "<rect x=\"" << num(kLeft + i * cw) << "\" y=\"" << num(kTop + t * ch)
          << "\" width=\"" << num(cw) << "\" height=\"" << num(ch) << "\" fill=\"" << ramp(u)
          << "\"/>\n";
    }
  }
  svg << "</g>\n";
  draw_axes(svg, a, "position x", "step t", false);
  // Step labels along the left edge.
  svg << "<g fill=\"#333\">\n";
  for (double t : ticks(0, static_cast<double>(map.cells.size() - 1))) {
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(kTop + (t + 0.5) * ch + 4)
        << "\" text-anchor=\"end\">" << label_num(t) << "</text>\n";
  }
  svg << "</g>\n";

  // Color bar: a gradient-filled polygon, so <rect> stays one per cell.
  const double bx = kLeft + kPlotW + 30, bw = 18;
  svg << "<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">";
  for (int k = 0; k <= 4; ++k) {
    svg << "<stop offset=\"" << num(k / 4.0) << "\" stop-color=\"" << ramp(k / 4.0) << "\"/>";
  }
  svg << "</linearGradient></defs>\n";
  svg << "<polygon class=\"legend\" points=\"" << num(bx) << ',' << num(kTop) << ' '
      << num(bx + bw) << ',' << num(kTop) << ' ' << num(bx + bw) << ',' << num(kTop + kPlotH)
      << ' ' << num(bx) << ',' << num(kTop + kPlotH) << "\" fill=\"url(#scale)\" stroke=\"#333\"/>\n";
  svg << "<g fill=\"#333\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double exponent = log_lo + (log_hi - log_lo) * k / 4.0;
    svg << "<text x=\"" << num(bx + bw + 6) << "\" y=\"" << num(kTop + kPlotH * (1 - k / 4.0) + 4)
        << "\">" << label_num(std::pow(10.0, exponent)) << "</text>\n";
  }
  svg << "<text x=\"" << num(bx) << "\" y=\"" << num(kTop - 8) << "\">probability (log)</text>\n";
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace qwalk::app
