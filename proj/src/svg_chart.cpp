// Copyright 2026 The qgsa developers
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

#include "svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "text_format.hpp"

namespace qgsa::bench {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 56.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double value) {
  // Round to a few significant digits so tick text stays short.
  if (value == 0.0) {
    return "0";
  }
  const double magnitude = std::pow(10.0, std::floor(std::log10(std::abs(value))) - 3.0);
  return detail::double_str(std::round(value / magnitude) * magnitude);
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<ChartSeries>& series) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const ChartSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!(x_lo <= x_hi)) {
    x_lo = 0.0;
    x_hi = 1.0;
  }
  if (!(y_lo <= y_hi)) {
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (x_hi == x_lo) {
    x_hi = x_lo + 1.0;
  }
  if (y_hi == y_lo) {
    y_hi = y_lo + 1.0;
  }

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto sx = [&](double x) { return kMarginLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto sy = [&](double y) { return kMarginTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::double_str(kWidth) +
         "\" height=\"" + detail::double_str(kHeight) + "\" font-family=\"sans-serif\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + detail::double_str(kWidth / 2) +
         "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + escape_xml(title) +
         "</text>\n";

  // Frame and ticks.
  svg += "<rect x=\"" + detail::double_str(kMarginLeft) + "\" y=\"" +
         detail::double_str(kMarginTop) + "\" width=\"" + detail::double_str(plot_w) +
         "\" height=\"" + detail::double_str(plot_h) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / kTicks;
    const double fy = y_lo + (y_hi - y_lo) * i / kTicks;
    svg += "<line x1=\"" + detail::double_str(sx(fx)) + "\" y1=\"" +
           detail::double_str(kMarginTop + plot_h) + "\" x2=\"" + detail::double_str(sx(fx)) +
           "\" y2=\"" + detail::double_str(kMarginTop + plot_h + 5) +
           "\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"" + detail::double_str(sx(fx)) + "\" y=\"" +
           detail::double_str(kMarginTop + plot_h + 20) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + tick_label(fx) + "</text>\n";
    svg += "<line x1=\"" + detail::double_str(kMarginLeft - 5) + "\" y1=\"" +
           detail::double_str(sy(fy)) + "\" x2=\"" + detail::double_str(kMarginLeft) +
           "\" y2=\"" + detail::double_str(sy(fy)) + "\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"" + detail::double_str(kMarginLeft - 9) + "\" y=\"" +
           detail::double_str(sy(fy) + 4) + "\" text-anchor=\"end\" font-size=\"11\">" +
           tick_label(fy) + "</text>\n";
  }
  svg += "<text x=\"" + detail::double_str(kMarginLeft + plot_w / 2) + "\" y=\"" +
         detail::double_str(kHeight - 14) + "\" text-anchor=\"middle\" font-size=\"13\">" +
         escape_xml(x_label) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + detail::double_str(kMarginTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
         detail::double_str(kMarginTop + plot_h / 2) + ")\">" + escape_xml(y_label) +
         "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    std::string points;
    for (const auto& [x, y] : series[s].points) {
      points += detail::double_str(sx(x)) + "," + detail::double_str(sy(y)) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    // Legend entry.
    const double ly = kMarginTop + 14.0 + 16.0 * static_cast<double>(s);
    svg += "<line x1=\"" + detail::double_str(kMarginLeft + plot_w - 150) + "\" y1=\"" +
           detail::double_str(ly) + "\" x2=\"" + detail::double_str(kMarginLeft + plot_w - 130) +
           "\" y2=\"" + detail::double_str(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + detail::double_str(kMarginLeft + plot_w - 124) + "\" y=\"" +
           detail::double_str(ly + 4) + "\" font-size=\"11\">" + escape_xml(series[s].label) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace qgsa::bench
