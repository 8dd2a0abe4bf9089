// Copyright 2026 The TNG Authors.
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

#include "tng/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tng {
namespace {

constexpr double kFloorY = 1e-16;
constexpr int kWidth = 880;
constexpr int kHeight = 560;
constexpr double kLeft = 80.0;
constexpr double kRight = 660.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 500.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_line_chart(const std::vector<PlotSeries>& series,
                           const std::string& x_label,
                           const std::string& y_label) {
  if (series.empty()) throw std::invalid_argument("no series to plot");

  double x_min = 0.0;
  double x_max = 1.0;
  double ly_min = 0.0;
  double ly_max = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      const double ly = std::log10(std::max(y, kFloorY));
      if (first) {
        x_min = x_max = x;
        ly_min = ly_max = ly;
        first = false;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        ly_min = std::min(ly_min, ly);
        ly_max = std::max(ly_max, ly);
      }
    }
  }
  if (first) throw std::invalid_argument("all series are empty");
  if (x_max == x_min) x_max = x_min + 1.0;
  double dec_lo = std::floor(ly_min);
  double dec_hi = std::ceil(ly_max);
  if (dec_hi == dec_lo) dec_hi += 1.0;

  auto px = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  auto py = [&](double ly) {
    return kBottom - (ly - dec_lo) / (dec_hi - dec_lo) * (kBottom - kTop);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
         "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(kHeight) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  out += "<line x1=\"" + fmt2(kLeft) + "\" y1=\"" + fmt2(kBottom) + "\" x2=\"" +
         fmt2(kRight) + "\" y2=\"" + fmt2(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + fmt2(kLeft) + "\" y1=\"" + fmt2(kTop) + "\" x2=\"" +
         fmt2(kLeft) + "\" y2=\"" + fmt2(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // X ticks.
  for (int i = 0; i <= 5; ++i) {
    const double x = x_min + (x_max - x_min) * i / 5.0;
    const double gx = px(x);
    out += "<line x1=\"" + fmt2(gx) + "\" y1=\"" + fmt2(kBottom) + "\" x2=\"" +
           fmt2(gx) + "\" y2=\"" + fmt2(kBottom + 5) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt2(gx) + "\" y=\"" + fmt2(kBottom + 20) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + fmt(x) +
           "</text>\n";
  }
  out += "<text x=\"" + fmt2((kLeft + kRight) / 2) + "\" y=\"" +
         fmt2(kBottom + 45) + "\" font-size=\"13\" text-anchor=\"middle\">" +
         escape(x_label) + "</text>\n";

  // Y decade ticks.
  const int decades = static_cast<int>(dec_hi - dec_lo);
  const int step = std::max(1, (decades + 11) / 12);
  for (int d = 0; d <= decades; d += step) {
    const double ly = dec_lo + d;
    const double gy = py(ly);
    out += "<line x1=\"" + fmt2(kLeft - 5) + "\" y1=\"" + fmt2(gy) +
           "\" x2=\"" + fmt2(kRight) + "\" y2=\"" + fmt2(gy) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt2(kLeft - 8) + "\" y=\"" + fmt2(gy + 4) +
           "\" font-size=\"12\" text-anchor=\"end\">1e" + fmt(ly) +
           "</text>\n";
  }
  out += "<text x=\"18\" y=\"" + fmt2((kTop + kBottom) / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 "
         "18 " + fmt2((kTop + kBottom) / 2) + ")\">" + escape(y_label) +
         "</text>\n";

  // Series.
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    for (const auto& [x, y] : series[i].points) {
      const double ly = std::log10(std::max(y, kFloorY));
      pts += fmt2(px(x)) + "," + fmt2(py(ly)) + " ";
    }
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    // Legend entry.
    const double ly_pos = kTop + 18.0 * static_cast<double>(i);
    out += "<line x1=\"" + fmt2(kRight + 12) + "\" y1=\"" + fmt2(ly_pos) +
           "\" x2=\"" + fmt2(kRight + 36) + "\" y2=\"" + fmt2(ly_pos) +
           "\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt2(kRight + 42) + "\" y=\"" + fmt2(ly_pos + 4) +
           "\" font-size=\"12\">" + escape(series[i].label) + "</text>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace tng
