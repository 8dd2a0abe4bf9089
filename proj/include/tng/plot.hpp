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

#ifndef TNG_PLOT_HPP
#define TNG_PLOT_HPP

#include <string>
#include <utility>
#include <vector>

namespace tng {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y), y plotted on log10
};

// Standalone SVG line chart with a log-scale y axis; one polyline and one
// legend entry per series. Non-positive y values are clamped to 1e-16.
std::string svg_line_chart(const std::vector<PlotSeries>& series,
                           const std::string& x_label,
                           const std::string& y_label);

}  // namespace tng

#endif  // TNG_PLOT_HPP
