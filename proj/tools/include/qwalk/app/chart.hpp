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

// Static SVG charts. Output depends only on the input values, so repeated
// runs produce byte-identical files.

#ifndef QWALK_APP_CHART_HPP
#define QWALK_APP_CHART_HPP

#include <string>
#include <utility>
#include <vector>

namespace qwalk::app {

struct LineSeries {
  std::string label;
  std::string color;  // any SVG color
  std::vector<std::pair<double, double>> points;
};

struct ReferenceLine {
  std::string label;
  double y = 0.0;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<LineSeries> series;
  std::vector<ReferenceLine> references;
};

/// Position x step grid, drawn with a logarithmic color scale. Zero cells
/// are left blank.
struct Heatmap {
  std::string title;
  int horizon = 0;
  std::vector<std::vector<double>> cells;  // [t][x + horizon]
  double floor = 1e-6;                     // values below map to the lowest color
};

/// Both throw std::invalid_argument on empty input. `comment` (e.g. the
/// provenance line) is embedded as an XML comment when non-empty.
std::string render_line_chart(const LineChart& chart, const std::string& comment = {});
std::string render_heatmap(const Heatmap& map, const std::string& comment = {});

}  // namespace qwalk::app

#endif  // QWALK_APP_CHART_HPP
