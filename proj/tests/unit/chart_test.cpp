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

#include <gtest/gtest.h>

#include <numbers>
#include <stdexcept>
#include <string>

#include "qwalk/app/chart.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/monitoring.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk::app {
namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

LineChart recurrence_chart(int T) {
  const RecurrenceSeries s = recurrence(InitialSpec::horizontal(), hadamard_coin(), T);
  LineChart chart{"Recurrence", "T", "P", {}, {}};
  LineSeries r{"reset", "#c0392b", {}}, c{"continual", "#2c6fbb", {}};
  for (int t = 0; t <= T; ++t) {
    r.points.emplace_back(t, s.P_reset[t]);
    c.points.emplace_back(t, s.P_continual[t]);
  }
  chart.series = {r, c};
  chart.references = {{"2/pi", 2.0 / std::numbers::pi}};
  return chart;
}

Heatmap walk_heatmap(int T) {
  Heatmap map{"p(x,t)", T, std::vector<std::vector<double>>(T + 1, std::vector<double>(2 * T + 1))};
  WalkState state = WalkState::initial(InitialSpec::horizontal());
  for (int t = 0; t <= T; ++t) {
    if (t > 0) state.advance(hadamard_coin());
    for (int x = -t; x <= t; x += 2) map.cells[t][x + T] = state.site_probability(x);
  }
  return map;
}

TEST(LineChartSvg, TwoPolylinesOneReference) {
  const std::string svg = render_line_chart(recurrence_chart(36));
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  EXPECT_EQ(count(svg, "class=\"reference\""), 1u);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg xmlns="), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("reset"), std::string::npos);
  EXPECT_NE(svg.find("continual"), std::string::npos);
  EXPECT_NE(svg.find("2/pi"), std::string::npos);
}

TEST(LineChartSvg, Deterministic) {
  EXPECT_EQ(render_line_chart(recurrence_chart(36), "c"), render_line_chart(recurrence_chart(36), "c"));
}

TEST(LineChartSvg, EmptySeriesRejected) {
  LineChart chart{"t", "x", "y", {}, {}};
  EXPECT_THROW(render_line_chart(chart), std::invalid_argument);
  chart.series.push_back({"a", "#000", {}});
  EXPECT_THROW(render_line_chart(chart), std::invalid_argument);
}

TEST(LineChartSvg, CommentCannotCloseXmlComment) {
  const std::string svg = render_line_chart(recurrence_chart(4), "a -- b -->");
  EXPECT_EQ(count(svg, "-->"), 1u);
}

TEST(HeatmapSvg, OneRectPerNonzeroCell) {
  const Heatmap map = walk_heatmap(36);
  ASSERT_EQ(map.cells.size(), 37u);
  ASSERT_EQ(map.cells[0].size(), 73u);
  std::size_t nonzero = 0;
  for (const auto& row : map.cells) {
    for (double v : row) nonzero += v > 0.0;
  }
  EXPECT_EQ(count(render_heatmap(map), "<rect"), nonzero);
}

TEST(HeatmapSvg, IdentityRidge) {
  Heatmap map{"ridge", 3, std::vector<std::vector<double>>(4, std::vector<double>(7))};
  for (int t = 0; t <= 3; ++t) map.cells[t][t + 3] = 1.0;
  EXPECT_EQ(count(render_heatmap(map), "<rect"), 4u);
}

TEST(HeatmapSvg, DeterministicAndRejectsEmpty) {
  EXPECT_EQ(render_heatmap(walk_heatmap(10)), render_heatmap(walk_heatmap(10)));
  EXPECT_THROW(render_heatmap(Heatmap{}), std::invalid_argument);
}

}  // namespace
}  // namespace qwalk::app
