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

#include "qwalk/time_bins.hpp"

#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace qwalk {

void TimeBinMap::validate() const {
  if (!(loop_time_ns > 0.0 && position_pitch_ns > 0.0 && detection_window_ns > 0.0)) {
    throw std::invalid_argument("time-bin map fields must be positive");
  }
  const double ratio = loop_time_ns / (2.0 * position_pitch_ns);
  if (std::abs(ratio - std::round(ratio)) < 1e-12) {
    throw std::invalid_argument("loop time must not be an integer multiple of the bin spacing");
  }
}

double arrival_time(int x, int t, const TimeBinMap& map) {
  if (t < 0 || x < -t || x > t || (x + t) % 2 != 0) {
    throw std::invalid_argument("(" + std::to_string(x) + ", " + std::to_string(t) +
                                ") is off the light cone");
  }
  return t * map.loop_time_ns + x * map.position_pitch_ns;
}

BinReport check_bin_uniqueness(const TimeBinMap& map, int T, double min_separation_ns) {
  map.validate();
  if (T < 0) throw std::invalid_argument("check_bin_uniqueness: horizon must be >= 0");
  BinReport report;
  report.horizon = T;
  report.min_separation_ns = min_separation_ns;
  report.closest_gap_ns = std::numeric_limits<double>::infinity();

  // Bins are inserted step by step; a new bin's nearest neighbours in time
  // are the only candidates for a new closest pair.
  std::multimap<double, std::pair<int, int>> bins;
  double previous_latest = -std::numeric_limits<double>::infinity();
  for (int t = 0; t <= T; ++t) {
    if (t > 0 && previous_latest > arrival_time(-t, t, map) && report.first_interlaced_horizon < 0) {
      report.first_interlaced_horizon = t;
    }
    previous_latest = std::max(previous_latest, arrival_time(t, t, map));
    for (int x = -t; x <= t; x += 2) {
      const double a = arrival_time(x, t, map);
      auto it = bins.emplace(a, std::make_pair(x, t));
      auto consider = [&](auto other) {
        const double gap = std::abs(other->first - a);
        if (gap < report.closest_gap_ns) {
          report.closest_gap_ns = gap;
          report.closest_a_x = other->second.first;
          report.closest_a_t = other->second.second;
          report.closest_b_x = x;
          report.closest_b_t = t;
        }
        if (gap < min_separation_ns && report.first_collision_horizon < 0) {
          report.first_collision_horizon = t;
        }
      };
      if (it != bins.begin()) consider(std::prev(it));
      if (auto nx = std::next(it); nx != bins.end()) consider(nx);
    }
  }
  report.interlaced = report.first_interlaced_horizon >= 0;
  report.collision = report.first_collision_horizon >= 0;
  return report;
}

}  // namespace qwalk
