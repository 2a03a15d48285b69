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

#ifndef QWALK_TIME_BINS_HPP
#define QWALK_TIME_BINS_HPP

namespace qwalk {

/// Arrival-time layout of the time-multiplexed loop. Position x at step t
/// arrives at t * loop_time + x * position_pitch; neighbouring occupied
/// positions of one step are 2 * position_pitch apart.
///
/// The defaults put the first interlacing of consecutive steps at horizon 20
/// and the first pair of bins closer than 5 ns at horizon 39 (2 ns apart).
struct TimeBinMap {
  double loop_time_ns = 1901.0;
  double position_pitch_ns = 50.0;
  double detection_window_ns = 4.8;

  /// Positive fields, and loop_time not an integer multiple of
  /// 2 * position_pitch. Throws std::invalid_argument otherwise.
  void validate() const;

  bool operator==(const TimeBinMap&) const = default;
};

/// Throws std::invalid_argument when (x, t) is off the light cone.
double arrival_time(int x, int t, const TimeBinMap& map);

struct BinReport {
  int horizon = 0;
  double min_separation_ns = 0.0;
  /// Some step's bins lie inside the time span of another step.
  bool interlaced = false;
  /// Two bins closer than min_separation_ns.
  bool collision = false;
  /// Smallest horizon at which interlacing / a collision first appears, or -1.
  int first_interlaced_horizon = -1;
  int first_collision_horizon = -1;
  /// Closest pair of distinct bins within the horizon.
  double closest_gap_ns = 0.0;
  int closest_a_x = 0, closest_a_t = 0, closest_b_x = 0, closest_b_t = 0;
};

BinReport check_bin_uniqueness(const TimeBinMap& map, int T, double min_separation_ns = 5.0);

}  // namespace qwalk

#endif  // QWALK_TIME_BINS_HPP
