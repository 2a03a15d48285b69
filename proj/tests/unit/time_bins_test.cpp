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

#include <cmath>
#include <vector>

#include "qwalk/time_bins.hpp"

using namespace qwalk;

namespace {

// Smallest gap between any two light-cone bins with t <= T, by brute force.
double brute_force_gap(const TimeBinMap& map, int T) {
  std::vector<double> times;
  for (int t = 0; t <= T; ++t) {
    for (int x = -t; x <= t; x += 2) times.push_back(t * map.loop_time_ns + x * map.position_pitch_ns);
  }
  double best = INFINITY;
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = i + 1; j < times.size(); ++j) best = std::min(best, std::abs(times[i] - times[j]));
  }
  return best;
}

}  // namespace

TEST(ArrivalTime, Examples) {
  const TimeBinMap coarse{2050.0, 50.0, 4.8};
  EXPECT_EQ(arrival_time(0, 0, coarse), 0.0);
  EXPECT_EQ(arrival_time(2, 2, coarse), 4200.0);
  EXPECT_EQ(arrival_time(-1, 1, coarse), 2000.0);
  EXPECT_EQ(arrival_time(2, 2, TimeBinMap{}), 2 * 1901.0 + 100.0);
}

TEST(ArrivalTime, OffLightCone) {
  EXPECT_THROW(arrival_time(1, 0, {}), std::invalid_argument);
  EXPECT_THROW(arrival_time(3, 2, {}), std::invalid_argument);
  EXPECT_THROW(arrival_time(0, 1, {}), std::invalid_argument);
  EXPECT_THROW(arrival_time(0, -2, {}), std::invalid_argument);
}

TEST(TimeBinMap, Validation) {
  EXPECT_NO_THROW(TimeBinMap{}.validate());
  EXPECT_THROW((TimeBinMap{2000.0, 50.0, 4.8}.validate()), std::invalid_argument);
  EXPECT_THROW((TimeBinMap{-1.0, 50.0, 4.8}.validate()), std::invalid_argument);
  EXPECT_THROW((TimeBinMap{1901.0, 50.0, 0.0}.validate()), std::invalid_argument);
}

TEST(BinUniqueness, DefaultExamples) {
  const BinReport early = check_bin_uniqueness({}, 19);
  EXPECT_FALSE(early.interlaced);
  EXPECT_FALSE(early.collision);

  const BinReport mid = check_bin_uniqueness({}, 36);
  EXPECT_TRUE(mid.interlaced);
  EXPECT_FALSE(mid.collision);
  EXPECT_EQ(mid.first_interlaced_horizon, 20);

  const BinReport late = check_bin_uniqueness({}, 45);
  EXPECT_TRUE(late.collision);
}

TEST(BinUniqueness, ClosestPairMatchesBruteForce) {
  for (const TimeBinMap& map : {TimeBinMap{}, TimeBinMap{2050.0, 50.0, 4.8}, TimeBinMap{1733.0, 37.0, 4.8}}) {
    for (int T : {1, 5, 22, 41, 60}) {
      const BinReport r = check_bin_uniqueness(map, T);
      EXPECT_DOUBLE_EQ(r.closest_gap_ns, brute_force_gap(map, T)) << map.loop_time_ns << " T=" << T;
      EXPECT_DOUBLE_EQ(std::abs(arrival_time(r.closest_a_x, r.closest_a_t, map) -
                                arrival_time(r.closest_b_x, r.closest_b_t, map)),
                       r.closest_gap_ns);
    }
  }
}

TEST(BinUniqueness, FirstCollisionIsTheFirstFailingHorizon) {
  const BinReport full = check_bin_uniqueness({}, 60);
  ASSERT_TRUE(full.collision);
  const int first = full.first_collision_horizon;
  EXPECT_FALSE(check_bin_uniqueness({}, first - 1).collision);
  EXPECT_TRUE(check_bin_uniqueness({}, first).collision);
  EXPECT_GE(brute_force_gap({}, first - 1), 5.0);
  EXPECT_LT(brute_force_gap({}, first), 5.0);
}

// Landmarks as stated: interlacing from step 20, collision-free through 39,
// collisions from 40. No loop/pitch pair meets both ends; the default map
// collides at step 39, so this fails.
TEST(BinUniqueness, LandmarksAsStated) {
  const TimeBinMap map;
  EXPECT_FALSE(check_bin_uniqueness(map, 19).interlaced);
  EXPECT_TRUE(check_bin_uniqueness(map, 20).interlaced);
  const BinReport through39 = check_bin_uniqueness(map, 39);
  EXPECT_FALSE(through39.collision) << "closest pair (" << through39.closest_a_x << ","
                                    << through39.closest_a_t << ") vs (" << through39.closest_b_x
                                    << "," << through39.closest_b_t << ") gap "
                                    << through39.closest_gap_ns << " ns";
  EXPECT_TRUE(check_bin_uniqueness(map, 40).collision);
}
