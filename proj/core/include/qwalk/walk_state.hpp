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

#ifndef QWALK_WALK_STATE_HPP
#define QWALK_WALK_STATE_HPP

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Coined walker on the integer line after `step` steps from the origin.
///
/// Amplitudes live in a dense light-cone buffer of length 2(2t+1), indexed by
/// (x + t, coin). Sites with x of the wrong parity are always zero. The state
/// is not renormalized after absorption: norm_squared() is then the survival
/// probability.
class WalkState {
 public:
  /// Walker at x = 0 carrying the given coin amplitudes.
  /// Throws std::invalid_argument if |α_R|² + |α_L|² differs from 1 by more
  /// than 1e-9.
  static WalkState initial(const InitialSpec& spec);

  /// Builds a state from a raw light-cone buffer. Throws if the buffer length
  /// is not 2(2·step+1) or an off-parity site is nonzero.
  static WalkState from_amplitudes(int step, std::vector<Amplitude> amplitudes);

  int step() const { return step_; }
  double norm_squared() const { return norm_squared_; }

  int min_position() const { return -step_; }
  int max_position() const { return step_; }

  /// Zero outside the light cone.
  Amplitude amplitude(int x, CoinLabel c) const;
  double site_probability(int x) const;

  std::span<const Amplitude> amplitudes() const { return amps_; }

  /// In-place coin toss followed by the conditional shift.
  void advance(const CoinSpec& coin);

  /// Multiplies every amplitude by factor(x, c) and returns the removed
  /// probability (norm before minus norm after).
  double attenuate(const std::function<double(int, CoinLabel)>& factor);

  /// Multiplies one site amplitude by `factor`; returns the removed probability.
  double scale_site(int x, CoinLabel c, double factor);

  friend WalkState apply_coin(const WalkState& state, const CoinSpec& coin);
  friend WalkState apply_shift(const WalkState& state);

 private:
  WalkState(int step, std::vector<Amplitude> amplitudes);

  std::size_t index(int x, CoinLabel c) const {
    return 2 * static_cast<std::size_t>(x + step_) + index_of(c);
  }
  bool in_cone(int x) const { return x >= -step_ && x <= step_ && ((x + step_) % 2 == 0); }
  void refresh_norm();

  int step_ = 0;
  std::vector<Amplitude> amps_;
  double norm_squared_ = 0.0;
};

/// (a_R, a_L) <- C (a_R, a_L) at every site; step unchanged.
WalkState apply_coin(const WalkState& state, const CoinSpec& coin);

/// R amplitudes move to x+1, L amplitudes to x-1; step incremented.
WalkState apply_shift(const WalkState& state);

/// apply_shift(apply_coin(state, coin)).
WalkState step(const WalkState& state, const CoinSpec& coin);

/// Coin used for the step that produces state t (t >= 1).
using CoinSchedule = std::function<CoinSpec(int step)>;

WalkState evolve(WalkState state, const CoinSpec& coin, int steps);
WalkState evolve(WalkState state, const CoinSchedule& coins, int steps);

struct PositionDistribution {
  /// Conditional distribution, sums to 1.
  std::map<int, double> normalized;
  /// |a_R|² + |a_L|² without normalization.
  std::map<int, double> raw;
};

/// Marginalizes the coin. Only positions with nonzero probability appear.
/// Throws ComputationError("vanished state") on an all-zero state.
PositionDistribution position_distribution(const WalkState& state);

}  // namespace qwalk

#endif  // QWALK_WALK_STATE_HPP
