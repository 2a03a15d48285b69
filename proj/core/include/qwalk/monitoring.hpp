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

#ifndef QWALK_MONITORING_HPP
#define QWALK_MONITORING_HPP

#include <functional>
#include <map>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

struct CoinSelection {
  bool r = true;
  bool l = true;

  bool contains(CoinLabel c) const { return c == CoinLabel::kR ? r : l; }
};

/// Absorbing sites that emulate the projector 1 - |0><0| (or generalizations
/// of it). A sink is applied after the unitary step of the step it names.
class SinkSchedule {
 public:
  using SitePredicate = std::function<bool(int position, int step)>;

  /// Ideal sink at x = 0 on every step, both coins.
  static SinkSchedule origin(double residual_transmission = 0.0);

  /// Sinks at a fixed set of positions on every step.
  static SinkSchedule at_positions(std::vector<int> positions, double residual_transmission = 0.0,
                                   CoinSelection coins = {});

  /// Throws std::invalid_argument if residual_transmission is outside [0, 1]
  /// or no coin is selected.
  SinkSchedule(SitePredicate sites, double residual_transmission = 0.0, CoinSelection coins = {});

  bool absorbs(int position, int step) const { return sites_(position, step); }
  /// Intensity fraction that survives an absorbing site.
  double residual_transmission() const { return residual_; }
  const CoinSelection& coins() const { return coins_; }

 private:
  SitePredicate sites_;
  double residual_;
  CoinSelection coins_;
};

struct SinkOutcome {
  WalkState surviving;
  double absorbed_probability;
};

/// Scales absorbed amplitudes by sqrt(residual). No renormalization.
SinkOutcome apply_sink(const WalkState& state, const SinkSchedule& schedule, int at_step);

/// In-place variant of apply_sink; returns the absorbed probability.
double absorb(WalkState& state, const SinkSchedule& schedule, int at_step);

/// Per-step recurrence quantities. Every vector is indexed by t = 0..horizon,
/// with the t = 0 entry holding the empty-history convention (p = 1, q = 0,
/// s = 1, cumulative sums 0). Vectors a scheme does not compute stay empty.
struct RecurrenceSeries {
  int horizon = 0;
  std::vector<double> p_origin;        // p(0,t), reset scheme
  std::vector<double> q_first_return;  // q(0,t), continual scheme
  std::vector<double> survival;        // s_t
  std::vector<double> P_continual;     // sum_{k<=t} q(0,k)
  std::vector<double> P_reset;         // 1 - prod_{k<=t} (1 - p(0,k))

  bool has_continual() const { return !q_first_return.empty(); }
  bool has_reset() const { return !p_origin.empty(); }

  bool operator==(const RecurrenceSeries&) const = default;
};

/// Total probability at x = 0 after t unitary steps.
double reset_probability(const InitialSpec& initial, const CoinSpec& coin, int t);

struct ConditionalState {
  /// U (M U)^{t-1} psi(0) / sqrt(s_{t-1}); sinks of step t not yet applied.
  WalkState state;
  double survival;
};

/// Throws ComputationError("fully absorbed") when s_{t-1} = 0.
ConditionalState conditional_evolve(const InitialSpec& initial, const CoinSpec& coin,
                                    const SinkSchedule& schedule, int t);

/// s_t = ||(M U)^t psi(0)||².
double survival_probability(const InitialSpec& initial, const CoinSpec& coin,
                            const SinkSchedule& schedule, int t);

/// p_c(x,t), summed over the coin. Sums to 1.
std::map<int, double> conditional_distribution(const InitialSpec& initial, const CoinSpec& coin,
                                               const SinkSchedule& schedule, int t);

/// q(0,t) = |<0| U (M U)^{t-1} |psi(0)>|² with the ideal origin sink.
double first_return_probability(const InitialSpec& initial, const CoinSpec& coin, int t);

/// Single O(T²) pass over the unnormalized conditional state. Fills
/// q_first_return, survival and P_continual.
RecurrenceSeries continual_recurrence(const InitialSpec& initial, const CoinSpec& coin, int T,
                                      const SinkSchedule& schedule = SinkSchedule::origin());

/// One unitary pass. Fills p_origin and P_reset.
RecurrenceSeries reset_recurrence(const InitialSpec& initial, const CoinSpec& coin, int T);

/// Both schemes in one series.
RecurrenceSeries recurrence(const InitialSpec& initial, const CoinSpec& coin, int T);

}  // namespace qwalk

#endif  // QWALK_MONITORING_HPP
