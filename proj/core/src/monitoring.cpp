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

#include "qwalk/monitoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {
namespace {

void require_positive_step(int t, const char* what) {
  if (t < 1) throw std::invalid_argument(std::string(what) + ": t must be >= 1");
}

}  // namespace

SinkSchedule::SinkSchedule(SitePredicate sites, double residual_transmission, CoinSelection coins)
    : sites_(std::move(sites)), residual_(residual_transmission), coins_(coins) {
  if (!sites_) throw std::invalid_argument("sink schedule needs a site predicate");
  if (!(residual_ >= 0.0 && residual_ <= 1.0)) {
    throw std::invalid_argument("sink residual transmission must lie in [0, 1]");
  }
  if (!coins_.r && !coins_.l) throw std::invalid_argument("sink must absorb at least one coin");
}

SinkSchedule SinkSchedule::origin(double residual_transmission) {
  return SinkSchedule([](int x, int) { return x == 0; }, residual_transmission);
}

SinkSchedule SinkSchedule::at_positions(std::vector<int> positions, double residual_transmission,
                                        CoinSelection coins) {
  std::sort(positions.begin(), positions.end());
  return SinkSchedule(
      [positions = std::move(positions)](int x, int) {
        return std::binary_search(positions.begin(), positions.end(), x);
      },
      residual_transmission, coins);
}

double absorb(WalkState& state, const SinkSchedule& schedule, int at_step) {
  const double factor = std::sqrt(schedule.residual_transmission());
  const CoinSelection& coins = schedule.coins();
  return state.attenuate([&](int x, CoinLabel c) {
    return schedule.absorbs(x, at_step) && coins.contains(c) ? factor : 1.0;
  });
}

SinkOutcome apply_sink(const WalkState& state, const SinkSchedule& schedule, int at_step) {
  WalkState out = state;
  const double absorbed = absorb(out, schedule, at_step);
  return {std::move(out), absorbed};
}

namespace {

// Unnormalized U (M U)^{t-1} psi(0).
WalkState unnormalized_conditional(const InitialSpec& initial, const CoinSpec& coin,
                                   const SinkSchedule& schedule, int t) {
  WalkState state = WalkState::initial(initial);
  for (int k = 1; k <= t; ++k) {
    state.advance(coin);
    if (k < t) absorb(state, schedule, k);
  }
  return state;
}

}  // namespace

double reset_probability(const InitialSpec& initial, const CoinSpec& coin, int t) {
  require_positive_step(t, "reset_probability");
  return evolve(WalkState::initial(initial), coin, t).site_probability(0);
}

ConditionalState conditional_evolve(const InitialSpec& initial, const CoinSpec& coin,
                                    const SinkSchedule& schedule, int t) {
  require_positive_step(t, "conditional_evolve");
  WalkState state = unnormalized_conditional(initial, coin, schedule, t);
  // The final U is unitary, so its norm equals s_{t-1}.
  const double survival = state.norm_squared();
  if (!(survival > 0.0)) throw ComputationError("fully absorbed");
  const double scale = 1.0 / std::sqrt(survival);
  state.attenuate([scale](int, CoinLabel) { return scale; });
  return {std::move(state), survival};
}

double survival_probability(const InitialSpec& initial, const CoinSpec& coin,
                            const SinkSchedule& schedule, int t) {
  if (t < 0) throw std::invalid_argument("survival_probability: t must be >= 0");
  WalkState state = WalkState::initial(initial);
  for (int k = 1; k <= t; ++k) {
    state.advance(coin);
    absorb(state, schedule, k);
  }
  return state.norm_squared();
}

std::map<int, double> conditional_distribution(const InitialSpec& initial, const CoinSpec& coin,
                                               const SinkSchedule& schedule, int t) {
  const ConditionalState cond = conditional_evolve(initial, coin, schedule, t);
  return position_distribution(cond.state).normalized;
}

double first_return_probability(const InitialSpec& initial, const CoinSpec& coin, int t) {
  require_positive_step(t, "first_return_probability");
  return unnormalized_conditional(initial, coin, SinkSchedule::origin(), t).site_probability(0);
}

RecurrenceSeries continual_recurrence(const InitialSpec& initial, const CoinSpec& coin, int T,
                                      const SinkSchedule& schedule) {
  require_positive_step(T, "continual_recurrence");
  RecurrenceSeries series;
  series.horizon = T;
  series.q_first_return.assign(T + 1, 0.0);
  series.survival.assign(T + 1, 0.0);
  series.P_continual.assign(T + 1, 0.0);
  series.survival[0] = 1.0;

  WalkState state = WalkState::initial(initial);
  double cumulative = 0.0;
  for (int t = 1; t <= T; ++t) {
    state.advance(coin);
    // The origin is read before the step-t sink acts.
    const double q = state.site_probability(0);
    cumulative += q;
    absorb(state, schedule, t);
    series.q_first_return[t] = q;
    series.P_continual[t] = cumulative;
    series.survival[t] = state.norm_squared();
  }
  return series;
}

RecurrenceSeries reset_recurrence(const InitialSpec& initial, const CoinSpec& coin, int T) {
  require_positive_step(T, "reset_recurrence");
  RecurrenceSeries series;
  series.horizon = T;
  series.p_origin.assign(T + 1, 0.0);
  series.P_reset.assign(T + 1, 0.0);
  series.p_origin[0] = 1.0;

  WalkState state = WalkState::initial(initial);
  double miss = 1.0;
  for (int t = 1; t <= T; ++t) {
    state.advance(coin);
    const double p = std::clamp(state.site_probability(0) / state.norm_squared(), 0.0, 1.0);
    miss *= 1.0 - p;
    series.p_origin[t] = p;
    series.P_reset[t] = 1.0 - miss;
  }
  return series;
}

RecurrenceSeries recurrence(const InitialSpec& initial, const CoinSpec& coin, int T) {
  RecurrenceSeries both = continual_recurrence(initial, coin, T);
  RecurrenceSeries reset = reset_recurrence(initial, coin, T);
  both.p_origin = std::move(reset.p_origin);
  both.P_reset = std::move(reset.P_reset);
  return both;
}

}  // namespace qwalk
