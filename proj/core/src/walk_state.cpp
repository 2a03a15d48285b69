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

#include "qwalk/walk_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {
namespace {

std::size_t cone_size(int step) { return 2 * (2 * static_cast<std::size_t>(step) + 1); }

}  // namespace

WalkState::WalkState(int step, std::vector<Amplitude> amplitudes)
    : step_(step), amps_(std::move(amplitudes)) {
  refresh_norm();
}

WalkState WalkState::initial(const InitialSpec& spec) {
  if (std::abs(spec.norm_squared() - 1.0) > 1e-9) {
    throw std::invalid_argument("initial coin state is not normalized (|a_R|^2+|a_L|^2 = " +
                                std::to_string(spec.norm_squared()) + ")");
  }
  return WalkState(0, {spec.r, spec.l});
}

WalkState WalkState::from_amplitudes(int step, std::vector<Amplitude> amplitudes) {
  if (step < 0) throw std::invalid_argument("step must be nonnegative");
  if (amplitudes.size() != cone_size(step)) {
    throw std::invalid_argument("amplitude buffer must have length 2(2t+1) = " +
                                std::to_string(cone_size(step)));
  }
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    const bool off_parity = (i / 2) % 2 == 1;
    if (off_parity && amplitudes[i] != Amplitude{}) {
      throw std::invalid_argument("nonzero amplitude outside the light cone parity");
    }
  }
  return WalkState(step, std::move(amplitudes));
}

Amplitude WalkState::amplitude(int x, CoinLabel c) const {
  if (x < -step_ || x > step_) return {};
  return amps_[index(x, c)];
}

double WalkState::site_probability(int x) const {
  if (x < -step_ || x > step_) return 0.0;
  return std::norm(amps_[index(x, CoinLabel::kR)]) + std::norm(amps_[index(x, CoinLabel::kL)]);
}

void WalkState::refresh_norm() {
  double sum = 0.0;
  for (const Amplitude& a : amps_) sum += std::norm(a);
  norm_squared_ = sum;
}

void WalkState::advance(const CoinSpec& coin) {
  const auto& m = coin.matrix();
  std::vector<Amplitude> next(cone_size(step_ + 1));
  double sum = 0.0;
  // Site i = x + t moves R to (x+1) + (t+1) = i + 2 and L to (x-1) + (t+1) = i.
  for (std::size_t i = 0; i < amps_.size() / 2; i += 2) {
    const Amplitude r = amps_[2 * i];
    const Amplitude l = amps_[2 * i + 1];
    const Amplitude r_out = m[0][0] * r + m[0][1] * l;
    const Amplitude l_out = m[1][0] * r + m[1][1] * l;
    next[2 * (i + 2)] = r_out;
    next[2 * i + 1] = l_out;
    sum += std::norm(r_out) + std::norm(l_out);
  }
  amps_ = std::move(next);
  ++step_;
  norm_squared_ = sum;
}

double WalkState::attenuate(const std::function<double(int, CoinLabel)>& factor) {
  const double before = norm_squared_;
  for (int x = -step_; x <= step_; x += 2) {
    for (CoinLabel c : kCoinLabels) {
      const double f = factor(x, c);
      if (f != 1.0) amps_[index(x, c)] *= f;
    }
  }
  refresh_norm();
  return before - norm_squared_;
}

double WalkState::scale_site(int x, CoinLabel c, double factor) {
  if (!in_cone(x)) return 0.0;
  const double before = norm_squared_;
  amps_[index(x, c)] *= factor;
  refresh_norm();
  return before - norm_squared_;
}

WalkState apply_coin(const WalkState& state, const CoinSpec& coin) {
  std::vector<Amplitude> out(state.amps_.size());
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const CoinVector v = coin.apply({state.amps_[i], state.amps_[i + 1]});
    out[i] = v[0];
    out[i + 1] = v[1];
  }
  return WalkState(state.step_, std::move(out));
}

WalkState apply_shift(const WalkState& state) {
  const int t = state.step_;
  std::vector<Amplitude> out(cone_size(t + 1));
  WalkState next(t + 1, std::move(out));
  for (int x = -t; x <= t; ++x) {
    next.amps_[next.index(x + 1, CoinLabel::kR)] = state.amps_[state.index(x, CoinLabel::kR)];
    next.amps_[next.index(x - 1, CoinLabel::kL)] = state.amps_[state.index(x, CoinLabel::kL)];
  }
  next.refresh_norm();
  return next;
}

WalkState step(const WalkState& state, const CoinSpec& coin) {
  return apply_shift(apply_coin(state, coin));
}

WalkState evolve(WalkState state, const CoinSpec& coin, int steps) {
  if (steps < 0) throw std::invalid_argument("evolve: negative step count");
  for (int i = 0; i < steps; ++i) state.advance(coin);
  return state;
}

WalkState evolve(WalkState state, const CoinSchedule& coins, int steps) {
  if (steps < 0) throw std::invalid_argument("evolve: negative step count");
  for (int i = 0; i < steps; ++i) state.advance(coins(state.step() + 1));
  return state;
}

PositionDistribution position_distribution(const WalkState& state) {
  const double norm = state.norm_squared();
  if (!(norm > 0.0)) throw ComputationError("vanished state");
  PositionDistribution out;
  for (int x = state.min_position(); x <= state.max_position(); x += 2) {
    const double p = state.site_probability(x);
    if (p > 0.0) {
      out.raw.emplace(x, p);
      out.normalized.emplace(x, p / norm);
    }
  }
  return out;
}

}  // namespace qwalk
