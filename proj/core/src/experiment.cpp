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

#include "qwalk/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "qwalk/error.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

std::string_view to_string(Scheme s) { return s == Scheme::kReset ? "reset" : "continual"; }

Scheme parse_scheme(std::string_view text) {
  if (text == "reset") return Scheme::kReset;
  if (text == "continual") return Scheme::kContinual;
  throw std::invalid_argument("unknown scheme '" + std::string(text) + "'");
}

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::kR:
      return "R";
    case Channel::kL:
      return "L";
    case Channel::kSinkR:
      return "SR";
    case Channel::kSinkL:
      return "SL";
    case Channel::kNoiseR:
      return "NR";
    case Channel::kNoiseL:
      return "NL";
  }
  return "?";
}

Channel parse_channel(std::string_view text) {
  for (Channel c : {Channel::kR, Channel::kL, Channel::kSinkR, Channel::kSinkL, Channel::kNoiseR,
                    Channel::kNoiseL}) {
    if (to_string(c) == text) return c;
  }
  throw std::invalid_argument("unknown count channel '" + std::string(text) + "'");
}

ImperfectionParams ImperfectionParams::nominal() {
  ImperfectionParams p;
  p.roundtrip_efficiency = 0.8;
  p.detector_efficiencies = {0.6, 0.7};
  return p;
}

void ImperfectionParams::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("imperfection parameter '" + field + "' " + why);
  };
  if (!(roundtrip_efficiency > 0.0 && roundtrip_efficiency <= 1.0)) {
    fail("roundtrip_efficiency", "must lie in (0, 1]");
  }
  if (!(std::abs(arm_loss_asymmetry) < 1.0)) fail("arm_loss_asymmetry", "must lie in (-1, 1)");
  if (!std::isfinite(coin_angle_error)) fail("coin_angle_error", "must be finite");
  if (!(sink_residual_transmission >= 0.0 && sink_residual_transmission <= 1.0)) {
    fail("sink_residual_transmission", "must lie in [0, 1]");
  }
  for (double eta : detector_efficiencies) {
    if (!(eta > 0.0 && eta <= 1.0)) fail("detector_efficiencies", "must lie in (0, 1]");
  }
  if (!(dark_count_rate >= 0.0)) fail("dark_count_rate", "must be nonnegative");
  if (!(mean_input_photons >= 0.0)) fail("mean_input_photons", "must be nonnegative");
  if (!(saturation_ceiling > 0.0)) fail("saturation_ceiling", "must be positive");
}

// ---------------------------------------------------------------------------
// CountRecord lookups

double CountRecord::signal(int t, int x) const {
  double sum = 0.0;
  for (const CountRow& row : rows) {
    if (row.step == t && row.position == x &&
        (row.channel == Channel::kR || row.channel == Channel::kL)) {
      sum += value(row) - dark_floor;
    }
  }
  return sum;
}

double CountRecord::total(int t) const {
  double sum = 0.0;
  for (const CountRow& row : rows) {
    if (row.step == t && (row.channel == Channel::kR || row.channel == Channel::kL)) {
      sum += value(row) - dark_floor;
    }
  }
  return sum;
}

std::optional<double> CountRecord::sink(int t) const {
  std::optional<double> sum;
  for (const CountRow& row : rows) {
    if (row.step == t && (row.channel == Channel::kSinkR || row.channel == Channel::kSinkL)) {
      sum = sum.value_or(0.0) + value(row) - dark_floor;
    }
  }
  return sum;
}

double CountRecord::signal_window_sum(int t) const {
  double sum = 0.0;
  for (const CountRow& row : rows) {
    if (row.step == t && (row.channel == Channel::kR || row.channel == Channel::kL)) {
      sum += value(row);
    }
  }
  return sum;
}

double CountRecord::noise_window_sum(int t) const {
  double sum = 0.0;
  for (const CountRow& row : rows) {
    if (row.step == t && (row.channel == Channel::kNoiseR || row.channel == Channel::kNoiseL)) {
      sum += value(row);
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Forward model

CountRecord simulate_counts(Scheme scheme, const ImperfectionParams& params,
                            const SimulationOptions& options) {
  params.validate();
  options.bins.validate();
  if (options.horizon < 1) throw std::invalid_argument("simulate_counts: horizon must be >= 1");
  if (!(options.repetition_rate_hz > 0.0 && options.integration_time_s > 0.0)) {
    throw std::invalid_argument("simulate_counts: repetition rate and integration time must be positive");
  }

  CountRecord record;
  record.scheme = scheme;
  record.seed = options.seed;
  record.horizon = options.horizon;
  record.hwp_angle = options.hwp_angle;
  record.params = params;
  record.bins = options.bins;
  record.repetition_rate_hz = options.repetition_rate_hz;
  record.integration_time_s = options.integration_time_s;
  const double pulses = options.repetition_rate_hz * options.integration_time_s;
  record.dark_floor = params.dark_count_rate * options.bins.detection_window_ns * 1e-9 * pulses;

  const CoinSpec coin = hwp_coin(options.hwp_angle + params.coin_angle_error);
  const double keep_r = std::sqrt(params.roundtrip_efficiency);
  const double keep_l = std::sqrt(params.roundtrip_efficiency * (1.0 - params.arm_loss_asymmetry));
  const double sink_keep = std::sqrt(params.sink_residual_transmission);
  const auto& eta = params.detector_efficiencies;

  auto detected = [&](double intensity, CoinLabel c) {
    const double per_pulse = params.mean_input_photons * intensity * eta[index_of(c)];
    if (per_pulse > params.saturation_ceiling) {
      throw std::invalid_argument("detector saturation: " + std::to_string(per_pulse) +
                                  " photons per window per pulse exceeds the ceiling " +
                                  std::to_string(params.saturation_ceiling) +
                                  " (reduce mean_input_photons)");
    }
    return pulses * per_pulse + record.dark_floor;
  };

  WalkState state = WalkState::initial(options.initial);
  for (int t = 0; t <= options.horizon; ++t) {
    if (t > 0) {
      state.advance(coin);
      state.attenuate([&](int, CoinLabel c) { return c == CoinLabel::kR ? keep_r : keep_l; });
    }
    const double noise =
        record.dark_floor + (options.noise_profile ? options.noise_profile(t) : 0.0);
    for (int x = -t; x <= t; x += 2) {
      for (CoinLabel c : kCoinLabels) {
        const double intensity = std::norm(state.amplitude(x, c));
        record.rows.push_back({t, x, c == CoinLabel::kR ? Channel::kR : Channel::kL,
                               detected(intensity, c), 0});
      }
      record.rows.push_back({t, x, Channel::kNoiseR, noise, 0});
      record.rows.push_back({t, x, Channel::kNoiseL, noise, 0});
    }
    if (scheme == Scheme::kContinual && t > 0) {
      for (CoinLabel c : kCoinLabels) {
        const double before = std::norm(state.amplitude(0, c));
        state.scale_site(0, c, sink_keep);
        const double removed = before - std::norm(state.amplitude(0, c));
        record.rows.push_back({t, 0, c == CoinLabel::kR ? Channel::kSinkR : Channel::kSinkL,
                               detected(removed, c), 0});
      }
    }
  }

  if (options.seed) {
    std::mt19937_64 rng(*options.seed);
    for (CountRow& row : record.rows) {
      if (row.expected > 0.0) {
        std::poisson_distribution<std::int64_t> poisson(row.expected);
        row.counts = poisson(rng);
      }
    }
  } else {
    for (CountRow& row : record.rows) row.counts = std::llround(row.expected);
  }
  return record;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

void require_step(const CountRecord& record, int t, const char* what) {
  if (t < 0 || t > record.horizon) {
    throw std::invalid_argument(std::string(what) + ": step " + std::to_string(t) +
                                " outside the record horizon");
  }
}

double nonzero_total(const CountRecord& record, int t) {
  const double total = record.total(t);
  if (!(total > 0.0)) throw ComputationError("no signal at step " + std::to_string(t));
  return total;
}

}  // namespace

double normalize_reset(const CountRecord& record, int t) {
  require_step(record, t, "normalize_reset");
  const double total = nonzero_total(record, t);
  return record.signal(t, 0) / total;
}

ContinualEstimate normalize_continual(const CountRecord& continual, const CountRecord& reset,
                                      int t) {
  require_step(continual, t, "normalize_continual");
  require_step(reset, t, "normalize_continual");
  const double reset_total = nonzero_total(reset, t);
  const double continual_total = nonzero_total(continual, t);
  ContinualEstimate out;
  out.survival = continual_total / reset_total;
  out.conditional = continual.signal(t, 0) / continual_total;
  out.first_return = out.survival * out.conditional;
  return out;
}

double normalize_continual_alternative(const CountRecord& continual, const CountRecord& reset,
                                       int t) {
  require_step(continual, t, "normalize_continual_alternative");
  require_step(reset, t, "normalize_continual_alternative");
  const double reset_initial = nonzero_total(reset, 0);
  auto loss = [&](int k) { return nonzero_total(reset, k) / reset_initial; };

  double input = 0.0;
  for (int k = 1; k < t; ++k) {
    const std::optional<double> sink = continual.sink(k);
    if (!sink) throw ComputationError("missing sink counts at step " + std::to_string(k));
    input += *sink / loss(k);
  }
  const double final_loss = loss(t);
  input += continual.total(t) / final_loss;
  if (!(input > 0.0)) throw ComputationError("no signal in continual record up to step " + std::to_string(t));
  return continual.signal(t, 0) / final_loss / input;
}

// ---------------------------------------------------------------------------
// Derived probabilities and the systematic error envelope

namespace {

// Dark-subtracted signal per (t, x + T) in one pass over the rows.
std::vector<std::vector<double>> signal_grid(const CountRecord& record) {
  const int T = record.horizon;
  std::vector<std::vector<double>> grid(T + 1, std::vector<double>(2 * T + 1, 0.0));
  for (const CountRow& row : record.rows) {
    if (row.channel != Channel::kR && row.channel != Channel::kL) continue;
    if (row.step < 0 || row.step > T || row.position < -T || row.position > T) continue;
    grid[row.step][row.position + T] += record.value(row) - record.dark_floor;
  }
  return grid;
}

double grid_total(const std::vector<double>& row, int t) {
  double total = 0.0;
  for (double v : row) total += v;
  if (!(total > 0.0)) throw ComputationError("no signal at step " + std::to_string(t));
  return total;
}

}  // namespace

DerivedProbabilities derive_probabilities(const ImperfectionParams& params, double hwp_angle,
                                          int T, const InitialSpec& initial) {
  SimulationOptions options;
  options.horizon = T;
  options.hwp_angle = hwp_angle;
  options.initial = initial;
  const auto reset = signal_grid(simulate_counts(Scheme::kReset, params, options));
  const auto continual = signal_grid(simulate_counts(Scheme::kContinual, params, options));

  DerivedProbabilities out;
  out.horizon = T;
  out.p_origin.assign(T + 1, 0.0);
  out.q_first_return.assign(T + 1, 0.0);
  out.survival.assign(T + 1, 0.0);
  const std::size_t width = 2 * static_cast<std::size_t>(T) + 1;
  out.reset_distribution.assign(T + 1, std::vector<double>(width, 0.0));
  out.conditional_distribution.assign(T + 1, std::vector<double>(width, 0.0));

  for (int t = 0; t <= T; ++t) {
    const double reset_total = grid_total(reset[t], t);
    const double continual_total = grid_total(continual[t], t);
    for (std::size_t i = 0; i < width; ++i) {
      out.reset_distribution[t][i] = reset[t][i] / reset_total;
      out.conditional_distribution[t][i] = continual[t][i] / continual_total;
    }
    if (t == 0) {
      out.p_origin[0] = 1.0;
      out.survival[0] = 1.0;
      continue;
    }
    out.p_origin[t] = out.reset_distribution[t][T];
    out.survival[t] = continual_total / reset_total;
    out.q_first_return[t] = out.survival[t] * out.conditional_distribution[t][T];
  }
  return out;
}

ImperfectionParams perturb(const ImperfectionParams& nominal, const ErrorRanges& ranges,
                           double detector_sign, double arm_sign, double coin_sign,
                           double sink_sign) {
  ImperfectionParams p = nominal;
  const double spread = detector_sign * ranges.detector_efficiency_spread;
  p.detector_efficiencies[0] = std::min(1.0, nominal.detector_efficiencies[0] * (1.0 + spread));
  p.detector_efficiencies[1] = std::min(1.0, nominal.detector_efficiencies[1] * (1.0 - spread));
  p.arm_loss_asymmetry = nominal.arm_loss_asymmetry + arm_sign * ranges.arm_loss;
  p.coin_angle_error = nominal.coin_angle_error + coin_sign * ranges.coin_angle;
  p.sink_residual_transmission =
      std::clamp(nominal.sink_residual_transmission + sink_sign * ranges.sink_residual, 0.0, 1.0);
  return p;
}

ErrorEnvelope error_envelope(const ImperfectionParams& nominal, const ErrorRanges& ranges,
                             double hwp_angle, Scheme scheme, int T) {
  if (T < 1) throw std::invalid_argument("error_envelope: horizon must be >= 1");
  const bool reset = scheme == Scheme::kReset;
  auto origin_of = [reset](const DerivedProbabilities& d) -> const std::vector<double>& {
    return reset ? d.p_origin : d.q_first_return;
  };
  auto distribution_of = [reset](const DerivedProbabilities& d) -> const auto& {
    return reset ? d.reset_distribution : d.conditional_distribution;
  };

  const DerivedProbabilities ref = derive_probabilities(nominal, hwp_angle, T);
  ErrorEnvelope env;
  env.scheme = scheme;
  env.horizon = T;
  env.reference = origin_of(ref);
  env.deviation.assign(T + 1, 0.0);
  env.distribution_deviation.assign(T + 1, 0.0);

  for (int corner = 0; corner < 16; ++corner) {
    auto sign = [corner](int bit) { return (corner >> bit) & 1 ? 1.0 : -1.0; };
    const ImperfectionParams p = perturb(nominal, ranges, sign(0), sign(1), sign(2), sign(3));
    const DerivedProbabilities d = derive_probabilities(p, hwp_angle, T);
    for (int t = 0; t <= T; ++t) {
      env.deviation[t] = std::max(env.deviation[t], std::abs(origin_of(d)[t] - env.reference[t]));
      const auto& row = distribution_of(d)[t];
      const auto& ref_row = distribution_of(ref)[t];
      for (std::size_t i = 0; i < row.size(); ++i) {
        env.distribution_deviation[t] =
            std::max(env.distribution_deviation[t], std::abs(row[i] - ref_row[i]));
      }
    }
  }
  return env;
}

// ---------------------------------------------------------------------------
// Signal to noise

double snr(const CountRecord& record, int t) {
  require_step(record, t, "snr");
  const double noise = record.noise_window_sum(t);
  if (!(noise > 0.0)) return std::numeric_limits<double>::infinity();
  return record.signal_window_sum(t) / noise;
}

SnrTrend snr_trend(const CountRecord& record, double threshold) {
  SnrTrend trend;
  trend.values.reserve(record.horizon + 1);
  for (int t = 0; t <= record.horizon; ++t) {
    const double v = snr(record, t);
    if (!trend.values.empty() && v > trend.values.back()) trend.non_increasing = false;
    if (trend.first_below < 0 && v < threshold) trend.first_below = t;
    trend.values.push_back(v);
  }
  return trend;
}

}  // namespace qwalk
