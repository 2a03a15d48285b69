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

#ifndef QWALK_EXPERIMENT_HPP
#define QWALK_EXPERIMENT_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/time_bins.hpp"

namespace qwalk {

enum class Scheme : std::uint8_t { kReset, kContinual };

std::string_view to_string(Scheme s);
/// Accepts "reset" and "continual"; throws std::invalid_argument otherwise.
Scheme parse_scheme(std::string_view text);

/// Loss, noise and calibration parameters of the loop. Defaults describe a
/// lossless loop with perfect detectors and ideal sinks.
struct ImperfectionParams {
  double roundtrip_efficiency = 1.0;          // intensity kept per round trip, (0, 1]
  double arm_loss_asymmetry = 0.0;            // L path intensity factor is (1 - ε)
  double coin_angle_error = 0.0;              // radians, added to the HWP angle
  double sink_residual_transmission = 0.0;    // [0, 1]
  std::array<double, 2> detector_efficiencies{1.0, 1.0};  // (R, L) detectors, (0, 1]
  double dark_count_rate = 0.0;               // counts per second per detector
  double mean_input_photons = 0.05;           // photons per pulse entering the loop
  double saturation_ceiling = 0.1;            // max detected photons per window per pulse

  /// Measured-setup reference: 0.8 round trip, detectors 0.6 / 0.7.
  static ImperfectionParams nominal();

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  bool operator==(const ImperfectionParams&) const = default;
};

/// Half-widths of the systematic error sources used by error_envelope.
struct ErrorRanges {
  double detector_efficiency_spread = 0.01;  // relative, applied with opposite signs to R and L
  double arm_loss = 0.01;
  double coin_angle = 0.15 * 3.14159265358979323846 / 180.0;
  double sink_residual = 0.01;

  static ErrorRanges zero() { return {0.0, 0.0, 0.0, 0.0}; }
};

/// Detector channel of a count row.
enum class Channel : std::uint8_t {
  kR,       // final round trip, horizontal detector
  kL,       // final round trip, vertical detector
  kSinkR,   // light coupled out by the sink at step t
  kSinkL,
  kNoiseR,  // offset window next to the signal window, same length
  kNoiseL,
};

std::string_view to_string(Channel c);
Channel parse_channel(std::string_view text);

struct CountRow {
  int step = 0;
  int position = 0;
  Channel channel = Channel::kR;
  double expected = 0.0;
  std::int64_t counts = 0;

  bool operator==(const CountRow&) const = default;
};

/// Detector counts for steps 0..horizon of one observation scheme.
struct CountRecord {
  Scheme scheme = Scheme::kReset;
  std::optional<std::uint64_t> seed;  // set when counts are Poisson samples
  int horizon = 0;
  double hwp_angle = kHadamardHwpAngle;
  ImperfectionParams params;
  TimeBinMap bins;
  double repetition_rate_hz = 8000.0;
  double integration_time_s = 1.0;
  /// Expected dark counts per detection window, already included in `expected`.
  double dark_floor = 0.0;
  /// Free-form origin tag written as a header line; empty means none.
  std::string provenance;
  std::vector<CountRow> rows;

  bool sampled() const { return seed.has_value(); }
  /// counts when sampled, expected otherwise.
  double value(const CountRow& row) const {
    return sampled() ? static_cast<double>(row.counts) : row.expected;
  }

  /// Dark-subtracted final-round-trip counts at (x, t), both detectors.
  double signal(int t, int x) const;
  /// sum_x signal(t, x).
  double total(int t) const;
  /// Dark-subtracted sink counts at step t, or nullopt if the record has none.
  std::optional<double> sink(int t) const;
  /// Raw counts summed over the signal windows / noise windows of step t.
  double signal_window_sum(int t) const;
  double noise_window_sum(int t) const;

  bool operator==(const CountRecord&) const = default;
};

struct SimulationOptions {
  int horizon = 1;
  double hwp_angle = kHadamardHwpAngle;
  InitialSpec initial = InitialSpec::horizontal();
  TimeBinMap bins;
  double repetition_rate_hz = 8000.0;
  double integration_time_s = 1.0;
  /// Poisson sampling with this seed; expected-value mode when empty.
  std::optional<std::uint64_t> seed;
  /// Extra expected noise counts per window at step t (e.g. afterpulsing).
  std::function<double(int step)> noise_profile;
};

/// Forward model of the loop. Per round trip: HWP coin at hwp_angle +
/// coin_angle_error, shift, intensity loss roundtrip_efficiency on both arms
/// and an extra (1 - arm_loss_asymmetry) on the L arm. Continual scheme: after
/// the bins of step t are read, the origin keeps a fraction
/// sink_residual_transmission of its intensity and the rest is recorded as
/// sink counts.
CountRecord simulate_counts(Scheme scheme, const ImperfectionParams& params,
                            const SimulationOptions& options);

/// p(0,t) = N(0,t) / sum_y N(y,t). Throws ComputationError("no signal at step
/// t") on a zero total.
double normalize_reset(const CountRecord& record, int t);

struct ContinualEstimate {
  double first_return = 0.0;  // q(0,t)
  double survival = 0.0;      // s_{t-1}
  double conditional = 0.0;   // p_c(0,t)
};

/// q = s * p_c with s = sum N_c / sum N and p_c = N_c(0,t) / sum N_c.
ContinualEstimate normalize_continual(const CountRecord& continual, const CountRecord& reset,
                                      int t);

/// q(0,t) from the continual record's own photon budget: the homogeneous loss
/// lambda(k) = sum N(.,k) / sum N(.,0) is read from the reset record, and the
/// input is reconstructed as sum_{k<t} sink(k)/lambda(k) + sum N_c(.,t)/lambda(t).
/// Throws ComputationError when sink counts are missing.
double normalize_continual_alternative(const CountRecord& continual, const CountRecord& reset,
                                       int t);

/// Derived probabilities of one parameter setting, indexed by t = 0..T.
struct DerivedProbabilities {
  int horizon = 0;
  std::vector<double> p_origin;                  // reset p(0,t)
  std::vector<double> q_first_return;            // continual q(0,t)
  std::vector<double> survival;                  // s_{t-1}
  std::vector<std::vector<double>> reset_distribution;        // [t][x + T], p(x,t)
  std::vector<std::vector<double>> conditional_distribution;  // [t][x + T], p_c(x,t)
};

/// Expected-value forward model of both schemes followed by normalization.
DerivedProbabilities derive_probabilities(const ImperfectionParams& params, double hwp_angle,
                                          int T, const InitialSpec& initial = InitialSpec::horizontal());

struct ErrorEnvelope {
  Scheme scheme = Scheme::kReset;
  int horizon = 0;
  /// Reference p(0,t) (reset) or q(0,t) (continual), t = 0..T.
  std::vector<double> reference;
  /// Largest |corner - reference| of that quantity.
  std::vector<double> deviation;
  /// Largest |corner - reference| of p(x,t) (reset) or p_c(x,t) (continual),
  /// maximized over x.
  std::vector<double> distribution_deviation;
};

/// Evaluates the 16 corners (detector spread, arm loss, coin angle, sink
/// residual) around `nominal` and keeps the largest deviation per step.
/// The sink residual corners are nominal ± range clamped to [0, 1].
ErrorEnvelope error_envelope(const ImperfectionParams& nominal, const ErrorRanges& ranges,
                             double hwp_angle, Scheme scheme, int T);

/// Parameters of one corner; signs are ±1.
ImperfectionParams perturb(const ImperfectionParams& nominal, const ErrorRanges& ranges,
                           double detector_sign, double arm_sign, double coin_sign,
                           double sink_sign);

/// Signal-window counts over noise-window counts at step t; +infinity when
/// the noise windows are empty.
double snr(const CountRecord& record, int t);

struct SnrTrend {
  std::vector<double> values;  // t = 0..T
  /// First step with SNR below the threshold, or -1.
  int first_below = -1;
  /// SNR never increases from one step to the next.
  bool non_increasing = true;
};

SnrTrend snr_trend(const CountRecord& record, double threshold);

}  // namespace qwalk

#endif  // QWALK_EXPERIMENT_HPP
