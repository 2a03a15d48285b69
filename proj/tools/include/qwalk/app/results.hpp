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

#ifndef QWALK_APP_RESULTS_HPP
#define QWALK_APP_RESULTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/classical.hpp"
#include "qwalk/monitoring.hpp"

namespace qwalk::app {

struct Provenance {
  std::string config_hash;  // "fnv1a64:<16 hex digits>"
  std::optional<std::uint64_t> seed;
  std::string tool_version;
  std::string subcommand;

  /// One-line form used in CSV, SVG and count-record headers.
  std::string line() const;

  bool operator==(const Provenance&) const = default;
};

/// Probability over positions for steps 0..horizon: cells[t][x + horizon].
struct DistributionGrid {
  std::string kind;  // "unitary", "reset", "conditional"
  int horizon = 0;
  std::vector<std::vector<double>> cells;

  bool operator==(const DistributionGrid&) const = default;
};

/// Normalized experiment output, t = 0..T. A vector is empty when its
/// scheme was not requested.
struct ExperimentSummary {
  int horizon = 0;
  bool sampled = false;
  std::vector<double> p_origin;
  std::vector<double> p_envelope;
  std::vector<double> q_first_return;
  std::vector<double> q_envelope;
  std::vector<double> survival;
  std::vector<double> q_alternative;
  std::vector<std::string> count_files;

  bool operator==(const ExperimentSummary&) const = default;
};

struct ResultBundle {
  Provenance provenance;
  std::optional<RecurrenceSeries> recurrence;
  std::optional<ClassicalSeries> classical;
  std::optional<MonteCarloEstimate> monte_carlo;
  std::optional<ExperimentSummary> experiment;
  std::vector<DistributionGrid> distributions;
  /// Paths of files written, relative to the output directory.
  std::vector<std::string> files;

  bool operator==(const ResultBundle&) const = default;
};

std::string to_json(const ResultBundle& bundle);
/// Throws std::runtime_error on malformed input.
ResultBundle bundle_from_json(const std::string& text);

/// FNV-1a 64-bit, formatted as "fnv1a64:%016x".
std::string config_hash(const std::string& canonical);

}  // namespace qwalk::app

#endif  // QWALK_APP_RESULTS_HPP
