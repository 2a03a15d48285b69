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

#ifndef QWALK_APP_CONFIG_HPP
#define QWALK_APP_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/monitoring.hpp"

namespace qwalk::app {

/// Bad command line or config file. Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown for --help / --version after the text has been printed.
class EarlyExit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { kEvolve, kRecurrence, kClassical, kExperiment, kCompare };
enum class SchemeChoice { kReset, kContinual, kBoth };
enum class CoinChoice { kHadamard, kIdentity, kHwp };

std::string_view to_string(Subcommand s);
std::string_view to_string(SchemeChoice s);

struct OutputFormats {
  bool table = true;
  bool json = false;
  bool chart = false;

  bool operator==(const OutputFormats&) const = default;
};

struct SinkConfig {
  std::vector<int> positions{0};
  double residual_transmission = 0.0;
  CoinSelection coins;
  /// Any sink option appeared on the command line or in the file.
  bool customized = false;

  SinkSchedule schedule() const;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::kRecurrence;
  CoinChoice coin = CoinChoice::kHadamard;
  double hwp_angle = kHadamardHwpAngle;  // radians; used when coin == kHwp
  InitialSpec initial = InitialSpec::horizontal();
  int steps = 36;
  SchemeChoice scheme = SchemeChoice::kBoth;
  SinkConfig sink;

  // experiment
  ImperfectionParams params;
  TimeBinMap bins;
  double repetition_rate_hz = 8000.0;
  double integration_time_s = 1.0;
  bool sample = false;

  // classical
  int dimension = 1;
  std::int64_t trials = 0;
  unsigned threads = 0;

  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir;
  OutputFormats formats;

  CoinSpec coin_spec() const;
  /// Angle fed to the experiment model's wave plate.
  double experiment_hwp_angle() const;
  bool wants_reset() const { return scheme != SchemeChoice::kContinual; }
  bool wants_continual() const { return scheme != SchemeChoice::kReset; }

  /// Stable text form of every setting that affects results (not out_dir
  /// or formats). Hashed into the provenance block.
  std::string canonical() const;
};

inline constexpr const char* kOutDirEnv = "QWALK_OUT_DIR";
inline constexpr const char* kDefaultOutDir = "qwalk-out";

/// args[0] is the program name. Options may also come from an INI file
/// given with --config; command-line values take precedence. Throws
/// ConfigError naming the offending key, or EarlyExit after printing help.
RunConfig parse_config(const std::vector<std::string>& args);

}  // namespace qwalk::app

#endif  // QWALK_APP_CONFIG_HPP
