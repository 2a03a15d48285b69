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

#include "qwalk/app/config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "qwalk/app/runner.hpp"
#include "qwalk/classical.hpp"
#include "qwalk/count_record_io.hpp"

namespace qwalk::app {

std::string_view to_string(Subcommand s) {
  switch (s) {
    case Subcommand::kEvolve:
      return "evolve";
    case Subcommand::kRecurrence:
      return "recurrence";
    case Subcommand::kClassical:
      return "classical";
    case Subcommand::kExperiment:
      return "experiment";
    case Subcommand::kCompare:
      return "compare";
  }
  return "unknown";
}

std::string_view to_string(SchemeChoice s) {
  switch (s) {
    case SchemeChoice::kReset:
      return "reset";
    case SchemeChoice::kContinual:
      return "continual";
    case SchemeChoice::kBoth:
      return "both";
  }
  return "unknown";
}

SinkSchedule SinkConfig::schedule() const {
  return SinkSchedule::at_positions(positions, residual_transmission, coins);
}

CoinSpec RunConfig::coin_spec() const {
  switch (coin) {
    case CoinChoice::kIdentity:
      return identity_coin();
    case CoinChoice::kHwp:
      return hwp_coin(hwp_angle);
    case CoinChoice::kHadamard:
      break;
  }
  return hadamard_coin();
}

double RunConfig::experiment_hwp_angle() const {
  return coin == CoinChoice::kHwp ? hwp_angle : kHadamardHwpAngle;
}

std::string RunConfig::canonical() const {
  std::ostringstream s;
  auto r = [](double v) { return format_real(v); };
  s << "subcommand=" << to_string(subcommand) << ";coin="
    << (coin == CoinChoice::kHadamard ? "hadamard" : coin == CoinChoice::kIdentity ? "identity" : "hwp")
    << ";hwp_angle=" << r(hwp_angle) << ";initial=" << r(initial.r.real()) << ','
    << r(initial.r.imag()) << ',' << r(initial.l.real()) << ',' << r(initial.l.imag())
    << ";steps=" << steps << ";scheme=" << to_string(scheme) << ";sink_positions=";
  for (std::size_t i = 0; i < sink.positions.size(); ++i) s << (i ? "," : "") << sink.positions[i];
  s << ";sink_residual=" << r(sink.residual_transmission) << ";sink_coins="
    << (sink.coins.r ? "R" : "") << (sink.coins.l ? "L" : "");
  const ImperfectionParams& p = params;
  s << ";efficiency=" << r(p.roundtrip_efficiency) << ";arm_asymmetry=" << r(p.arm_loss_asymmetry)
    << ";coin_error=" << r(p.coin_angle_error)
    << ";sink_residual_transmission=" << r(p.sink_residual_transmission)
    << ";detector_r=" << r(p.detector_efficiencies[0])
    << ";detector_l=" << r(p.detector_efficiencies[1]) << ";dark_rate=" << r(p.dark_count_rate)
    << ";mean_photons=" << r(p.mean_input_photons)
    << ";saturation_ceiling=" << r(p.saturation_ceiling) << ";loop_time=" << r(bins.loop_time_ns)
    << ";pitch=" << r(bins.position_pitch_ns) << ";window=" << r(bins.detection_window_ns)
    << ";rep_rate=" << r(repetition_rate_hz) << ";integration=" << r(integration_time_s)
    << ";sample=" << sample << ";dimension=" << dimension << ";trials=" << trials
    << ";seed=" << (seed ? std::to_string(*seed) : std::string("none"));
  return s.str();
}

namespace {

InitialSpec parse_initial(const std::string& text) {
  if (text == "R") return InitialSpec::horizontal();
  if (text == "L") return InitialSpec::vertical();
  if (text == "symmetric") return InitialSpec::symmetric();
  std::vector<double> v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      v.push_back(parse_real(item));
    } catch (const std::invalid_argument&) {
      v.clear();
      break;
    }
  }
  if (v.size() != 4) {
    throw ConfigError("initial: expected R, L, symmetric or re_r,im_r,re_l,im_l, got '" + text + "'");
  }
  InitialSpec spec{{v[0], v[1]}, {v[2], v[3]}};
  if (std::abs(spec.norm_squared() - 1.0) > 1e-9) {
    throw ConfigError("initial: coin amplitudes must have unit norm");
  }
  return spec;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Recurrence of discrete-time quantum walks under reset and continual monitoring",
               "qwalk"};
  app.set_config("--config", "", "INI file with option=value lines; flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1, 1);

  const std::pair<const char*, const char*> commands[] = {
      {"evolve", "Per-step position distributions of the unitary walk"},
      {"recurrence", "First return, survival and recurrence series"},
      {"classical", "Classical lattice walk recurrence and Monte Carlo check"},
      {"experiment", "Photon-count forward model, normalization and error envelopes"},
      {"compare", "Reset vs continual recurrence with charts"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  std::string coin = "hadamard";
  std::optional<double> hwp_angle;
  std::string initial = "R";
  std::string scheme = "both";
  std::vector<int> sink_positions;
  std::optional<double> sink_residual;
  std::string sink_coins = "RL";
  bool nominal = false;
  std::optional<double> efficiency, arm, coin_error, det_r, det_l, dark, photons, ceiling;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> formats{"table"};

  auto* coin_opt = app.add_option("--coin", coin, "hadamard, identity or hwp")
                       ->check(CLI::IsMember({"hadamard", "identity", "hwp"}));
  app.add_option("--hwp-angle", hwp_angle, "Half-wave plate angle in radians (implies --coin hwp)");
  app.add_option("--initial", initial, "R, L, symmetric, or re_r,im_r,re_l,im_l");
  app.add_option("--steps", cfg.steps, "Horizon T")->check(CLI::Range(1, 1000000));
  app.add_option("--scheme", scheme, "reset, continual or both")
      ->check(CLI::IsMember({"reset", "continual", "both"}));
  auto* sink_pos_opt = app.add_option("--sink-positions", sink_positions, "Absorbing sites")
                           ->delimiter(',');
  auto* sink_res_opt = app.add_option("--sink-residual", sink_residual,
                                      "Intensity left behind by a sink, in [0, 1]")
                           ->check(CLI::Range(0.0, 1.0));
  auto* sink_coin_opt = app.add_option("--sink-coins", sink_coins, "R, L or RL")
                            ->check(CLI::IsMember({"R", "L", "RL"}));

  app.add_flag("--nominal", nominal, "Start from the measured setup (0.8 round trip, 0.6/0.7)");
  app.add_option("--efficiency", efficiency, "Round-trip intensity efficiency");
  app.add_option("--arm-asymmetry", arm, "Extra relative loss of the L arm");
  app.add_option("--coin-error", coin_error, "Wave plate angle error in radians");
  app.add_option("--detector-r", det_r, "R detector efficiency");
  app.add_option("--detector-l", det_l, "L detector efficiency");
  app.add_option("--dark-rate", dark, "Dark counts per second per detector");
  app.add_option("--mean-photons", photons, "Mean photons per input pulse");
  app.add_option("--saturation-ceiling", ceiling, "Max detected photons per window per pulse");
  app.add_option("--loop-time", cfg.bins.loop_time_ns, "Loop round trip in ns");
  app.add_option("--pitch", cfg.bins.position_pitch_ns, "Delay per unit position in ns");
  app.add_option("--window", cfg.bins.detection_window_ns, "Detection window in ns");
  app.add_option("--rep-rate", cfg.repetition_rate_hz, "Pulse repetition rate in Hz")
      ->check(CLI::PositiveNumber);
  app.add_option("--integration", cfg.integration_time_s, "Integration time in s")
      ->check(CLI::PositiveNumber);
  app.add_flag("--sample", cfg.sample, "Poisson-sample counts (needs --seed)");

  app.add_option("--dimension", cfg.dimension, "Lattice dimension for classical")
      ->check(CLI::Range(1, 3));
  app.add_option("--trials", cfg.trials, "Monte Carlo trials for classical (0 = none)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--threads", cfg.threads, "Monte Carlo worker threads (0 = hardware)");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", out, "Output directory (default $QWALK_OUT_DIR or ./qwalk-out)")
      ->envname(kOutDirEnv);
  app.add_option("--format", formats, "table, json, chart (comma separated)")
      ->delimiter(',')
      ->check(CLI::IsMember({"table", "json", "chart"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    throw EarlyExit("help");
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    throw EarlyExit("help");
  } catch (const CLI::CallForVersion&) {
    std::cout << tool_version() << '\n';
    throw EarlyExit("version");
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  if (sub == "evolve") cfg.subcommand = Subcommand::kEvolve;
  if (sub == "recurrence") cfg.subcommand = Subcommand::kRecurrence;
  if (sub == "classical") cfg.subcommand = Subcommand::kClassical;
  if (sub == "experiment") cfg.subcommand = Subcommand::kExperiment;
  if (sub == "compare") cfg.subcommand = Subcommand::kCompare;

  // Coin.
  if (hwp_angle) {
    if (coin_opt->count() > 0 && coin != "hwp") {
      throw ConfigError("hwp-angle: conflicts with --coin " + coin);
    }
    coin = "hwp";
    cfg.hwp_angle = *hwp_angle;
  }
  cfg.coin = coin == "hwp" ? CoinChoice::kHwp
             : coin == "identity" ? CoinChoice::kIdentity
                                  : CoinChoice::kHadamard;
  if (!std::isfinite(cfg.hwp_angle)) throw ConfigError("hwp-angle: must be finite");
  cfg.initial = parse_initial(initial);
  cfg.scheme = scheme == "reset"       ? SchemeChoice::kReset
               : scheme == "continual" ? SchemeChoice::kContinual
                                       : SchemeChoice::kBoth;

  // Sinks.
  const bool sink_layout = sink_pos_opt->count() > 0 || sink_coin_opt->count() > 0;
  cfg.sink.customized = sink_layout || sink_res_opt->count() > 0;
  if (sink_pos_opt->count() > 0) cfg.sink.positions = sink_positions;
  if (sink_residual) cfg.sink.residual_transmission = *sink_residual;
  cfg.sink.coins = {sink_coins.find('R') != std::string::npos,
                    sink_coins.find('L') != std::string::npos};
  if (cfg.sink.customized && cfg.scheme == SchemeChoice::kReset) {
    throw ConfigError("sink options conflict with --scheme reset (the reset scheme has no sinks)");
  }
  if (sink_layout && cfg.subcommand != Subcommand::kRecurrence &&
      cfg.subcommand != Subcommand::kCompare) {
    throw ConfigError("sink-positions/sink-coins: only recurrence and compare take a sink layout");
  }
  if (cfg.sink.customized && (cfg.subcommand == Subcommand::kEvolve ||
                              cfg.subcommand == Subcommand::kClassical)) {
    throw ConfigError("sink-residual: " + sub + " has no sinks");
  }

  // Experiment parameters.
  if (nominal) cfg.params = ImperfectionParams::nominal();
  if (efficiency) cfg.params.roundtrip_efficiency = *efficiency;
  if (arm) cfg.params.arm_loss_asymmetry = *arm;
  if (coin_error) cfg.params.coin_angle_error = *coin_error;
  if (det_r) cfg.params.detector_efficiencies[0] = *det_r;
  if (det_l) cfg.params.detector_efficiencies[1] = *det_l;
  if (dark) cfg.params.dark_count_rate = *dark;
  if (photons) cfg.params.mean_input_photons = *photons;
  if (ceiling) cfg.params.saturation_ceiling = *ceiling;
  if (sink_residual) cfg.params.sink_residual_transmission = *sink_residual;
  try {
    cfg.params.validate();
    cfg.bins.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.subcommand == Subcommand::kExperiment && cfg.coin == CoinChoice::kIdentity) {
    throw ConfigError("coin: the experiment model takes a wave-plate coin (hadamard or hwp)");
  }

  cfg.seed = seed;
  if (cfg.sample && !cfg.seed) throw ConfigError("sample: Poisson sampling requires --seed");
  if (cfg.sample && cfg.subcommand != Subcommand::kExperiment) {
    throw ConfigError("sample: only the experiment subcommand samples counts");
  }
  if (cfg.trials > 0 && !cfg.seed) throw ConfigError("trials: Monte Carlo requires --seed");
  if (cfg.subcommand == Subcommand::kClassical &&
      cfg.steps > max_first_return_horizon(cfg.dimension)) {
    throw ConfigError("steps: the first-return DP is capped at " +
                      std::to_string(max_first_return_horizon(cfg.dimension)) +
                      " steps for dimension " + std::to_string(cfg.dimension));
  }
  if (cfg.subcommand == Subcommand::kCompare && cfg.scheme != SchemeChoice::kBoth) {
    throw ConfigError("scheme: compare always runs both schemes");
  }

  if (out.empty()) out = kDefaultOutDir;
  cfg.out_dir = out;
  cfg.formats = {false, false, false};
  for (const std::string& f : formats) {
    if (f == "table") cfg.formats.table = true;
    if (f == "json") cfg.formats.json = true;
    if (f == "chart") cfg.formats.chart = true;
  }
  return cfg;
}

}  // namespace qwalk::app
