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

#include "qwalk/app/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qwalk/app/chart.hpp"
#include "qwalk/count_record_io.hpp"
#include "qwalk/error.hpp"

#ifndef QWALK_TOOL_VERSION
#define QWALK_TOOL_VERSION "0.0.0"
#endif

namespace qwalk::app {

std::string tool_version() { return QWALK_TOOL_VERSION; }

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

namespace {

const double kTwoOverPi = 2.0 / std::numbers::pi;

std::string fixed(double v, int digits = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, ResultBundle& bundle) : cfg_(cfg), bundle_(bundle) {
    std::filesystem::create_directories(cfg.out_dir);
  }

  void write(const std::string& name, const std::string& contents) {
    write_file_atomic(cfg_.out_dir / name, contents);
    bundle_.files.push_back(name);
  }

  // CSV with a provenance comment line.
  void csv(const std::string& name, const std::string& header, const std::string& body) {
    write(name, "# " + bundle_.provenance.line() + "\n" + header + "\n" + body);
  }

 private:
  const RunConfig& cfg_;
  ResultBundle& bundle_;
};

DistributionGrid unitary_grid(const RunConfig& cfg, const std::string& kind) {
  const int T = cfg.steps;
  DistributionGrid g{kind, T, std::vector<std::vector<double>>(T + 1, std::vector<double>(2 * T + 1))};
  WalkState state = WalkState::initial(cfg.initial);
  const CoinSpec coin = cfg.coin_spec();
  for (int t = 0; t <= T; ++t) {
    if (t > 0) state.advance(coin);
    for (int x = -t; x <= t; x += 2) g.cells[t][x + T] = state.site_probability(x);
  }
  return g;
}

// p_c(x,t): the unnormalized conditional state read before the step-t sink.
DistributionGrid conditional_grid(const RunConfig& cfg) {
  const int T = cfg.steps;
  DistributionGrid g{"conditional", T,
                     std::vector<std::vector<double>>(T + 1, std::vector<double>(2 * T + 1))};
  const SinkSchedule schedule = cfg.sink.schedule();
  WalkState state = WalkState::initial(cfg.initial);
  const CoinSpec coin = cfg.coin_spec();
  for (int t = 0; t <= T; ++t) {
    if (t > 0) state.advance(coin);
    const double norm = state.norm_squared();
    if (!(norm > 0.0)) throw ComputationError("fully absorbed before step " + std::to_string(t));
    for (int x = -t; x <= t; x += 2) g.cells[t][x + T] = state.site_probability(x) / norm;
    if (t > 0) absorb(state, schedule, t);
  }
  return g;
}

std::string grid_csv_body(const DistributionGrid& g) {
  std::ostringstream s;
  const int T = g.horizon;
  for (int t = 0; t <= T; ++t) {
    for (int x = -t; x <= t; x += 2) s << t << ',' << x << ',' << format_real(g.cells[t][x + T]) << '\n';
  }
  return s.str();
}

std::string grid_title(const DistributionGrid& g) {
  if (g.kind == "conditional") return "Continual scheme: conditional p_c(x,t)";
  if (g.kind == "reset") return "Reset scheme: p(x,t)";
  return "Position distribution p(x,t)";
}

RecurrenceSeries recurrence_for(const RunConfig& cfg) {
  const CoinSpec coin = cfg.coin_spec();
  RecurrenceSeries out;
  if (cfg.wants_continual()) {
    out = continual_recurrence(cfg.initial, coin, cfg.steps, cfg.sink.schedule());
  }
  if (cfg.wants_reset()) {
    RecurrenceSeries r = reset_recurrence(cfg.initial, coin, cfg.steps);
    out.horizon = r.horizon;
    out.p_origin = std::move(r.p_origin);
    out.P_reset = std::move(r.P_reset);
  }
  return out;
}

void emit_recurrence(const RunConfig& cfg, const RecurrenceSeries& s, Emitter& emit,
                     const ResultBundle& bundle, std::ostream& table) {
  std::string header = "t";
  if (s.has_reset()) header += ",p_origin,P_reset";
  if (s.has_continual()) header += ",q_first_return,survival,P_continual";
  std::ostringstream body;
  for (int t = 0; t <= s.horizon; ++t) {
    body << t;
    if (s.has_reset()) body << ',' << format_real(s.p_origin[t]) << ',' << format_real(s.P_reset[t]);
    if (s.has_continual()) {
      body << ',' << format_real(s.q_first_return[t]) << ',' << format_real(s.survival[t]) << ','
           << format_real(s.P_continual[t]);
    }
    body << '\n';
  }
  emit.csv("recurrence.csv", header, body.str());

  if (cfg.formats.chart) {
    LineChart chart{"Recurrence probability vs horizon T", "T", "recurrence probability", {}, {}};
    if (s.has_reset()) {
      LineSeries r{"reset P_r(T)", "#c0392b", {}};
      for (int t = 0; t <= s.horizon; ++t) r.points.emplace_back(t, s.P_reset[t]);
      chart.series.push_back(std::move(r));
    }
    if (s.has_continual()) {
      LineSeries c{"continual P(T)", "#2c6fbb", {}};
      for (int t = 0; t <= s.horizon; ++t) c.points.emplace_back(t, s.P_continual[t]);
      chart.series.push_back(std::move(c));
    }
    chart.references.push_back({"2/pi", kTwoOverPi});
    emit.write("recurrence.svg", render_line_chart(chart, bundle.provenance.line()));
  }

  if (cfg.formats.table) {
    table << "T = " << s.horizon << "\n";
    if (s.has_continual()) {
      table << "P_continual(T) = " << fixed(s.P_continual.back()) << "  (2/pi = "
            << fixed(kTwoOverPi) << ")\n";
      table << "survival s_T   = " << fixed(s.survival.back()) << "\n";
    }
    if (s.has_reset()) table << "P_reset(T)     = " << fixed(s.P_reset.back()) << "\n";
  }
}

void emit_grid(const RunConfig& cfg, const DistributionGrid& g, const std::string& stem,
               Emitter& emit, const ResultBundle& bundle) {
  emit.csv(stem + ".csv", "t,x,probability", grid_csv_body(g));
  if (cfg.formats.chart) {
    Heatmap map{grid_title(g), g.horizon, g.cells};
    emit.write(stem + ".svg", render_heatmap(map, bundle.provenance.line()));
  }
}

void run_evolve(const RunConfig& cfg, ResultBundle& bundle, Emitter& emit, std::ostream& table) {
  DistributionGrid g = unitary_grid(cfg, "unitary");
  emit_grid(cfg, g, "distribution", emit, bundle);
  if (cfg.formats.table) {
    table << "t     p(0,t)          <x^2>\n";
    for (int t = 0; t <= cfg.steps; ++t) {
      double m2 = 0.0;
      for (int x = -t; x <= t; x += 2) m2 += static_cast<double>(x) * x * g.cells[t][x + cfg.steps];
      char line[96];
      std::snprintf(line, sizeof line, "%-5d %.10f  %.6f\n", t, g.cells[t][cfg.steps], m2);
      table << line;
    }
  }
  bundle.distributions.push_back(std::move(g));
}

void run_recurrence(const RunConfig& cfg, ResultBundle& bundle, Emitter& emit,
                    std::ostream& table) {
  bundle.recurrence = recurrence_for(cfg);
  emit_recurrence(cfg, *bundle.recurrence, emit, bundle, table);
}

void run_compare(const RunConfig& cfg, ResultBundle& bundle, Emitter& emit, std::ostream& table) {
  RunConfig charted = cfg;
  charted.formats.chart = true;
  bundle.recurrence = recurrence_for(charted);
  emit_recurrence(charted, *bundle.recurrence, emit, bundle, table);
  DistributionGrid reset = unitary_grid(charted, "reset");
  DistributionGrid cond = conditional_grid(charted);
  emit_grid(charted, reset, "heatmap_reset", emit, bundle);
  emit_grid(charted, cond, "heatmap_continual", emit, bundle);
  bundle.distributions.push_back(std::move(reset));
  bundle.distributions.push_back(std::move(cond));
}

void run_classical(const RunConfig& cfg, ResultBundle& bundle, Emitter& emit,
                   std::ostream& table) {
  const LatticeWalkSpec spec{cfg.dimension};
  bundle.classical = classical_series(spec, cfg.steps);
  if (cfg.trials > 0) {
    bundle.monte_carlo = monte_carlo_first_return(spec, cfg.steps, cfg.trials, *cfg.seed, cfg.threads);
  }
  const ClassicalSeries& c = *bundle.classical;
  std::string header = "t,p_origin,q_first_return";
  if (bundle.monte_carlo) header += ",q_hat,standard_error";
  std::ostringstream body;
  for (int t = 0; t <= c.horizon; ++t) {
    body << t << ',' << format_real(c.p_origin[t]) << ',' << format_real(c.q_first_return[t]);
    if (bundle.monte_carlo) {
      body << ',' << format_real(bundle.monte_carlo->q_hat[t]) << ','
           << format_real(bundle.monte_carlo->standard_error[t]);
    }
    body << '\n';
  }
  emit.csv("classical.csv", header, body.str());

  if (cfg.formats.chart) {
    LineChart chart{"Classical recurrence, d = " + std::to_string(c.dimension), "T",
                    "recurrence probability", {}, {}};
    LineSeries q{"sum of q(0,t)", "#2c6fbb", {}}, r{"1 - prod(1 - p(0,t))", "#c0392b", {}};
    double sum = 0.0, miss = 1.0;
    for (int t = 0; t <= c.horizon; ++t) {
      if (t > 0) {
        sum += c.q_first_return[t];
        miss *= 1.0 - c.p_origin[t];
      }
      q.points.emplace_back(t, sum);
      r.points.emplace_back(t, 1.0 - miss);
    }
    chart.series = {std::move(r), std::move(q)};
    emit.write("classical.svg", render_line_chart(chart, bundle.provenance.line()));
  }
  if (cfg.formats.table) {
    table << "d = " << c.dimension << ", T = " << c.horizon << "\n";
    table << "Polya (sum q)         = " << fixed(c.polya_from_q) << "\n";
    table << "Polya (1 - 1/sum p)   = " << fixed(c.polya_from_p.value) << "  ["
          << to_string(c.polya_from_p.quality) << "]\n";
    table << "Polya (renewal form)  = " << fixed(c.polya_from_p.renewal_value) << "\n";
    table << "reset 1 - prod(1 - p) = " << fixed(c.reset_recurrence) << "\n";
    if (bundle.monte_carlo) {
      const MonteCarloEstimate& m = *bundle.monte_carlo;
      double worst = 0.0;
      for (int t = 1; t <= c.horizon; ++t) {
        const double sigma = std::sqrt(c.q_first_return[t] * (1 - c.q_first_return[t]) / m.trials);
        if (sigma > 0) worst = std::max(worst, std::abs(m.q_hat[t] - c.q_first_return[t]) / sigma);
      }
      table << "Monte Carlo: " << m.trials << " trials, max |q_hat - q| / sigma = " << fixed(worst, 3)
            << "\n";
    }
  }
}

void run_experiment(const RunConfig& cfg, ResultBundle& bundle, Emitter& emit,
                    std::ostream& table) {
  const int T = cfg.steps;
  SimulationOptions o;
  o.horizon = T;
  o.hwp_angle = cfg.experiment_hwp_angle();
  o.initial = cfg.initial;
  o.bins = cfg.bins;
  o.repetition_rate_hz = cfg.repetition_rate_hz;
  o.integration_time_s = cfg.integration_time_s;
  if (cfg.sample) o.seed = cfg.seed;
  CountRecord reset = simulate_counts(Scheme::kReset, cfg.params, o);
  if (o.seed) o.seed = *o.seed + 1;  // independent stream for the second run
  CountRecord continual = simulate_counts(Scheme::kContinual, cfg.params, o);
  reset.provenance = bundle.provenance.line();
  continual.provenance = bundle.provenance.line();

  ExperimentSummary e;
  e.horizon = T;
  e.sampled = cfg.sample;
  auto dump = [](const CountRecord& r) {
    std::ostringstream s;
    write_count_record(s, r);
    return s.str();
  };
  emit.write("reset.counts", dump(reset));
  e.count_files.push_back("reset.counts");
  if (cfg.wants_continual()) {
    emit.write("continual.counts", dump(continual));
    e.count_files.push_back("continual.counts");
  }

  if (cfg.wants_reset()) {
    e.p_origin.assign(T + 1, 0.0);
    e.p_origin[0] = 1.0;
    for (int t = 1; t <= T; ++t) e.p_origin[t] = normalize_reset(reset, t);
    e.p_envelope =
        error_envelope(cfg.params, ErrorRanges{}, o.hwp_angle, Scheme::kReset, T).deviation;
  }
  if (cfg.wants_continual()) {
    e.q_first_return.assign(T + 1, 0.0);
    e.survival.assign(T + 1, 0.0);
    e.q_alternative.assign(T + 1, 0.0);
    e.survival[0] = 1.0;
    for (int t = 1; t <= T; ++t) {
      const ContinualEstimate c = normalize_continual(continual, reset, t);
      e.q_first_return[t] = c.first_return;
      e.survival[t] = c.survival;
      e.q_alternative[t] = normalize_continual_alternative(continual, reset, t);
    }
    e.q_envelope =
        error_envelope(cfg.params, ErrorRanges{}, o.hwp_angle, Scheme::kContinual, T).deviation;
  }

  std::string header = "t";
  if (cfg.wants_reset()) header += ",p_origin,p_envelope";
  if (cfg.wants_continual()) header += ",q_first_return,q_envelope,survival,q_alternative";
  std::ostringstream body;
  for (int t = 0; t <= T; ++t) {
    body << t;
    if (cfg.wants_reset()) {
      body << ',' << format_real(e.p_origin[t]) << ',' << format_real(e.p_envelope[t]);
    }
    if (cfg.wants_continual()) {
      body << ',' << format_real(e.q_first_return[t]) << ',' << format_real(e.q_envelope[t]) << ','
           << format_real(e.survival[t]) << ',' << format_real(e.q_alternative[t]);
    }
    body << '\n';
  }
  emit.csv("normalized.csv", header, body.str());

  if (cfg.formats.chart) {
    LineChart chart{"Normalized origin probabilities from counts", "t", "probability", {}, {}};
    if (cfg.wants_reset()) {
      LineSeries p{"reset p(0,t)", "#c0392b", {}};
      for (int t = 0; t <= T; ++t) p.points.emplace_back(t, e.p_origin[t]);
      chart.series.push_back(std::move(p));
    }
    if (cfg.wants_continual()) {
      LineSeries q{"continual q(0,t)", "#2c6fbb", {}};
      for (int t = 0; t <= T; ++t) q.points.emplace_back(t, e.q_first_return[t]);
      chart.series.push_back(std::move(q));
    }
    emit.write("normalized.svg", render_line_chart(chart, bundle.provenance.line()));
  }

  if (cfg.formats.table) {
    table << (cfg.sample ? "Poisson-sampled counts" : "expected-value counts") << ", T = " << T
          << "\n";
    table << "t    ";
    if (cfg.wants_reset()) table << "p(0,t)          +/-            ";
    if (cfg.wants_continual()) table << "q(0,t)          +/-            s_{t-1}";
    table << "\n";
    for (int t = 1; t <= T; ++t) {
      char line[160];
      std::snprintf(line, sizeof line, "%-4d ", t);
      table << line;
      if (cfg.wants_reset()) {
        std::snprintf(line, sizeof line, "%.12f  %.12f  ", e.p_origin[t], e.p_envelope[t]);
        table << line;
      }
      if (cfg.wants_continual()) {
        std::snprintf(line, sizeof line, "%.12f  %.12f  %.12f", e.q_first_return[t],
                      e.q_envelope[t], e.survival[t]);
        table << line;
      }
      table << "\n";
    }
  }
  bundle.experiment = std::move(e);
}

}  // namespace

ResultBundle run(const RunConfig& cfg, std::ostream& table) {
  ResultBundle bundle;
  bundle.provenance = {config_hash(cfg.canonical()), cfg.seed, tool_version(),
                       std::string(to_string(cfg.subcommand))};
  Emitter emit(cfg, bundle);
  switch (cfg.subcommand) {
    case Subcommand::kEvolve:
      run_evolve(cfg, bundle, emit, table);
      break;
    case Subcommand::kRecurrence:
      run_recurrence(cfg, bundle, emit, table);
      break;
    case Subcommand::kCompare:
      run_compare(cfg, bundle, emit, table);
      break;
    case Subcommand::kClassical:
      run_classical(cfg, bundle, emit, table);
      break;
    case Subcommand::kExperiment:
      run_experiment(cfg, bundle, emit, table);
      break;
  }
  if (cfg.formats.json) write_file_atomic(cfg.out_dir / "results.json", to_json(bundle));
  return bundle;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const EarlyExit&) {
    return 0;
  } catch (const ConfigError& e) {
    err << "qwalk: config error: " << e.what() << "\n";
    return 2;
  }
  try {
    run(cfg, out);
    return 0;
  } catch (const std::exception& e) {
    err << "qwalk: computation error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace qwalk::app
