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

#include "qwalk/app/results.hpp"

#include <json.hpp>

#include <cstdio>
#include <stdexcept>

namespace qwalk::app {

using nlohmann::json;

std::string Provenance::line() const {
  return "config_hash=" + config_hash + ";seed=" + (seed ? std::to_string(*seed) : "none") +
         ";tool_version=" + tool_version + ";subcommand=" + subcommand;
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

json seed_json(const std::optional<std::uint64_t>& seed) {
  return seed ? json(*seed) : json(nullptr);
}

std::optional<std::uint64_t> seed_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::uint64_t>();
}

json truncated_json(const TruncatedPolya& p) {
  return {{"value", p.value},
          {"partial_sum", p.partial_sum},
          {"renewal_value", p.renewal_value},
          {"quality", to_string(p.quality)}};
}

TruncationQuality quality_from(const std::string& s) {
  for (auto q : {TruncationQuality::kConverging, TruncationQuality::kDivergentSeries,
                 TruncationQuality::kArtifact}) {
    if (to_string(q) == s) return q;
  }
  throw std::runtime_error("unknown truncation quality '" + s + "'");
}

}  // namespace

std::string to_json(const ResultBundle& b) {
  json j;
  j["provenance"] = {{"config_hash", b.provenance.config_hash},
                     {"seed", seed_json(b.provenance.seed)},
                     {"tool_version", b.provenance.tool_version},
                     {"subcommand", b.provenance.subcommand}};
  if (b.recurrence) {
    const RecurrenceSeries& r = *b.recurrence;
    json rj = {{"horizon", r.horizon},
               {"p_origin", r.p_origin},
               {"q_first_return", r.q_first_return},
               {"survival", r.survival},
               {"P_continual", r.P_continual},
               {"P_reset", r.P_reset}};
    if (r.has_continual()) rj["P_continual_final"] = r.P_continual.back();
    if (r.has_reset()) rj["P_reset_final"] = r.P_reset.back();
    j["recurrence"] = rj;
  }
  if (b.classical) {
    const ClassicalSeries& c = *b.classical;
    j["classical"] = {{"dimension", c.dimension},
                      {"horizon", c.horizon},
                      {"p_origin", c.p_origin},
                      {"q_first_return", c.q_first_return},
                      {"polya_from_q", c.polya_from_q},
                      {"polya_from_p", truncated_json(c.polya_from_p)},
                      {"reset_recurrence", c.reset_recurrence}};
  }
  if (b.monte_carlo) {
    const MonteCarloEstimate& m = *b.monte_carlo;
    j["monte_carlo"] = {{"dimension", m.dimension},
                        {"horizon", m.horizon},
                        {"trials", m.trials},
                        {"seed", m.seed},
                        {"rng_algorithm", m.rng_algorithm},
                        {"q_hat", m.q_hat},
                        {"standard_error", m.standard_error}};
  }
  if (b.experiment) {
    const ExperimentSummary& e = *b.experiment;
    j["experiment"] = {{"horizon", e.horizon},
                       {"sampled", e.sampled},
                       {"p_origin", e.p_origin},
                       {"p_envelope", e.p_envelope},
                       {"q_first_return", e.q_first_return},
                       {"q_envelope", e.q_envelope},
                       {"survival", e.survival},
                       {"q_alternative", e.q_alternative},
                       {"count_files", e.count_files}};
  }
  json grids = json::array();
  for (const DistributionGrid& g : b.distributions) {
    grids.push_back({{"kind", g.kind}, {"horizon", g.horizon}, {"cells", g.cells}});
  }
  j["distributions"] = grids;
  j["files"] = b.files;
  return j.dump(2) + "\n";
}

ResultBundle bundle_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ResultBundle b;
    const json& p = j.at("provenance");
    b.provenance.config_hash = p.at("config_hash").get<std::string>();
    b.provenance.seed = seed_from(p.at("seed"));
    b.provenance.tool_version = p.at("tool_version").get<std::string>();
    b.provenance.subcommand = p.at("subcommand").get<std::string>();
    if (j.contains("recurrence")) {
      const json& r = j["recurrence"];
      RecurrenceSeries s;
      s.horizon = r.at("horizon").get<int>();
      r.at("p_origin").get_to(s.p_origin);
      r.at("q_first_return").get_to(s.q_first_return);
      r.at("survival").get_to(s.survival);
      r.at("P_continual").get_to(s.P_continual);
      r.at("P_reset").get_to(s.P_reset);
      b.recurrence = std::move(s);
    }
    if (j.contains("classical")) {
      const json& c = j["classical"];
      ClassicalSeries s;
      s.dimension = c.at("dimension").get<int>();
      s.horizon = c.at("horizon").get<int>();
      c.at("p_origin").get_to(s.p_origin);
      c.at("q_first_return").get_to(s.q_first_return);
      s.polya_from_q = c.at("polya_from_q").get<double>();
      const json& tp = c.at("polya_from_p");
      s.polya_from_p.value = tp.at("value").get<double>();
      s.polya_from_p.partial_sum = tp.at("partial_sum").get<double>();
      s.polya_from_p.renewal_value = tp.at("renewal_value").get<double>();
      s.polya_from_p.quality = quality_from(tp.at("quality").get<std::string>());
      s.reset_recurrence = c.at("reset_recurrence").get<double>();
      b.classical = std::move(s);
    }
    if (j.contains("monte_carlo")) {
      const json& m = j["monte_carlo"];
      MonteCarloEstimate e;
      e.dimension = m.at("dimension").get<int>();
      e.horizon = m.at("horizon").get<int>();
      e.trials = m.at("trials").get<std::int64_t>();
      e.seed = m.at("seed").get<std::uint64_t>();
      e.rng_algorithm = m.at("rng_algorithm").get<std::string>();
      m.at("q_hat").get_to(e.q_hat);
      m.at("standard_error").get_to(e.standard_error);
      b.monte_carlo = std::move(e);
    }
    if (j.contains("experiment")) {
      const json& x = j["experiment"];
      ExperimentSummary e;
      e.horizon = x.at("horizon").get<int>();
      e.sampled = x.at("sampled").get<bool>();
      x.at("p_origin").get_to(e.p_origin);
      x.at("p_envelope").get_to(e.p_envelope);
      x.at("q_first_return").get_to(e.q_first_return);
      x.at("q_envelope").get_to(e.q_envelope);
      x.at("survival").get_to(e.survival);
      x.at("q_alternative").get_to(e.q_alternative);
      x.at("count_files").get_to(e.count_files);
      b.experiment = std::move(e);
    }
    for (const json& g : j.at("distributions")) {
      DistributionGrid grid;
      grid.kind = g.at("kind").get<std::string>();
      grid.horizon = g.at("horizon").get<int>();
      g.at("cells").get_to(grid.cells);
      b.distributions.push_back(std::move(grid));
    }
    j.at("files").get_to(b.files);
    return b;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("result bundle: ") + e.what());
  }
}

}  // namespace qwalk::app
