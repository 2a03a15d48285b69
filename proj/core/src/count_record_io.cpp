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

#include "qwalk/count_record_io.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qwalk {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_real(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    // from_chars does not accept "inf"; the writer never produces it for counts.
    throw std::invalid_argument("not a real number: '" + text + "'");
  }
  return v;
}

namespace {

template <class Int>
Int parse_int(const std::string& text) {
  Int v{};
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::invalid_argument("not an integer: '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(s);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

constexpr const char* kColumns = "t,x,coin,expected,counts";

}  // namespace

void write_count_record(std::ostream& out, const CountRecord& r) {
  const ImperfectionParams& p = r.params;
  out << "# scheme=" << to_string(r.scheme) << '\n';
  out << "# seed=" << (r.seed ? std::to_string(*r.seed) : std::string("none")) << '\n';
  if (!r.provenance.empty()) out << "# provenance=" << r.provenance << '\n';
  out << "# params="
      << "horizon=" << r.horizon << ";hwp_angle=" << format_real(r.hwp_angle)
      << ";roundtrip_efficiency=" << format_real(p.roundtrip_efficiency)
      << ";arm_loss_asymmetry=" << format_real(p.arm_loss_asymmetry)
      << ";coin_angle_error=" << format_real(p.coin_angle_error)
      << ";sink_residual_transmission=" << format_real(p.sink_residual_transmission)
      << ";detector_efficiency_r=" << format_real(p.detector_efficiencies[0])
      << ";detector_efficiency_l=" << format_real(p.detector_efficiencies[1])
      << ";dark_count_rate=" << format_real(p.dark_count_rate)
      << ";mean_input_photons=" << format_real(p.mean_input_photons)
      << ";saturation_ceiling=" << format_real(p.saturation_ceiling)
      << ";loop_time_ns=" << format_real(r.bins.loop_time_ns)
      << ";position_pitch_ns=" << format_real(r.bins.position_pitch_ns)
      << ";detection_window_ns=" << format_real(r.bins.detection_window_ns)
      << ";repetition_rate_hz=" << format_real(r.repetition_rate_hz)
      << ";integration_time_s=" << format_real(r.integration_time_s)
      << ";dark_floor=" << format_real(r.dark_floor) << '\n';
  out << kColumns << '\n';
  for (const CountRow& row : r.rows) {
    out << row.step << ',' << row.position << ',' << to_string(row.channel) << ','
        << format_real(row.expected) << ',' << row.counts << '\n';
  }
}

CountRecord read_count_record(std::istream& in) {
  CountRecord r;
  bool have_scheme = false, have_seed = false, have_params = false, have_columns = false;
  std::string line;
  int line_no = 0;
  auto fail = [&line_no](const std::string& why) {
    throw std::runtime_error("count record line " + std::to_string(line_no) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      if (line.rfind("# scheme=", 0) == 0) {
        r.scheme = parse_scheme(line.substr(9));
        have_scheme = true;
      } else if (line.rfind("# seed=", 0) == 0) {
        const std::string v = line.substr(7);
        if (v == "none") {
          r.seed.reset();
        } else {
          r.seed = parse_int<std::uint64_t>(v);
        }
        have_seed = true;
      } else if (line.rfind("# provenance=", 0) == 0) {
        r.provenance = line.substr(13);
      } else if (line.rfind("# params=", 0) == 0) {
        std::map<std::string, std::string> kv;
        for (const std::string& item : split(line.substr(9), ';')) {
          const auto eq = item.find('=');
          if (eq == std::string::npos) fail("malformed params entry '" + item + "'");
          kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
        auto take = [&](const char* key) {
          auto it = kv.find(key);
          if (it == kv.end()) fail(std::string("missing params key '") + key + "'");
          std::string v = it->second;
          kv.erase(it);
          return v;
        };
        ImperfectionParams& p = r.params;
        r.horizon = parse_int<int>(take("horizon"));
        r.hwp_angle = parse_real(take("hwp_angle"));
        p.roundtrip_efficiency = parse_real(take("roundtrip_efficiency"));
        p.arm_loss_asymmetry = parse_real(take("arm_loss_asymmetry"));
        p.coin_angle_error = parse_real(take("coin_angle_error"));
        p.sink_residual_transmission = parse_real(take("sink_residual_transmission"));
        p.detector_efficiencies[0] = parse_real(take("detector_efficiency_r"));
        p.detector_efficiencies[1] = parse_real(take("detector_efficiency_l"));
        p.dark_count_rate = parse_real(take("dark_count_rate"));
        p.mean_input_photons = parse_real(take("mean_input_photons"));
        p.saturation_ceiling = parse_real(take("saturation_ceiling"));
        r.bins.loop_time_ns = parse_real(take("loop_time_ns"));
        r.bins.position_pitch_ns = parse_real(take("position_pitch_ns"));
        r.bins.detection_window_ns = parse_real(take("detection_window_ns"));
        r.repetition_rate_hz = parse_real(take("repetition_rate_hz"));
        r.integration_time_s = parse_real(take("integration_time_s"));
        r.dark_floor = parse_real(take("dark_floor"));
        if (!kv.empty()) fail("unknown params key '" + kv.begin()->first + "'");
        have_params = true;
      } else if (line[0] == '#') {
        fail("unknown header line");
      } else if (line == kColumns) {
        have_columns = true;
      } else {
        if (!have_columns) fail("data row before the column header");
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 5) fail("expected 5 columns");
        CountRow row;
        row.step = parse_int<int>(f[0]);
        row.position = parse_int<int>(f[1]);
        row.channel = parse_channel(f[2]);
        row.expected = parse_real(f[3]);
        row.counts = parse_int<std::int64_t>(f[4]);
        if (row.expected < 0.0 || row.counts < 0) fail("negative count");
        r.rows.push_back(row);
      }
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (!have_scheme || !have_seed || !have_params || !have_columns) {
    throw std::runtime_error("count record is missing a header line");
  }
  return r;
}

}  // namespace qwalk
