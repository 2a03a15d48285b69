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

#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <sstream>

#include "qwalk/count_record_io.hpp"

using namespace qwalk;

namespace {

std::string write(const CountRecord& r) {
  std::ostringstream out;
  write_count_record(out, r);
  return out.str();
}

CountRecord read(const std::string& text) {
  std::istringstream in(text);
  return read_count_record(in);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(FormatReal, ShortestRoundTrip) {
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(400.0), "400");
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10000; ++i) {
    double v;
    const std::uint64_t bits = rng();
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) continue;
    EXPECT_TRUE(same_bits(parse_real(format_real(v)), v)) << format_real(v);
  }
  EXPECT_THROW(parse_real("1.0x"), std::invalid_argument);
  EXPECT_THROW(parse_real(""), std::invalid_argument);
}

TEST(CountRecordIo, HeaderLayout) {
  SimulationOptions o;
  o.horizon = 1;
  const std::string text = write(simulate_counts(Scheme::kContinual, {}, o));
  EXPECT_EQ(text.rfind("# scheme=continual\n# seed=none\n# params=horizon=1;", 0), 0u);
  EXPECT_NE(text.find("\nt,x,coin,expected,counts\n0,0,R,400,400\n"), std::string::npos);
}

TEST(CountRecordIo, ExpectedModeRoundTripIsBitExact) {
  SimulationOptions o;
  o.horizon = 36;
  o.hwp_angle = kHadamardHwpAngle + 1e-3;
  ImperfectionParams p = ImperfectionParams::nominal();
  p.sink_residual_transmission = 0.01;
  p.arm_loss_asymmetry = -0.0071;
  p.dark_count_rate = 123.456;
  for (Scheme s : {Scheme::kReset, Scheme::kContinual}) {
    const CountRecord r = simulate_counts(s, p, o);
    const CountRecord back = read(write(r));
    EXPECT_EQ(back, r);
    ASSERT_EQ(back.rows.size(), r.rows.size());
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      ASSERT_TRUE(same_bits(back.rows[i].expected, r.rows[i].expected));
    }
    EXPECT_EQ(write(back), write(r));
  }
}

TEST(CountRecordIo, ProvenanceLineIsOptional) {
  SimulationOptions o;
  o.horizon = 2;
  CountRecord r = simulate_counts(Scheme::kReset, {}, o);
  r.provenance = "config_hash=fnv1a64:0123456789abcdef;tool_version=0.1.0";
  const std::string text = write(r);
  EXPECT_NE(text.find("\n# provenance=config_hash="), std::string::npos);
  EXPECT_EQ(read(text), r);
}

TEST(CountRecordIo, SampledRoundTrip) {
  SimulationOptions o;
  o.horizon = 8;
  o.seed = 18446744073709551557ull;
  const CountRecord r = simulate_counts(Scheme::kReset, ImperfectionParams::nominal(), o);
  const CountRecord back = read(write(r));
  EXPECT_EQ(back, r);
  EXPECT_EQ(*back.seed, 18446744073709551557ull);
}

TEST(CountRecordIo, RejectsMalformedInput) {
  SimulationOptions o;
  o.horizon = 2;
  const std::string good = write(simulate_counts(Scheme::kReset, {}, o));
  auto replaced = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    const auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return s.replace(pos, from.size(), to);
  };
  EXPECT_THROW(read(replaced("# scheme=reset", "# scheme=weird")), std::runtime_error);
  EXPECT_THROW(read(replaced("# seed=none", "# seed=-4")), std::runtime_error);
  EXPECT_THROW(read(replaced("horizon=2;", "horizon=2;bogus=1;")), std::runtime_error);
  EXPECT_THROW(read(replaced("hwp_angle=", "hwp_angel=")), std::runtime_error);
  EXPECT_THROW(read(replaced("0,0,R,400,400", "0,0,R,400")), std::runtime_error);
  EXPECT_THROW(read(replaced("0,0,R,400,400", "0,0,Q,400,400")), std::runtime_error);
  EXPECT_THROW(read(replaced("0,0,R,400,400", "0,0,R,400,-1")), std::runtime_error);
  EXPECT_THROW(read(replaced("# seed=none\n", "")), std::runtime_error);
  EXPECT_THROW(read(replaced("t,x,coin,expected,counts\n", "")), std::runtime_error);
  EXPECT_THROW(read("# comment\n"), std::runtime_error);

  try {
    read(replaced("0,0,R,400,400", "0,0,R,abc,400"));
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos) << e.what();
  }
}
