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

#include <cstdlib>
#include <string>
#include <vector>

#include "qwalk/app/config.hpp"

namespace qwalk::app {
namespace {

const std::string kData = QWALK_TEST_DATA;

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "qwalk");
  return parse_config(args);
}

std::string config_error(std::vector<std::string> args) {
  try {
    parse(std::move(args));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(ParseConfig, RecurrenceBothSchemes) {
  const RunConfig c = parse({"recurrence", "--coin", "hadamard", "--steps", "36", "--scheme", "both"});
  EXPECT_EQ(c.subcommand, Subcommand::kRecurrence);
  EXPECT_EQ(c.steps, 36);
  EXPECT_EQ(c.scheme, SchemeChoice::kBoth);
  EXPECT_TRUE(c.wants_reset());
  EXPECT_TRUE(c.wants_continual());
  EXPECT_EQ(c.coin, CoinChoice::kHadamard);
}

TEST(ParseConfig, StepsZeroIsRangeError) {
  const std::string msg = config_error({"recurrence", "--steps", "0"});
  ASSERT_FALSE(msg.empty());
  EXPECT_NE(msg.find("steps"), std::string::npos) << msg;
}

TEST(ParseConfig, FlagOverridesFile) {
  const std::string ini = kData + "/steps100.ini";
  EXPECT_EQ(parse({"recurrence", "--config", ini}).steps, 100);
  EXPECT_EQ(parse({"recurrence", "--config", ini, "--steps", "36"}).steps, 36);
  EXPECT_EQ(parse({"recurrence", "--steps", "36", "--config", ini}).steps, 36);
}

TEST(ParseConfig, UnknownFileKeyNamed) {
  const std::string msg = config_error({"recurrence", "--config", kData + "/unknown_key.ini"});
  ASSERT_FALSE(msg.empty());
  EXPECT_NE(msg.find("bogus_key"), std::string::npos) << msg;
}

TEST(ParseConfig, UnknownFlagNamed) {
  const std::string msg = config_error({"recurrence", "--stepz", "3"});
  ASSERT_FALSE(msg.empty());
  EXPECT_NE(msg.find("stepz"), std::string::npos) << msg;
}

TEST(ParseConfig, ExactlyOneSubcommand) {
  EXPECT_FALSE(config_error({}).empty());
  EXPECT_FALSE(config_error({"recurrence", "evolve"}).empty());
}

TEST(ParseConfig, ConflictingSchemeFlags) {
  const std::string msg =
      config_error({"recurrence", "--scheme", "reset", "--sink-positions", "0,2"});
  ASSERT_FALSE(msg.empty());
  EXPECT_NE(msg.find("sink"), std::string::npos) << msg;
  EXPECT_FALSE(config_error({"compare", "--scheme", "reset"}).empty());
}

TEST(ParseConfig, OutOfRangeValuesNamed) {
  EXPECT_NE(config_error({"recurrence", "--sink-residual", "1.5"}).find("sink-residual"),
            std::string::npos);
  EXPECT_NE(config_error({"experiment", "--efficiency", "1.5"}).find("roundtrip_efficiency"),
            std::string::npos);
  EXPECT_NE(config_error({"classical", "--dimension", "4"}).find("dimension"), std::string::npos);
  EXPECT_NE(config_error({"classical", "--dimension", "3", "--steps", "5000"}).find("steps"),
            std::string::npos);
  EXPECT_NE(config_error({"recurrence", "--initial", "0.5,0,0.5,0"}).find("initial"),
            std::string::npos);
  EXPECT_NE(config_error({"recurrence", "--coin", "grover"}).find("coin"), std::string::npos);
}

TEST(ParseConfig, SeedRequirements) {
  EXPECT_NE(config_error({"experiment", "--sample"}).find("seed"), std::string::npos);
  EXPECT_NE(config_error({"classical", "--trials", "10"}).find("seed"), std::string::npos);
  EXPECT_TRUE(config_error({"experiment", "--sample", "--seed", "7"}).empty());
}

TEST(ParseConfig, HwpAngleImpliesHwpCoin) {
  const RunConfig c = parse({"recurrence", "--hwp-angle", "0.3"});
  EXPECT_EQ(c.coin, CoinChoice::kHwp);
  EXPECT_DOUBLE_EQ(c.hwp_angle, 0.3);
  EXPECT_DOUBLE_EQ(c.experiment_hwp_angle(), 0.3);
  EXPECT_FALSE(config_error({"recurrence", "--coin", "identity", "--hwp-angle", "0.3"}).empty());
}

TEST(ParseConfig, InitialPresetsAndAmplitudes) {
  EXPECT_EQ(parse({"evolve", "--initial", "L"}).initial.l, Amplitude(1.0, 0.0));
  const RunConfig c = parse({"evolve", "--initial", "0.6,0,0,0.8"});
  EXPECT_EQ(c.initial.r, Amplitude(0.6, 0.0));
  EXPECT_EQ(c.initial.l, Amplitude(0.0, 0.8));
}

TEST(ParseConfig, FormatsAndOutDir) {
  const RunConfig c = parse({"compare", "--format", "json,chart", "--out", "/tmp/x"});
  EXPECT_FALSE(c.formats.table);
  EXPECT_TRUE(c.formats.json);
  EXPECT_TRUE(c.formats.chart);
  EXPECT_EQ(c.out_dir, std::filesystem::path("/tmp/x"));
}

TEST(ParseConfig, OutDirFromEnvironment) {
  ::setenv(kOutDirEnv, "/tmp/from-env", 1);
  EXPECT_EQ(parse({"evolve"}).out_dir, std::filesystem::path("/tmp/from-env"));
  EXPECT_EQ(parse({"evolve", "--out", "/tmp/flag"}).out_dir, std::filesystem::path("/tmp/flag"));
  ::unsetenv(kOutDirEnv);
  EXPECT_EQ(parse({"evolve"}).out_dir, std::filesystem::path(kDefaultOutDir));
}

TEST(ParseConfig, ExperimentOverrides) {
  const RunConfig c = parse({"experiment", "--nominal", "--dark-rate", "200", "--sink-residual",
                             "0.01", "--steps", "12"});
  EXPECT_DOUBLE_EQ(c.params.roundtrip_efficiency, 0.8);
  EXPECT_DOUBLE_EQ(c.params.dark_count_rate, 200.0);
  EXPECT_DOUBLE_EQ(c.params.sink_residual_transmission, 0.01);
  EXPECT_FALSE(config_error({"experiment", "--coin", "identity"}).empty());
  EXPECT_FALSE(config_error({"experiment", "--sink-positions", "2"}).empty());
}

TEST(ParseConfig, CanonicalIgnoresOutputChoices) {
  const RunConfig a = parse({"recurrence", "--steps", "12", "--out", "/tmp/a"});
  const RunConfig b = parse({"recurrence", "--steps", "12", "--out", "/tmp/b", "--format", "json"});
  const RunConfig c = parse({"recurrence", "--steps", "13"});
  EXPECT_EQ(a.canonical(), b.canonical());
  EXPECT_NE(a.canonical(), c.canonical());
}

}  // namespace
}  // namespace qwalk::app
