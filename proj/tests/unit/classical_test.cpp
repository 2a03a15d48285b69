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

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qwalk/classical.hpp"
#include "qwalk/error.hpp"

using namespace qwalk;

namespace {

constexpr double kTol = 1e-12;

const LatticeWalkSpec kD1{1}, kD2{2}, kD3{3};

// Least-squares slope of log p(0,t) against log t over even t in [100, 1000].
double fitted_exponent(const LatticeWalkSpec& spec) {
  const auto p = classical_origin_series(spec, 1000);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int t = 100; t <= 1000; t += 2) {
    const double x = std::log(t), y = std::log(p[t]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST(ClassicalSpec, Validation) {
  EXPECT_THROW(LatticeWalkSpec{0}.validate(), std::invalid_argument);
  EXPECT_THROW(LatticeWalkSpec{4}.validate(), std::invalid_argument);
  EXPECT_NO_THROW(kD3.validate());
  EXPECT_THROW(classical_first_return(kD3, max_first_return_horizon(3) + 2), std::invalid_argument);
}

TEST(ClassicalOrigin, Examples) {
  EXPECT_EQ(classical_origin_probability(kD1, 0), 1.0);
  EXPECT_NEAR(classical_origin_probability(kD1, 2), 0.5, kTol);
  EXPECT_NEAR(classical_origin_probability(kD1, 4), 0.375, kTol);
  EXPECT_NEAR(classical_origin_probability(kD1, 6), 0.3125, kTol);
  EXPECT_EQ(classical_origin_probability(kD1, 7), 0.0);
  EXPECT_NEAR(classical_origin_probability(kD2, 2), 0.25, kTol);
  EXPECT_NEAR(classical_origin_probability(kD2, 4), 0.140625, kTol);
  EXPECT_NEAR(classical_origin_probability(kD3, 2), 1.0 / 6.0, kTol);
  EXPECT_NEAR(classical_origin_probability(kD3, 4), 0.0694444444444444444, kTol);
}

TEST(ClassicalFirstReturn, Examples) {
  EXPECT_NEAR(classical_first_return(kD1, 2), 0.5, kTol);
  EXPECT_NEAR(classical_first_return(kD1, 4), 0.125, kTol);
  EXPECT_NEAR(classical_first_return(kD1, 6), 0.0625, kTol);
  EXPECT_EQ(classical_first_return(kD1, 5), 0.0);
  EXPECT_NEAR(classical_first_return(kD2, 2), 0.25, kTol);
  EXPECT_NEAR(classical_first_return(kD2, 4), 0.078125, kTol);
  EXPECT_NEAR(classical_first_return(kD3, 4), 0.0416666666666666667, kTol);
}

TEST(ClassicalSeries, MatchesEnumeration) {
  for (int d = 1; d <= 3; ++d) {
    const int T = d == 1 ? 14 : d == 2 ? 8 : 6;
    const auto p = classical_origin_series({d}, T);
    const auto q = classical_first_return_series({d}, T);
    for (int t = 1; t <= T; ++t) {
      const auto [pe, qe] = oracle::classical_enumeration(d, t);
      EXPECT_NEAR(p[t], pe, kTol) << "d=" << d << " t=" << t;
      EXPECT_NEAR(q[t], qe, kTol) << "d=" << d << " t=" << t;
    }
  }
}

TEST(Polya, FromQ) {
  EXPECT_NEAR(polya_number_from_q(kD1, 4), 0.625, kTol);
  EXPECT_GT(polya_number_from_q(kD1, 10000), 0.97);
  // Transient in three dimensions: known limit 0.3405..., approached from below.
  const double p3 = polya_number_from_q(kD3, 200);
  EXPECT_LT(p3, 0.3406);
  EXPECT_GT(p3, 0.3);
}

TEST(Polya, FromPWithTruncationFlags) {
  const TruncatedPolya two = polya_number_from_p(kD1, 2);
  EXPECT_NEAR(two.value, -1.0, kTol);
  EXPECT_NEAR(two.partial_sum, 0.5, kTol);
  EXPECT_EQ(two.quality, TruncationQuality::kArtifact);

  const TruncatedPolya big = polya_number_from_p(kD1, 10000);
  EXPECT_GT(big.value, 0.97);
  EXPECT_EQ(big.quality, TruncationQuality::kDivergentSeries);

  // Without the t = 0 term the d = 3 sum stays near 0.5, so 1 - 1/sum is
  // negative; the renewal form approaches 0.3405 from below.
  const TruncatedPolya d3 = polya_number_from_p(kD3, 2000);
  EXPECT_EQ(d3.quality, TruncationQuality::kArtifact);
  EXPECT_LT(d3.renewal_value, 0.3406);
  EXPECT_GT(d3.renewal_value, 0.32);
  EXPECT_NEAR(two.renewal_value, 1.0 / 3.0, kTol);

  EXPECT_THROW(polya_number_from_p(kD1, 1), ComputationError);
  EXPECT_EQ(to_string(TruncationQuality::kArtifact), "truncation-artifact");
}

TEST(ClassicalReset, Examples) {
  EXPECT_NEAR(classical_reset_recurrence(kD1, 2), 0.5, kTol);
  EXPECT_NEAR(classical_reset_recurrence(kD1, 4), 0.6875, kTol);
  EXPECT_GT(classical_reset_recurrence(kD1, 10000), 0.97);
}

TEST(ClassicalSeries, Bundle) {
  const ClassicalSeries s = classical_series(kD1, 4);
  EXPECT_EQ(s.p_origin.size(), 5u);
  EXPECT_NEAR(s.polya_from_q, 0.625, kTol);
  EXPECT_NEAR(s.reset_recurrence, 0.6875, kTol);
  EXPECT_EQ(s, classical_series(kD1, 4));
}

TEST(SchemeEquivalence, Examples) {
  const EquivalenceReport two = scheme_equivalence_check(kD1, 2);
  EXPECT_NEAR(two.classical_polya, 0.5, kTol);
  EXPECT_NEAR(two.classical_reset, 0.5, kTol);

  const EquivalenceReport r = scheme_equivalence_check(kD1, 500);
  EXPECT_GE(r.classical_polya, 0.9);
  EXPECT_GE(r.classical_reset, 0.9);
  EXPECT_TRUE(r.classical_consistent);
  EXPECT_LE(r.quantum_polya, 2.0 / std::numbers::pi);
  EXPECT_GE(r.quantum_reset, 0.9);
  EXPECT_TRUE(r.quantum_separated);
}

TEST(MonteCarlo, SmallExamples) {
  const MonteCarloEstimate e = monte_carlo_first_return(kD1, 4, 1'000'000, 42);
  EXPECT_EQ(e.rng_algorithm, kMonteCarloRng);
  EXPECT_NEAR(e.q_hat[2], 0.5, 3 * std::sqrt(0.25 / 1e6));
  EXPECT_NEAR(e.q_hat[4], 0.125, 3 * std::sqrt(0.125 * 0.875 / 1e6));

  const MonteCarloEstimate one = monte_carlo_first_return(kD2, 6, 1, 7);
  for (double q : one.q_hat) EXPECT_TRUE(q == 0.0 || q == 1.0);
  EXPECT_THROW(monte_carlo_first_return(kD1, 4, 0, 1), std::invalid_argument);
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  const MonteCarloEstimate a = monte_carlo_first_return(kD2, 12, 20'000, 1234, 1);
  const MonteCarloEstimate b = monte_carlo_first_return(kD2, 12, 20'000, 1234, 4);
  EXPECT_EQ(a.q_hat, b.q_hat);
  const MonteCarloEstimate c = monte_carlo_first_return(kD2, 12, 20'000, 1235, 1);
  EXPECT_NE(a.q_hat, c.q_hat);
}

// ---------------------------------------------------------------------------
// Properties.

TEST(ClassicalProperties, DpAgreesWithMonteCarlo) {
  constexpr std::int64_t kTrials = 1'000'000;
  for (int d = 1; d <= 3; ++d) {
    const auto q = classical_first_return_series({d}, 20);
    const MonteCarloEstimate mc = monte_carlo_first_return({d}, 20, kTrials, 2026 + d);
    for (int t = 1; t <= 20; ++t) {
      const double sigma = std::sqrt(q[t] * (1 - q[t]) / kTrials);
      EXPECT_LE(std::abs(mc.q_hat[t] - q[t]), 4 * sigma) << "d=" << d << " t=" << t;
    }
  }
}

TEST(ClassicalProperties, RenewalIdentity) {
  for (int d = 1; d <= 3; ++d) {
    const auto p = classical_origin_series({d}, 50);
    const auto q = classical_first_return_series({d}, 50);
    for (int t = 1; t <= 50; ++t) {
      double sum = 0.0;
      for (int k = 1; k <= t; ++k) sum += q[k] * p[t - k];
      EXPECT_NEAR(p[t], sum, kTol) << "d=" << d << " t=" << t;
    }
  }
}

TEST(ClassicalProperties, ScalingExponent) {
  for (int d = 1; d <= 3; ++d) {
    EXPECT_NEAR(fitted_exponent({d}), -d / 2.0, 0.05) << "d=" << d;
  }
}

TEST(ClassicalProperties, FirstReturnBelowOrigin) {
  for (int d = 1; d <= 3; ++d) {
    const auto p = classical_origin_series({d}, 60);
    const auto q = classical_first_return_series({d}, 60);
    for (int t = 0; t <= 60; ++t) {
      EXPECT_GE(q[t], 0.0);
      EXPECT_LE(q[t], p[t] + kTol);
      EXPECT_LE(p[t], 1.0);
    }
  }
}

TEST(ClassicalProperties, SchemeConsistencyInOneDimension) {
  EXPECT_GT(polya_number_from_q(kD1, 10000), 0.97);
  EXPECT_GT(polya_number_from_p(kD1, 10000).value, 0.97);
  EXPECT_GT(classical_reset_recurrence(kD1, 10000), 0.97);
}
