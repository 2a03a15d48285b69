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

#ifndef QWALK_CLASSICAL_HPP
#define QWALK_CLASSICAL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qwalk {

/// Unbiased nearest-neighbour random walk on Z^d (each of the 2d moves has
/// probability 1/(2d)).
struct LatticeWalkSpec {
  int dimension = 1;

  /// Throws std::invalid_argument unless 1 <= d <= kMaxDimension.
  void validate() const;

  static constexpr int kMaxDimension = 3;
};

/// Largest horizon the absorbing-origin DP accepts for each dimension. The DP
/// keeps a dense box of radius T/2, so these bound memory and run time.
int max_first_return_horizon(int dimension);

/// p(0,t): probability of being at the origin after t steps.
double classical_origin_probability(const LatticeWalkSpec& spec, int t);

/// p(0,t) for t = 0..T in one pass.
std::vector<double> classical_origin_series(const LatticeWalkSpec& spec, int T);

/// q(0,t): probability that the first return happens at step t.
double classical_first_return(const LatticeWalkSpec& spec, int t);

/// q(0,t) for t = 0..T (q(0,0) = 0) from one absorbing-origin DP pass.
std::vector<double> classical_first_return_series(const LatticeWalkSpec& spec, int T);

/// sum_{t<=T} q(0,t).
double polya_number_from_q(const LatticeWalkSpec& spec, int T);

enum class TruncationQuality {
  /// The defining series converges; the value approaches the limit from below.
  kConverging,
  /// The defining series diverges (recurrent walk): the limit is 1, and any
  /// truncated value underestimates it.
  kDivergentSeries,
  /// Too few terms: the truncated value is not a probability (< 0).
  kArtifact,
};

std::string to_string(TruncationQuality q);

struct TruncatedPolya {
  double value = 0.0;        // 1 - 1/sum
  double partial_sum = 0.0;  // sum_{t=1..T} p(0,t)
  /// 1 - 1/(1 + sum): the renewal form, which counts p(0,0) = 1. This is the
  /// one that converges to the return probability of a transient walk.
  double renewal_value = 0.0;
  TruncationQuality quality = TruncationQuality::kConverging;
};

/// 1 - 1/(sum_{t=1..T} p(0,t)), flagged with its truncation quality. Throws
/// ComputationError on a zero partial sum.
TruncatedPolya polya_number_from_p(const LatticeWalkSpec& spec, int T);

/// 1 - prod_{t=1..T} (1 - p(0,t)).
double classical_reset_recurrence(const LatticeWalkSpec& spec, int T);

struct ClassicalSeries {
  int dimension = 1;
  int horizon = 0;
  std::vector<double> p_origin;        // t = 0..T
  std::vector<double> q_first_return;  // t = 0..T
  double polya_from_q = 0.0;
  TruncatedPolya polya_from_p;
  double reset_recurrence = 0.0;

  bool operator==(const ClassicalSeries& o) const {
    return dimension == o.dimension && horizon == o.horizon && p_origin == o.p_origin &&
           q_first_return == o.q_first_return && polya_from_q == o.polya_from_q &&
           polya_from_p.value == o.polya_from_p.value &&
           polya_from_p.partial_sum == o.polya_from_p.partial_sum &&
           polya_from_p.renewal_value == o.polya_from_p.renewal_value &&
           polya_from_p.quality == o.polya_from_p.quality && reset_recurrence == o.reset_recurrence;
  }
};

ClassicalSeries classical_series(const LatticeWalkSpec& spec, int T);

/// Monte Carlo estimate of q(0,t).
struct MonteCarloEstimate {
  int dimension = 1;
  int horizon = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  std::vector<double> q_hat;           // t = 0..T
  std::vector<double> standard_error;  // sqrt(q(1-q)/n)

  bool operator==(const MonteCarloEstimate&) const = default;
};

/// Identifier recorded in MonteCarloEstimate::rng_algorithm.
inline constexpr const char* kMonteCarloRng = "mt19937_64;stream=seed_seq(seed_lo,seed_hi,chunk)";

/// Trials are split into fixed chunks, each with its own stream derived from
/// (seed, chunk). Results do not depend on the number of worker threads.
MonteCarloEstimate monte_carlo_first_return(const LatticeWalkSpec& spec, int T,
                                            std::int64_t trials, std::uint64_t seed,
                                            unsigned threads = 0);

struct EquivalenceReport {
  int dimension = 1;
  int horizon = 0;
  double classical_polya = 0.0;  // from the q-sum
  double classical_reset = 0.0;
  double quantum_polya = 0.0;  // Hadamard walk from |0,R>, continual scheme
  double quantum_reset = 0.0;
  double threshold = 0.9;
  /// Both classical values fall on the same side of `threshold`.
  bool classical_consistent = false;
  /// Reset reaches the threshold while the continual value stays below it.
  bool quantum_separated = false;
};

EquivalenceReport scheme_equivalence_check(const LatticeWalkSpec& spec, int T,
                                           double threshold = 0.9);

}  // namespace qwalk

#endif  // QWALK_CLASSICAL_HPP
