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

#include "qwalk/classical.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "qwalk/coin.hpp"
#include "qwalk/error.hpp"
#include "qwalk/monitoring.hpp"

namespace qwalk {
namespace {

void require_horizon(int T, const char* what) {
  if (T < 0) throw std::invalid_argument(std::string(what) + ": horizon must be >= 0");
}

// r(k) = C(k, k/2) / 2^k for the simple walk on Z.
std::vector<double> line_origin_series(int T) {
  std::vector<double> r(T + 1, 0.0);
  r[0] = 1.0;
  for (int k = 2; k <= T; k += 2) {
    r[k] = r[k - 2] * static_cast<double>(k - 1) / static_cast<double>(k);
  }
  return r;
}

}  // namespace

void LatticeWalkSpec::validate() const {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw std::invalid_argument("lattice dimension must be in [1, 3]");
  }
}

int max_first_return_horizon(int dimension) {
  switch (dimension) {
    case 1:
      return 100000;
    case 2:
      return 2000;
    case 3:
      return 200;
    default:
      throw std::invalid_argument("lattice dimension must be in [1, 3]");
  }
}

std::vector<double> classical_origin_series(const LatticeWalkSpec& spec, int T) {
  spec.validate();
  require_horizon(T, "classical_origin_series");
  const std::vector<double> line = line_origin_series(T);
  std::vector<double> lower = line;  // origin series of the (d-1)-dimensional walk

  std::vector<double> log_factorial(T + 1, 0.0);
  for (int n = 1; n <= T; ++n) log_factorial[n] = std::lgamma(static_cast<double>(n) + 1.0);

  // A step of the d-dimensional walk moves along the first axis with
  // probability 1/d; otherwise it is a step of the (d-1)-dimensional walk.
  for (int d = 2; d <= spec.dimension; ++d) {
    const double log_axis = std::log(1.0 / d);
    const double log_rest = std::log(static_cast<double>(d - 1) / d);
    std::vector<double> next(T + 1, 0.0);
    for (int t = 0; t <= T; t += 2) {
      double sum = 0.0;
      for (int k = 0; k <= t; k += 2) {
        const double log_binom =
            log_factorial[t] - log_factorial[k] - log_factorial[t - k] + k * log_axis +
            (t - k) * log_rest;
        sum += std::exp(log_binom) * line[k] * lower[t - k];
      }
      next[t] = sum;
    }
    lower = std::move(next);
  }
  return lower;
}

double classical_origin_probability(const LatticeWalkSpec& spec, int t) {
  require_horizon(t, "classical_origin_probability");
  return classical_origin_series(spec, t)[t];
}

std::vector<double> classical_first_return_series(const LatticeWalkSpec& spec, int T) {
  spec.validate();
  require_horizon(T, "classical_first_return_series");
  const int d = spec.dimension;
  if (T > max_first_return_horizon(d)) {
    throw std::invalid_argument("first-return DP horizon " + std::to_string(T) +
                                " exceeds the cap " + std::to_string(max_first_return_horizon(d)) +
                                " for d = " + std::to_string(d));
  }

  // Mass farther than T/2 from the origin cannot come back by step T, so a
  // box of radius R = T/2 plus a zero pad of one cell is exact.
  const int R = T / 2;
  const int side = 2 * R + 3;
  std::array<std::size_t, 3> stride{1, 1, 1};
  std::size_t cells = 1;
  for (int k = 0; k < d; ++k) {
    stride[k] = cells;
    cells *= static_cast<std::size_t>(side);
  }
  const int centre = R + 1;
  std::size_t origin = 0;
  for (int k = 0; k < d; ++k) origin += static_cast<std::size_t>(centre) * stride[k];

  std::vector<double> cur(cells, 0.0);
  std::vector<double> next(cells, 0.0);
  cur[origin] = 1.0;
  const double w = 1.0 / (2.0 * d);

  std::vector<double> q(T + 1, 0.0);
  for (int s = 1; s <= T; ++s) {
    const int r = std::min(s, R);
    const int lo = centre - r;
    const int hi = centre + r;
    const int ylo = d >= 2 ? lo : 0, yhi = d >= 2 ? hi : 0;
    const int zlo = d >= 3 ? lo : 0, zhi = d >= 3 ? hi : 0;
    for (int z = zlo; z <= zhi; ++z) {
      for (int y = ylo; y <= yhi; ++y) {
        const std::size_t row = static_cast<std::size_t>(y) * stride[1] * (d >= 2) +
                                static_cast<std::size_t>(z) * stride[2] * (d >= 3);
        for (int x = lo; x <= hi; ++x) {
          const std::size_t i = row + static_cast<std::size_t>(x);
          double sum = 0.0;
          for (int k = 0; k < d; ++k) sum += cur[i - stride[k]] + cur[i + stride[k]];
          next[i] = sum * w;
        }
      }
    }
    q[s] = next[origin];
    next[origin] = 0.0;
    std::swap(cur, next);
  }
  return q;
}

double classical_first_return(const LatticeWalkSpec& spec, int t) {
  if (t < 1) throw std::invalid_argument("classical_first_return: t must be >= 1");
  return classical_first_return_series(spec, t)[t];
}

double polya_number_from_q(const LatticeWalkSpec& spec, int T) {
  const std::vector<double> q = classical_first_return_series(spec, T);
  double sum = 0.0;
  for (int t = 1; t <= T; ++t) sum += q[t];
  return sum;
}

std::string to_string(TruncationQuality q) {
  switch (q) {
    case TruncationQuality::kConverging:
      return "converging";
    case TruncationQuality::kDivergentSeries:
      return "divergent-series";
    case TruncationQuality::kArtifact:
      return "truncation-artifact";
  }
  return "unknown";
}

namespace {

TruncatedPolya truncated_polya(const std::vector<double>& p, int dimension) {
  double sum = 0.0;
  for (std::size_t t = 1; t < p.size(); ++t) sum += p[t];
  if (!(sum > 0.0)) throw ComputationError("polya_number_from_p: sum of p(0,t) is zero");
  TruncatedPolya out;
  out.partial_sum = sum;
  out.value = 1.0 - 1.0 / sum;
  out.renewal_value = 1.0 - 1.0 / (1.0 + sum);
  if (out.value < 0.0) {
    out.quality = TruncationQuality::kArtifact;
  } else if (dimension <= 2) {
    out.quality = TruncationQuality::kDivergentSeries;
  } else {
    out.quality = TruncationQuality::kConverging;
  }
  return out;
}

double reset_from_p(const std::vector<double>& p) {
  double miss = 1.0;
  for (std::size_t t = 1; t < p.size(); ++t) miss *= 1.0 - p[t];
  return 1.0 - miss;
}

}  // namespace

TruncatedPolya polya_number_from_p(const LatticeWalkSpec& spec, int T) {
  return truncated_polya(classical_origin_series(spec, T), spec.dimension);
}

double classical_reset_recurrence(const LatticeWalkSpec& spec, int T) {
  return reset_from_p(classical_origin_series(spec, T));
}

ClassicalSeries classical_series(const LatticeWalkSpec& spec, int T) {
  if (T < 1) throw std::invalid_argument("classical_series: horizon must be >= 1");
  ClassicalSeries out;
  out.dimension = spec.dimension;
  out.horizon = T;
  out.p_origin = classical_origin_series(spec, T);
  out.q_first_return = classical_first_return_series(spec, T);
  for (int t = 1; t <= T; ++t) out.polya_from_q += out.q_first_return[t];
  out.polya_from_p = truncated_polya(out.p_origin, spec.dimension);
  out.reset_recurrence = reset_from_p(out.p_origin);
  return out;
}

MonteCarloEstimate monte_carlo_first_return(const LatticeWalkSpec& spec, int T,
                                            std::int64_t trials, std::uint64_t seed,
                                            unsigned threads) {
  spec.validate();
  if (T < 1) throw std::invalid_argument("monte_carlo_first_return: horizon must be >= 1");
  if (trials < 1) throw std::invalid_argument("monte_carlo_first_return: trials must be >= 1");

  constexpr std::int64_t kChunks = 256;
  const std::int64_t chunks = std::min(kChunks, trials);
  const int d = spec.dimension;
  std::vector<std::vector<std::int64_t>> hits(chunks, std::vector<std::int64_t>(T + 1, 0));

  auto run_chunk = [&](std::int64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> move(0, 2 * d - 1);
    const std::int64_t n = trials / chunks + (chunk < trials % chunks ? 1 : 0);
    std::vector<std::int64_t>& h = hits[chunk];
    for (std::int64_t i = 0; i < n; ++i) {
      std::array<int, 3> pos{0, 0, 0};
      int distance = 0;
      for (int s = 1; s <= T; ++s) {
        const int m = move(rng);
        int& coord = pos[m / 2];
        const int before = std::abs(coord);
        coord += (m % 2 == 0) ? 1 : -1;
        distance += std::abs(coord) - before;
        if (distance == 0) {
          ++h[s];
          break;
        }
        if (distance > T - s) break;  // cannot return in time
      }
    }
  };

  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, chunks));
  std::atomic<std::int64_t> next_chunk{0};
  auto worker = [&] {
    for (std::int64_t c = next_chunk++; c < chunks; c = next_chunk++) run_chunk(c);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  MonteCarloEstimate out;
  out.dimension = d;
  out.horizon = T;
  out.trials = trials;
  out.seed = seed;
  out.rng_algorithm = kMonteCarloRng;
  out.q_hat.assign(T + 1, 0.0);
  out.standard_error.assign(T + 1, 0.0);
  const double n = static_cast<double>(trials);
  for (int t = 1; t <= T; ++t) {
    std::int64_t total = 0;
    for (const auto& h : hits) total += h[t];
    const double qh = static_cast<double>(total) / n;
    out.q_hat[t] = qh;
    out.standard_error[t] = std::sqrt(qh * (1.0 - qh) / n);
  }
  return out;
}

EquivalenceReport scheme_equivalence_check(const LatticeWalkSpec& spec, int T, double threshold) {
  const ClassicalSeries classical = classical_series(spec, T);
  const RecurrenceSeries quantum = recurrence(InitialSpec::horizontal(), hadamard_coin(), T);
  EquivalenceReport out;
  out.dimension = spec.dimension;
  out.horizon = T;
  out.threshold = threshold;
  out.classical_polya = classical.polya_from_q;
  out.classical_reset = classical.reset_recurrence;
  out.quantum_polya = quantum.P_continual[T];
  out.quantum_reset = quantum.P_reset[T];
  out.classical_consistent = (out.classical_polya >= threshold) == (out.classical_reset >= threshold);
  out.quantum_separated = out.quantum_reset >= threshold && out.quantum_polya < threshold;
  return out;
}

}  // namespace qwalk
