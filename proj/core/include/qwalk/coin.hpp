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

#ifndef QWALK_COIN_HPP
#define QWALK_COIN_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

namespace qwalk {

using Amplitude = std::complex<double>;

/// Internal coin state. R moves right under the shift (horizontal
/// polarization), L moves left (vertical polarization).
enum class CoinLabel : std::uint8_t { kR = 0, kL = 1 };

inline constexpr std::array<CoinLabel, 2> kCoinLabels = {CoinLabel::kR, CoinLabel::kL};

constexpr std::size_t index_of(CoinLabel c) { return static_cast<std::size_t>(c); }
std::string_view to_string(CoinLabel c);

/// Amplitudes of one site, ordered (R, L).
using CoinVector = std::array<Amplitude, 2>;

/// Single-site 2x2 unitary coin operator, applied identically at every site.
class CoinSpec {
 public:
  using Matrix = std::array<std::array<Amplitude, 2>, 2>;

  static constexpr double kUnitarityTolerance = 1e-12;

  /// Throws std::invalid_argument unless max|C^dagger C - I| < 1e-12.
  static CoinSpec from_matrix(const Matrix& m);

  const Matrix& matrix() const { return m_; }
  Amplitude operator()(std::size_t row, std::size_t col) const { return m_[row][col]; }

  CoinVector apply(const CoinVector& v) const {
    return {m_[0][0] * v[0] + m_[0][1] * v[1], m_[1][0] * v[0] + m_[1][1] * v[1]};
  }

  /// max entrywise |C^dagger C - I|.
  double unitarity_defect() const;

  /// max entrywise |this - other|.
  double max_deviation(const CoinSpec& other) const;

 private:
  explicit CoinSpec(const Matrix& m) : m_(m) {}
  Matrix m_;
};

/// (1/sqrt 2) [[1, 1], [1, -1]].
CoinSpec hadamard_coin();

CoinSpec identity_coin();

/// Half-wave plate at angle theta (radians):
/// [[cos 2θ, sin 2θ], [sin 2θ, -cos 2θ]]. theta = π/8 is the Hadamard coin.
CoinSpec hwp_coin(double theta);

/// HWP angle that realizes the Hadamard coin.
inline constexpr double kHadamardHwpAngle = 0.39269908169872414;  // π/8

/// Normalized coin state of the walker at the origin at t = 0.
struct InitialSpec {
  Amplitude r{1.0, 0.0};
  Amplitude l{0.0, 0.0};

  static InitialSpec horizontal() { return {{1.0, 0.0}, {0.0, 0.0}}; }
  static InitialSpec vertical() { return {{0.0, 0.0}, {1.0, 0.0}}; }
  /// (|R> + i|L>) / sqrt 2.
  static InitialSpec symmetric();

  double norm_squared() const { return std::norm(r) + std::norm(l); }
};

}  // namespace qwalk

#endif  // QWALK_COIN_HPP
