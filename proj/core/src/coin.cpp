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

#include "qwalk/coin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qwalk {

std::string_view to_string(CoinLabel c) { return c == CoinLabel::kR ? "R" : "L"; }

CoinSpec CoinSpec::from_matrix(const Matrix& m) {
  CoinSpec coin(m);
  const double defect = coin.unitarity_defect();
  if (!(defect < kUnitarityTolerance)) {
    throw std::invalid_argument("coin matrix is not unitary (defect " + std::to_string(defect) + ")");
  }
  return coin;
}

double CoinSpec::unitarity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      // (C^dagger C)_{ij} = sum_k conj(C_{ki}) C_{kj}
      Amplitude entry = std::conj(m_[0][i]) * m_[0][j] + std::conj(m_[1][i]) * m_[1][j];
      if (i == j) entry -= 1.0;
      worst = std::max(worst, std::abs(entry));
    }
  }
  return worst;
}

double CoinSpec::max_deviation(const CoinSpec& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      worst = std::max(worst, std::abs(m_[i][j] - other.m_[i][j]));
    }
  }
  return worst;
}

CoinSpec hadamard_coin() {
  const double s = std::numbers::sqrt2 / 2.0;
  return CoinSpec::from_matrix({{{s, s}, {s, -s}}});
}

CoinSpec identity_coin() { return CoinSpec::from_matrix({{{1.0, 0.0}, {0.0, 1.0}}}); }

CoinSpec hwp_coin(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("hwp_coin: angle must be finite");
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  return CoinSpec::from_matrix({{{c, s}, {s, -c}}});
}

InitialSpec InitialSpec::symmetric() {
  const double s = std::numbers::sqrt2 / 2.0;
  return {{s, 0.0}, {0.0, s}};
}

}  // namespace qwalk
