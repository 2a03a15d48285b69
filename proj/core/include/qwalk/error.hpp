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

#ifndef QWALK_ERROR_HPP
#define QWALK_ERROR_HPP

#include <stdexcept>

namespace qwalk {

/// A computation that cannot produce a meaningful value: a vanished state,
/// full absorption by sinks, or a count record with no signal.
///
/// Violated preconditions (bad arguments) throw std::invalid_argument instead.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qwalk

#endif  // QWALK_ERROR_HPP
