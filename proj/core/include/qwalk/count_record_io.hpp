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

#ifndef QWALK_COUNT_RECORD_IO_HPP
#define QWALK_COUNT_RECORD_IO_HPP

#include <iosfwd>
#include <string>

#include "qwalk/experiment.hpp"

namespace qwalk {

/// Columnar text form of a CountRecord:
///
///   # scheme=continual
///   # seed=none
///   # provenance=...            (optional)
///   # params=horizon=36;hwp_angle=0.39269908169872414;...
///   t,x,coin,expected,counts
///   0,0,R,400,400
///   ...
///
/// Reals are written in shortest round-trip form, so write -> read is
/// bit-exact.
void write_count_record(std::ostream& out, const CountRecord& record);

/// Throws std::runtime_error with the offending line number on malformed
/// input.
CountRecord read_count_record(std::istream& in);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_real(double v);

/// Strict parse of a whole string; throws std::invalid_argument.
double parse_real(const std::string& text);

}  // namespace qwalk

#endif  // QWALK_COUNT_RECORD_IO_HPP
