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

#ifndef QWALK_APP_RUNNER_HPP
#define QWALK_APP_RUNNER_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qwalk/app/config.hpp"
#include "qwalk/app/results.hpp"

namespace qwalk::app {

/// Computes the results for `config`, writes the requested files into
/// config.out_dir and, when table output is on, prints a summary to `table`.
ResultBundle run(const RunConfig& config, std::ostream& table);

/// Writes `contents` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Full command-line entry point: returns 0, 2 (config error) or 3
/// (computation error).
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string tool_version();

}  // namespace qwalk::app

#endif  // QWALK_APP_RUNNER_HPP
