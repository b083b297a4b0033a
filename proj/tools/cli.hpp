// SPDX-License-Identifier: Apache-2.0
//
// hybridbf - hybrid RF beamforming with phase shifter and switch networks
// Copyright (C) 2026 The hybridbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HBF_TOOLS_CLI_HPP
#define HBF_TOOLS_CLI_HPP

#include "hbf/experiments.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace hbf::cli {

// Process exit codes.
enum ExitCode : int
{
    kOk = 0,
    kValidationFailed = 1,
    kUsageError = 2,
    kNumericalError = 3,
};

// Entry point shared by the executable and the tests.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

struct ValidateOptions
{
    int trials = 1000;
    std::uint64_t seed = 1;
    int threads = 0;
    std::function<double(double)> erf = [](double x) { return hbf::erf(x); };
};

struct CheckResult
{
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckResult> run_validation(const ValidateOptions &opts);

// Writes content to a sibling temporary file and renames it over `path`.
void write_atomically(const std::filesystem::path &path, const std::string &content);

// Static SVG of rate vs. the sweep's grid variable; Monte-Carlo curves solid,
// closed forms dashed.
std::string render_svg_plot(const SweepResult &result);

// Parses `key = value` lines ('#' comments, lists as "a, b" or "[a, b]") into
// "--key value" argument pairs.
std::vector<std::string> config_file_args(const std::filesystem::path &path);

} // namespace hbf::cli

#endif
