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

#ifndef HBF_EXPERIMENTS_HPP
#define HBF_EXPERIMENTS_HPP

#include "hbf/beamform.hpp"
#include "hbf/channel.hpp"
#include "hbf/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hbf {

enum class Scenario
{
    PhaseShifters, // rate vs. number of phase shifters, fixed N
    Antennas,      // rate vs. N at ML/N = 0.5
    Snr,           // rate vs. P/sigma^2
    Channels,      // phase shifter sweep over the three channel models
};

std::string scenario_name(Scenario s);
Scenario parse_scenario(const std::string &name);

struct SweepConfig
{
    Scenario scenario = Scenario::PhaseShifters;
    std::vector<int> antennas{512}; // one entry except for Antennas
    int chains = 4;                 // M
    int users = 4;                  // K
    std::vector<double> snr_db{10.0};
    std::vector<int> shifters; // L grid for FullSwitch rows
    std::vector<int> groups;   // S grid for SubSwitch rows
    ChannelModel channel = IidRayleigh{}; // single-model sweeps
    double rho = 0.7;                     // correlated model of the channel comparison
    int paths = 2;                        // sparse model of the channel comparison
    double spacing_ratio = 0.5;
    int trials = 1000;
    std::uint64_t seed = 1;
    int threads = 0; // 0: hardware concurrency
};

// Default grids for each scenario.
SweepConfig default_config(Scenario s);

// Throws DimensionError for any grid point the beamformers cannot realize.
void validate(const SweepConfig &cfg);

struct SweepRow
{
    std::string scenario;
    std::string channel;
    int antennas = 0;
    int chains = 0;
    int users = 0;
    std::optional<int> shifters; // L
    std::optional<int> group;    // S
    double snr_db = 0.0;
    std::string architecture;
    double mc_rate = 0.0;
    double mc_stderr = 0.0;
    std::optional<double> analytic_rate;
    std::size_t trials = 0;
    std::uint64_t seed = 0;

    // |mc - analytic| / analytic, when an analytic value exists.
    std::optional<double> relative_error() const;
};

struct SweepResult
{
    std::vector<SweepRow> rows;

    // First row matching the architecture and, when given, L / S / N / SNR.
    const SweepRow *find(const std::string &architecture, std::optional<int> shifters = std::nullopt,
                         std::optional<int> group = std::nullopt, std::optional<int> antennas = std::nullopt,
                         std::optional<double> snr_db = std::nullopt) const;
};

SweepResult run_phase_shifter_sweep(const SweepConfig &cfg);
SweepResult run_antenna_sweep(const SweepConfig &cfg);
SweepResult run_snr_sweep(const SweepConfig &cfg);
SweepResult run_channel_compare(const SweepConfig &cfg);
SweepResult run_sweep(const SweepConfig &cfg);

inline constexpr const char *kCsvHeader =
    "scenario,channel,N,M,K,L,S,snr_db,architecture,mc_rate,mc_stderr,analytic_rate,trials,seed";

// %.9g formatting used for every floating field of the CSV.
std::string format_sig9(double value);

void write_csv(std::ostream &os, const SweepResult &result);

struct McStats
{
    double mean = 0.0;
    double stderr_ = 0.0;
};

// Compensated mean and sample-stddev / sqrt(n), reduced in index order.
McStats mc_stats(std::span<const double> samples);

// Runs body(trial) for trial in [0, trials) on `threads` workers (0: hardware
// concurrency). Each trial owns its output slot, so results do not depend on
// scheduling. The lowest-index failure is rethrown as NumericalError carrying
// the trial index.
void parallel_trials(std::size_t trials, int threads, const std::function<void(std::size_t)> &body);

} // namespace hbf

#endif
