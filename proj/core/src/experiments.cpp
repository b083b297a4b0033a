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

#include "hbf/experiments.hpp"
#include "hbf/rates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace hbf {

namespace {

struct Column
{
    BeamformerSpec spec;
    bool digital = false;
};

// gammas[column][trial] over common channel realizations: trial t always
// draws from stream t of the master seed.
std::vector<std::vector<double>> simulate_gammas(const ChannelSampler &sampler, int chains,
                                                 const std::vector<Column> &columns, const SweepConfig &cfg)
{
    const auto trials = static_cast<std::size_t>(cfg.trials);
    std::vector<std::vector<double>> gammas(columns.size(), std::vector<double>(trials));
    parallel_trials(trials, cfg.threads, [&](std::size_t t) {
        SeededRng rng(cfg.seed, t);
        const ChannelMatrix ch = sampler.draw(rng);
        const CMatrix v = svd(ch.h).v.leftCols(chains);
        for (std::size_t c = 0; c < columns.size(); ++c)
        {
            if (columns[c].digital)
                gammas[c][t] = zf_digital_rate(ch.h, LinkBudget(1.0, 1.0)).gamma;
            else
                gammas[c][t] = hybrid_zf_gamma(ch.h, build_beamformer(v, chains, columns[c].spec));
        }
    });
    return gammas;
}

McStats rate_stats(const std::vector<double> &gammas, int streams, const LinkBudget &lb)
{
    std::vector<double> rates(gammas.size());
    for (std::size_t t = 0; t < gammas.size(); ++t)
        rates[t] = rate_from_gamma(streams, gammas[t], lb);
    return mc_stats(rates);
}

SweepRow base_row(const SweepConfig &cfg, const ChannelModel &model, int antennas, double snr_db)
{
    SweepRow row;
    row.scenario = scenario_name(cfg.scenario);
    row.channel = channel_name(model);
    row.antennas = antennas;
    row.chains = cfg.chains;
    row.users = cfg.users;
    row.snr_db = snr_db;
    row.trials = static_cast<std::size_t>(cfg.trials);
    row.seed = cfg.seed;
    return row;
}

// Evaluates every column at every SNR on one channel model and size.
void emit_rows(SweepResult &out, const SweepConfig &cfg, const ChannelModel &model, int antennas,
               const std::vector<Column> &columns, const std::vector<double> &snrs)
{
    const ChannelSampler sampler(model, cfg.users, antennas);
    const auto gammas = simulate_gammas(sampler, cfg.chains, columns, cfg);
    const bool analytic = std::holds_alternative<IidRayleigh>(model);
    const int m = cfg.chains;

    for (double snr : snrs)
    {
        const LinkBudget lb = LinkBudget::from_snr_db(snr);
        for (std::size_t c = 0; c < columns.size(); ++c)
        {
            SweepRow row = base_row(cfg, model, antennas, snr);
            const McStats stats = rate_stats(gammas[c], columns[c].digital ? cfg.users : m, lb);
            row.mc_rate = stats.mean;
            row.mc_stderr = stats.stderr_;

            if (columns[c].digital)
            {
                row.architecture = "digital-zf";
                if (analytic)
                    row.analytic_rate = zf_rate_analytic(antennas, cfg.users, lb);
            }
            else
            {
                const BeamformerSpec &spec = columns[c].spec;
                row.architecture = architecture_name(spec.architecture);
                switch (spec.architecture)
                {
                case Architecture::SubPs:
                    row.shifters = antennas / m;
                    row.group = 1;
                    if (analytic)
                        row.analytic_rate = subps_rate_analytic(m, antennas, lb);
                    break;
                case Architecture::FullSwitch:
                    row.shifters = spec.shifters;
                    if (analytic)
                        row.analytic_rate = full_switch_rate_analytic(m, antennas, spec.shifters, lb);
                    break;
                case Architecture::SubSwitch:
                    row.shifters = spec.shifters;
                    row.group = spec.group;
                    if (analytic)
                        row.analytic_rate = sub_switch_rate_analytic(m, spec.group, antennas, lb);
                    break;
                }
            }
            out.rows.push_back(std::move(row));
        }
    }
}

std::vector<Column> shifter_grid(const SweepConfig &cfg, int antennas)
{
    std::vector<Column> cols{{BeamformerSpec{Architecture::SubPs, antennas / cfg.chains, 1}}};
    for (int l : cfg.shifters)
        cols.push_back({BeamformerSpec{Architecture::FullSwitch, l, 1}});
    for (int s : cfg.groups)
        cols.push_back({BeamformerSpec{Architecture::SubSwitch, antennas / (cfg.chains * s), s}});
    return cols;
}

} // namespace

std::string scenario_name(Scenario s)
{
    switch (s)
    {
    case Scenario::PhaseShifters:
        return "phase-shifters";
    case Scenario::Antennas:
        return "antennas";
    case Scenario::Snr:
        return "snr";
    case Scenario::Channels:
        return "channels";
    }
    return "unknown";
}

Scenario parse_scenario(const std::string &name)
{
    for (Scenario s : {Scenario::PhaseShifters, Scenario::Antennas, Scenario::Snr, Scenario::Channels})
        if (scenario_name(s) == name)
            return s;
    throw DimensionError("unknown sweep '" + name + "' (phase-shifters, antennas, snr, channels)");
}

SweepConfig default_config(Scenario s)
{
    SweepConfig cfg;
    cfg.scenario = s;
    switch (s)
    {
    case Scenario::PhaseShifters:
        cfg.antennas = {512};
        cfg.snr_db = {10.0};
        cfg.shifters = {16, 32, 64, 96, 128};
        cfg.groups = {1, 2, 4, 8};
        break;
    case Scenario::Antennas:
        cfg.antennas = {32, 64, 128, 256, 512};
        cfg.snr_db = {10.0};
        cfg.groups = {2};
        break;
    case Scenario::Snr:
        cfg.antennas = {128};
        cfg.snr_db = {-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
        cfg.groups = {2};
        break;
    case Scenario::Channels:
        cfg.antennas = {512};
        cfg.snr_db = {0.0, 10.0, 20.0};
        cfg.shifters = {16, 32, 64, 96, 128};
        cfg.groups = {1, 2, 4, 8};
        break;
    }
    return cfg;
}

void validate(const SweepConfig &cfg)
{
    auto fail = [](const std::string &msg) { throw DimensionError("sweep config: " + msg); };
    if (cfg.trials < 1)
        fail("trials must be >= 1");
    if (cfg.threads < 0)
        fail("threads must be >= 0");
    if (cfg.chains < 1)
        fail("M must be >= 1");
    if (cfg.users != cfg.chains)
        fail("rate evaluation requires M = K");
    if (cfg.antennas.empty())
        fail("no antenna count given");
    if (cfg.snr_db.empty())
        fail("no SNR given");
    if (cfg.scenario == Scenario::Channels && cfg.snr_db.size() != 3)
        fail("channel comparison takes three SNRs (iid, correlated, sparse)");
    if (cfg.scenario != Scenario::Antennas && cfg.antennas.size() != 1)
        fail("this sweep takes a single N");
    if (cfg.rho < 0.0 || cfg.rho >= 1.0)
        fail("rho must lie in [0, 1)");
    if (cfg.paths < 1)
        fail("multipath count must be >= 1");
    if (!(cfg.spacing_ratio > 0.0))
        fail("antenna spacing ratio must be positive");
    hbf::validate(cfg.channel);

    for (int n : cfg.antennas)
    {
        const std::string at = " at N = " + std::to_string(n);
        if (n <= cfg.users)
            fail("N must exceed K" + at);
        if (n % cfg.chains != 0)
            fail("N must be divisible by M" + at);
        const int block = n / cfg.chains;
        for (int l : cfg.shifters)
            if (l < 1 || l > block)
                fail("L = " + std::to_string(l) + " outside [1, N/M]" + at);
        for (int s : cfg.groups)
            if (s < 1 || block % s != 0 || s > 64)
                fail("S = " + std::to_string(s) + " does not divide N/M (or exceeds 64)" + at);
    }
}

std::optional<double> SweepRow::relative_error() const
{
    if (!analytic_rate || *analytic_rate == 0.0)
        return std::nullopt;
    return std::abs(mc_rate - *analytic_rate) / *analytic_rate;
}

const SweepRow *SweepResult::find(const std::string &architecture, std::optional<int> shifters,
                                  std::optional<int> group, std::optional<int> antennas,
                                  std::optional<double> snr_db) const
{
    for (const SweepRow &row : rows)
    {
        if (row.architecture != architecture)
            continue;
        if (shifters && row.shifters != shifters)
            continue;
        if (group && row.group != group)
            continue;
        if (antennas && row.antennas != *antennas)
            continue;
        if (snr_db && std::abs(row.snr_db - *snr_db) > 1e-12)
            continue;
        return &row;
    }
    return nullptr;
}

SweepResult run_phase_shifter_sweep(const SweepConfig &cfg)
{
    validate(cfg);
    SweepResult out;
    const int n = cfg.antennas.front();
    emit_rows(out, cfg, cfg.channel, n, shifter_grid(cfg, n), cfg.snr_db);
    return out;
}

SweepResult run_antenna_sweep(const SweepConfig &cfg)
{
    validate(cfg);
    SweepResult out;
    for (int n : cfg.antennas)
    {
        std::vector<Column> cols{{BeamformerSpec{Architecture::SubPs, n / cfg.chains, 1}}};
        for (int s : cfg.groups)
        {
            const int l = n / (cfg.chains * s);
            cols.push_back({BeamformerSpec{Architecture::FullSwitch, l, 1}});
            cols.push_back({BeamformerSpec{Architecture::SubSwitch, l, s}});
        }
        emit_rows(out, cfg, cfg.channel, n, cols, cfg.snr_db);
    }
    return out;
}

SweepResult run_snr_sweep(const SweepConfig &cfg)
{
    validate(cfg);
    SweepResult out;
    const int n = cfg.antennas.front();
    std::vector<Column> cols{{BeamformerSpec{}, true}, {BeamformerSpec{Architecture::SubPs, n / cfg.chains, 1}}};
    for (int s : cfg.groups)
        cols.push_back({BeamformerSpec{Architecture::SubSwitch, n / (cfg.chains * s), s}});
    emit_rows(out, cfg, cfg.channel, n, cols, cfg.snr_db);
    return out;
}

SweepResult run_channel_compare(const SweepConfig &cfg)
{
    validate(cfg);
    SweepResult out;
    const int n = cfg.antennas.front();
    const std::vector<ChannelModel> models{IidRayleigh{}, CorrelatedRayleigh{cfg.rho},
                                           SparseGeometric{cfg.paths, cfg.spacing_ratio}};
    for (std::size_t i = 0; i < models.size(); ++i)
        emit_rows(out, cfg, models[i], n, shifter_grid(cfg, n), {cfg.snr_db[i]});
    return out;
}

SweepResult run_sweep(const SweepConfig &cfg)
{
    switch (cfg.scenario)
    {
    case Scenario::PhaseShifters:
        return run_phase_shifter_sweep(cfg);
    case Scenario::Antennas:
        return run_antenna_sweep(cfg);
    case Scenario::Snr:
        return run_snr_sweep(cfg);
    case Scenario::Channels:
        return run_channel_compare(cfg);
    }
    throw DimensionError("run_sweep: unknown scenario");
}

std::string format_sig9(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

void write_csv(std::ostream &os, const SweepResult &result)
{
    os << kCsvHeader << '\n';
    for (const SweepRow &r : result.rows)
    {
        os << r.scenario << ',' << r.channel << ',' << r.antennas << ',' << r.chains << ',' << r.users << ',';
        if (r.shifters)
            os << *r.shifters;
        os << ',';
        if (r.group)
            os << *r.group;
        os << ',' << format_sig9(r.snr_db) << ',' << r.architecture << ',' << format_sig9(r.mc_rate) << ','
           << format_sig9(r.mc_stderr) << ',';
        if (r.analytic_rate)
            os << format_sig9(*r.analytic_rate);
        os << ',' << r.trials << ',' << r.seed << '\n';
    }
}

McStats mc_stats(std::span<const double> samples)
{
    McStats out;
    if (samples.empty())
        return out;
    const double n = static_cast<double>(samples.size());
    out.mean = compensated_sum(samples) / n;
    if (samples.size() > 1)
    {
        std::vector<double> dev2(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            dev2[i] = (samples[i] - out.mean) * (samples[i] - out.mean);
        out.stderr_ = std::sqrt(compensated_sum(dev2) / (n - 1.0) / n);
    }
    return out;
}

void parallel_trials(std::size_t trials, int threads, const std::function<void(std::size_t)> &body)
{
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(trials, 1));

    std::vector<std::exception_ptr> errors(trials);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
        {
            try
            {
                body(t);
            }
            catch (...)
            {
                errors[t] = std::current_exception();
            }
        }
    };

    if (workers <= 1)
        work();
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }

    for (std::size_t t = 0; t < trials; ++t)
    {
        if (!errors[t])
            continue;
        try
        {
            std::rethrow_exception(errors[t]);
        }
        catch (const NumericalError &e)
        {
            throw NumericalError(std::string(e.what()) + " (trial " + std::to_string(t) + ")", t);
        }
    }
}

} // namespace hbf
