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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: hbf_acceptance --cli <path to hbf executable>

#include "oracles.hpp"

#include "hbf/beamform.hpp"
#include "hbf/channel.hpp"
#include "hbf/experiments.hpp"
#include "hbf/hardware.hpp"
#include "hbf/rates.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

using namespace hbf;
namespace fs = std::filesystem;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

int failures = 0;

void criterion(int id, const std::string &name, double budget_s, const std::function<Outcome()> &body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
        o = body();
    }
    catch (const std::exception &e)
    {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s)
    {
        o.pass = false;
        o.detail += "; over time budget";
    }
    failures += !o.pass;
    std::printf("%s  %2d  %-34s %s [%.2f s / %.0f s]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.c_str(), secs, budget_s);
    std::fflush(stdout);
}

std::string slurp(const fs::path &p)
{
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

Outcome degeneracy()
{
    double worst = 0.0;
    for (int n : {8, 32, 64, 128, 256, 512, 1024})
        for (double snr : {-10.0, 0.0, 10.0, 20.0, 30.0})
        {
            const LinkBudget lb = LinkBudget::from_snr_db(snr);
            const double sub = subps_rate_analytic(4, n, lb);
            worst = std::max(worst, std::abs(full_switch_rate_analytic(4, n, n / 4, lb) - sub) / sub);
            worst = std::max(worst, std::abs(sub_switch_rate_analytic(4, 1, n, lb) - sub) / sub);
        }
    return {worst <= 1e-12, "max rel diff " + fmt("%.2e", worst) + " (tol 1e-12)"};
}

Outcome wishart()
{
    const int n = 64, k = 4, trials = 2000;
    std::vector<double> tr(trials);
    parallel_trials(trials, 0, [&](std::size_t t) {
        SeededRng rng(1, t);
        const CMatrix h = iid_rayleigh(k, n, rng).h;
        tr[t] = oracle::gauss_inverse(h * h.adjoint()).trace().real() / k;
    });
    const double mean = mc_stats(tr).mean, target = 1.0 / (n - k);
    const double rel = std::abs(mean - target) / target;
    return {rel <= 0.05, "E[tr((HH^H)^-1)]/K = " + fmt("%.6f", mean) + " vs " + fmt("%.6f", target) + ", rel " +
                             fmt("%.4f", rel) + " (tol 0.05)"};
}

Outcome singular_vectors()
{
    const int n = 512, m = 4, channels = 100;
    std::vector<double> means(channels);
    parallel_trials(channels, 0, [&](std::size_t t) {
        SeededRng rng(1, t);
        means[t] = svd(iid_rayleigh(m, n, rng).h).v.leftCols(m).cwiseAbs().mean() * std::sqrt(double(n));
    });
    const double mean = mc_stats(means).mean, target = std::sqrt(std::numbers::pi) / 2.0;
    const double rel = std::abs(mean - target) / target;
    return {rel <= 0.01, "mean " + fmt("%.5f", mean) + " vs " + fmt("%.5f", target) + ", rel " + fmt("%.4f", rel) +
                             " (tol 0.01)"};
}

Outcome phase_shifter_regime()
{
    const SweepResult r = run_sweep(default_config(Scenario::PhaseShifters));
    const SweepRow *sub = r.find("sub-ps");
    const SweepRow *full = r.find("full-switch", 64);
    const SweepRow *s2 = r.find("sub-switch", 64, 2);
    const SweepRow *s4 = r.find("sub-switch", 32, 4);
    const double sub_cf = *sub->analytic_rate;
    const double e_sub = std::abs(sub->mc_rate - sub_cf) / sub_cf;
    const double e_full_cf = std::abs(full->mc_rate - *full->analytic_rate) / *full->analytic_rate;
    const double e_full_mc = std::abs(full->mc_rate - sub->mc_rate) / sub->mc_rate;
    const double gap_s2 = sub->mc_rate - s2->mc_rate;
    const double frac_s4 = s4->mc_rate / sub->mc_rate;

    const bool a = e_sub <= 0.02, b = e_full_cf <= 0.02 && e_full_mc <= 0.02, c = std::abs(gap_s2) <= 1.0,
               d = frac_s4 >= 0.90;
    std::string detail = std::string(a ? "" : "[x]") + "subps vs closed form " + fmt("%.4f", e_sub) + "; " +
                         (b ? "" : "[x]") + "full-switch L=64 vs closed form " + fmt("%.4f", e_full_cf) + ", vs subps " +
                         fmt("%.4f", e_full_mc) + "; " + (c ? "" : "[x]") + "S=2 gap " + fmt("%.3f", gap_s2) +
                         " bits (tol 1, stderr " + fmt("%.3f", s2->mc_stderr) + ", closed-form gap " +
                         fmt("%.3f", sub_cf - *s2->analytic_rate) + "); " + (d ? "" : "[x]") + "S=4 " +
                         fmt("%.3f", frac_s4) + " of subps (min 0.90)";
    return {a && b && c && d, detail};
}

Outcome antenna_regime()
{
    const SweepResult r = run_sweep(default_config(Scenario::Antennas));
    bool ok = true;
    std::string detail;
    for (const char *arch : {"full-switch", "sub-switch"})
    {
        auto err = [&](int n) { return *r.find(arch, std::nullopt, std::nullopt, n)->relative_error(); };
        bool trend = err(32) > err(64) && err(64) > err(256);
        bool bound = true;
        for (const SweepRow &row : r.rows)
            if (row.architecture == arch && *row.shifters >= 16)
                bound = bound && *row.relative_error() <= 0.05;
        ok = ok && trend && bound;
        detail += std::string(arch) + " err N=32/64/128/256/512 " + fmt("%.3f", err(32)) + "/" +
                  fmt("%.3f", err(64)) + "/" + fmt("%.3f", err(128)) + "/" + fmt("%.3f", err(256)) + "/" +
                  fmt("%.3f", err(512)) + (trend ? "" : " [x]trend") + (bound ? "" : " [x]L>=16 bound") + "; ";
    }
    return {ok, detail};
}

Outcome high_snr_gap()
{
    const LinkBudget lb = LinkBudget::from_snr_db(30.0);
    const double gap = zf_rate_analytic(128, 4, lb) - subps_rate_analytic(4, 128, lb);
    const double target = 4.0 * std::log2(16.0 / std::numbers::pi);
    return {std::abs(gap - target) <= 0.2,
            "gap " + fmt("%.4f", gap) + " vs " + fmt("%.4f", target) + " (tol 0.2)"};
}

Outcome gamma_normalization()
{
    const int n = 512, m = 4, trials = 1000;
    std::vector<double> g(trials);
    parallel_trials(trials, 0, [&](std::size_t t) {
        SeededRng rng(1, t);
        const CMatrix h = iid_rayleigh(m, n, rng).h;
        g[t] = hybrid_zf_gamma(h, subconnected_ps(svd(h).v, m));
    });
    const double mean = mc_stats(g).mean, target = 4.0 * m / std::numbers::pi / (n - m);
    const double rel = std::abs(mean - target) / target;
    return {rel <= 0.03, "gamma " + fmt("%.6f", mean) + " vs " + fmt("%.6f", target) + ", rel " +
                             fmt("%.4f", rel) + " (tol 0.03)"};
}

Outcome order_statistics()
{
    double worst = 0.0;
    for (int s = 1; s <= 16; ++s)
        worst = std::max(worst, std::abs(expected_max_rayleigh(s) - oracle::max_rayleigh_mean(s)));
    return {worst <= 1e-9, "max abs diff " + fmt("%.2e", worst) + " (tol 1e-9)"};
}

bool select_ok(const HardwareConfig &hw)
{
    for (const ChainSettings &cs : hw.chain)
    {
        if (hw.topology == SwitchTopology::FullyConnected)
        {
            for (Eigen::Index i = 0; i < cs.select.rows(); ++i)
                if (cs.select.row(i).cast<int>().sum() > 1)
                    return false;
            for (Eigen::Index j = 0; j < cs.select.cols(); ++j)
                if (cs.select.col(j).cast<int>().sum() != 1)
                    return false;
        }
        else
            for (Eigen::Index i = 0; i < cs.select.rows(); ++i)
                if (cs.select.row(i).cast<int>().sum() != 1)
                    return false;
    }
    return true;
}

Outcome hardware_round_trips()
{
    int full_ok = 0, sub_ok = 0;
    for (std::uint64_t t = 0; t < 100; ++t)
    {
        SeededRng pick(9, t);
        const int m = 1 + static_cast<int>(pick.uniform() * 8);
        const int l = 1 + static_cast<int>(pick.uniform() * 16);
        const int s = 1 + static_cast<int>(pick.uniform() * 8);
        const int n = m * l * s;
        const CMatrix v = svd(iid_rayleigh(m, n, pick).h).v;

        const RfBeamformer full = ps_full_switch(v, m, 1 + static_cast<int>(pick.uniform() * (n / m)));
        const HardwareConfig hf = extract_hardware_full(full);
        full_ok += apply_hardware(hf) == full.f_rf && select_ok(hf);

        const RfBeamformer sub = ps_sub_switch(v, m, l, s);
        const HardwareConfig hs = extract_hardware_sub(sub);
        sub_ok += apply_hardware(hs) == sub.f_rf && select_ok(hs);
    }
    return {full_ok == 100 && sub_ok == 100,
            "full " + std::to_string(full_ok) + "/100, sub " + std::to_string(sub_ok) + "/100 bit-exact"};
}

Outcome determinism(const std::string &exe)
{
    if (exe.empty())
        return {false, "no --cli path given"};
    const fs::path dir = fs::temp_directory_path() / ("hbf-accept-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto run = [&](const std::string &name, const std::string &extra) {
        const std::string cmd = "\"" + exe + "\" sweep phase-shifters --trials 100 --seed 1 " + extra + " -o \"" +
                                (dir / name).string() + "\" > /dev/null";
        return std::system(cmd.c_str()) == 0;
    };
    const bool ran = run("a.csv", "") && run("b.csv", "") && run("t1.csv", "--threads 1") &&
                     run("t4.csv", "--threads 4");
    Outcome o;
    if (!ran)
        o = {false, "cli run failed"};
    else
    {
        const std::string a = slurp(dir / "a.csv");
        const bool same = !a.empty() && a == slurp(dir / "b.csv") && a == slurp(dir / "t1.csv") &&
                          a == slurp(dir / "t4.csv");
        o = {same, same ? "4 runs byte-identical (" + std::to_string(a.size()) + " bytes; 1, 4 and default threads)"
                        : "outputs differ"};
    }
    fs::remove_all(dir);
    return o;
}

} // namespace

int main(int argc, char **argv)
{
    std::string exe;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli")
            exe = argv[i + 1];

    criterion(1, "degeneracy equalities", 1, degeneracy);
    criterion(2, "Wishart normalization", 30, wishart);
    criterion(3, "singular-vector statistics", 120, singular_vectors);
    criterion(4, "closed forms, N=512 phase shifters", 600, phase_shifter_regime);
    criterion(5, "finite-N error trend", 600, antenna_regime);
    criterion(6, "high-SNR gap", 1, high_snr_gap);
    criterion(7, "sub-ps power normalization", 300, gamma_normalization);
    criterion(8, "order-statistics oracle", 1, order_statistics);
    criterion(9, "hardware round trips", 5, hardware_round_trips);
    criterion(10, "determinism", 60, [&] { return determinism(exe); });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
