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

#include "oracles.hpp"

#include "hbf/beamform.hpp"
#include "hbf/channel.hpp"
#include "hbf/errors.hpp"
#include "hbf/experiments.hpp"
#include "hbf/rates.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <set>

using namespace hbf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CMatrix channel_v(int m, int n, std::uint64_t seed, std::uint64_t stream)
{
    SeededRng rng(seed, stream);
    return svd(iid_rayleigh(m, n, rng).h).v;
}

int nonzeros(const CMatrix &col)
{
    int c = 0;
    for (Eigen::Index i = 0; i < col.size(); ++i)
        c += col(i) != cd(0.0);
    return c;
}

// Ratio (mean max off-diagonal) / (mean min diagonal) of Q over channels, and
// the same ratio for the channel-averaged Q.
struct QStats
{
    double per_channel = 0.0;
    double averaged = 0.0;
};

QStats q_offdiag_ratio(int n, int m, int channels)
{
    CMatrix q_mean = CMatrix::Zero(m, m);
    double off = 0.0, diag = 0.0;
    for (int t = 0; t < channels; ++t)
    {
        const CMatrix v = channel_v(m, n, 1, static_cast<std::uint64_t>(t)).leftCols(m);
        const RfBeamformer bf = subconnected_ps(v, m);
        const CMatrix q = (double(m) / n) * v.adjoint() * bf.f_rf * bf.f_rf.adjoint() * v;
        q_mean += q / double(channels);
        double mo = 0.0, md = 1e300;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                (i == j ? md = std::min(md, std::abs(q(i, j))) : mo = std::max(mo, std::abs(q(i, j))));
        off += mo;
        diag += md;
    }
    double mo = 0.0, md = 1e300;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            (i == j ? md = std::min(md, std::abs(q_mean(i, j))) : mo = std::max(mo, std::abs(q_mean(i, j))));
    return {off / diag, mo / md};
}

} // namespace

TEST_CASE("BlockIndexSets partitions the array")
{
    const BlockIndexSets sets(32, 4, 2);
    CHECK(sets.block_size() == 8);
    CHECK(sets.groups_per_block() == 4);
    std::vector<int> owner(32, -1);
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < sets.block_size(); ++i)
        {
            const int n = sets.block_begin(m) + i;
            CHECK(owner[static_cast<std::size_t>(n)] == -1);
            owner[static_cast<std::size_t>(n)] = m;
            CHECK(sets.chain_of(n) == m);
        }
    CHECK(std::count(owner.begin(), owner.end(), -1) == 0);
    for (int m = 0; m < 4; ++m)
        for (int q = 0; q < sets.groups_per_block(); ++q)
            for (int s = 0; s < 2; ++s)
                CHECK(sets.chain_of(sets.group_begin(m, q) + s) == m);

    CHECK_THROWS_AS(BlockIndexSets(30, 4), DimensionError);
    CHECK_THROWS_AS(BlockIndexSets(32, 4, 3), DimensionError);
    CHECK_THROWS_AS(BlockIndexSets(32, 0), DimensionError);
}

TEST_CASE("subconnected_ps phases")
{
    SECTION("real positive column gives all ones")
    {
        CMatrix v = CMatrix::Zero(8, 2);
        v.col(0) = CMatrix::Constant(8, 1, cd(0.3));
        v.col(1) = CMatrix::Constant(8, 1, cd(0.2));
        const RfBeamformer bf = subconnected_ps(v, 2);
        for (int n = 0; n < 4; ++n)
        {
            CHECK(bf.f_rf(n, 0) == cd(1.0));
            CHECK(bf.f_rf(n, 1) == cd(0.0));
            CHECK(bf.f_rf(n + 4, 1) == cd(1.0));
            CHECK(bf.f_rf(n + 4, 0) == cd(0.0));
        }
        CHECK(bf.gamma() == 4.0);
    }
    SECTION("magnitude does not matter")
    {
        CMatrix v = CMatrix::Ones(4, 1);
        v(2, 0) = std::polar(0.01, 1.2);
        const cd small = subconnected_ps(v, 1).f_rf(2, 0);
        v(2, 0) = std::polar(7.0, 1.2);
        CHECK(subconnected_ps(v, 1).f_rf(2, 0) == small);
        CHECK_THAT(std::arg(small), WithinAbs(1.2, 1e-15));
    }
    SECTION("errors")
    {
        CHECK_THROWS_AS(subconnected_ps(CMatrix::Ones(10, 4), 4), DimensionError);
        CHECK_THROWS_AS(subconnected_ps(CMatrix::Ones(8, 1), 2), DimensionError);
    }
}

TEST_CASE("subconnected_ps array gain at N=512")
{
    const int n = 512, m = 4, channels = 100;
    std::vector<double> gain;
    for (int t = 0; t < channels; ++t)
    {
        const CMatrix v = channel_v(m, n, 4, static_cast<std::uint64_t>(t));
        const RfBeamformer bf = subconnected_ps(v, m);
        for (int c = 0; c < m; ++c)
        {
            const double g = (double(m) / n) * std::abs(v.col(c).dot(bf.f_rf.col(c))) * std::sqrt(double(n)) /
                             std::sqrt(double(m));
            gain.push_back(g);
        }
    }
    CHECK_THAT(mc_stats(gain).mean, WithinRel(std::sqrt(std::numbers::pi) / (2.0 * std::sqrt(double(m))), 0.02));
}

TEST_CASE("threshold_for_ratio")
{
    CHECK(threshold_for_ratio(1.0) == 0.0);
    CHECK_THAT(threshold_for_ratio(0.5), WithinAbs(std::sqrt(std::log(2.0)), 1e-15));
    CHECK_THAT(threshold_for_ratio(std::exp(-1.0)), WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(threshold_for_ratio(0.0), DimensionError);
    CHECK_THROWS_AS(threshold_for_ratio(1.5), DimensionError);
}

TEST_CASE("ps_full_switch selection")
{
    const CMatrix v = channel_v(4, 64, 2, 0);
    SECTION("L = N/M equals sub-ps")
    {
        CHECK(ps_full_switch(v, 4, 16).f_rf == subconnected_ps(v, 4).f_rf);
        CHECK(ps_full_switch(v, 4, 16).alpha == 0.0);
    }
    SECTION("L = 1 keeps the block argmax")
    {
        const RfBeamformer bf = ps_full_switch(v, 4, 1);
        for (int m = 0; m < 4; ++m)
        {
            Eigen::Index best;
            v.col(m).segment(16 * m, 16).cwiseAbs().maxCoeff(&best);
            CHECK(bf.selected[static_cast<std::size_t>(m)] == std::vector<int>{16 * m + static_cast<int>(best)});
            CHECK(nonzeros(bf.f_rf.col(m)) == 1);
        }
    }
    SECTION("keeps the L largest magnitudes")
    {
        const int l = GENERATE(2, 5, 8, 13);
        const RfBeamformer bf = ps_full_switch(v, 4, l);
        CHECK(bf.gamma() == l);
        CHECK_THAT(bf.alpha, WithinAbs(threshold_for_ratio(4.0 * l / 64.0), 1e-15));
        for (int m = 0; m < 4; ++m)
        {
            double kept_min = 1e300, dropped_max = 0.0;
            for (int i = 16 * m; i < 16 * (m + 1); ++i)
            {
                const double a = std::abs(v(i, m));
                if (bf.f_rf(i, m) != cd(0.0))
                    kept_min = std::min(kept_min, a);
                else
                    dropped_max = std::max(dropped_max, a);
            }
            CHECK(kept_min >= dropped_max);
        }
    }
    SECTION("ties go to the lowest index")
    {
        CMatrix flat = CMatrix::Ones(8, 2);
        const RfBeamformer bf = ps_full_switch(flat, 2, 2);
        CHECK(bf.selected[0] == std::vector<int>{0, 1});
        CHECK(bf.selected[1] == std::vector<int>{4, 5});
    }
    SECTION("errors")
    {
        CHECK_THROWS_AS(ps_full_switch(v, 4, 0), DimensionError);
        CHECK_THROWS_AS(ps_full_switch(v, 4, 17), DimensionError);
    }
}

TEST_CASE("ps_sub_switch selection")
{
    SECTION("S = 1 equals sub-ps")
    {
        const CMatrix v = channel_v(4, 64, 3, 0);
        CHECK(ps_sub_switch(v, 4, 16, 1).f_rf == subconnected_ps(v, 4).f_rf);
    }
    SECTION("argmax inside a pair")
    {
        CMatrix v(2, 1);
        v << cd(0.3, 0.0), std::polar(0.9, -0.4);
        const RfBeamformer bf = ps_sub_switch(v, 1, 1, 2);
        CHECK(bf.f_rf(0, 0) == cd(0.0));
        CHECK_THAT(std::arg(bf.f_rf(1, 0)), WithinAbs(-0.4, 1e-15));
        CHECK(bf.selected[0] == std::vector<int>{1});
    }
    SECTION("ties go to the lowest index")
    {
        const RfBeamformer bf = ps_sub_switch(CMatrix::Ones(8, 2), 2, 2, 2);
        CHECK(bf.selected[0] == std::vector<int>{0, 2});
        CHECK(bf.selected[1] == std::vector<int>{4, 6});
    }
    SECTION("factorization errors")
    {
        const CMatrix v = channel_v(4, 64, 3, 0);
        CHECK_THROWS_AS(ps_sub_switch(v, 4, 8, 3), DimensionError);
        CHECK_THROWS_AS(ps_sub_switch(v, 4, 4, 2), DimensionError);
        CHECK_THROWS_AS(ps_sub_switch(v, 4, 0, 2), DimensionError);
    }
}

TEST_CASE("column nonzero counts over random inputs")
{
    for (std::uint64_t t = 0; t < 40; ++t)
    {
        SeededRng pick(77, t);
        const int m = 1 + static_cast<int>(pick.uniform() * 4);
        const int s = 1 << static_cast<int>(pick.uniform() * 3);
        const int l = 1 + static_cast<int>(pick.uniform() * 6);
        const int n = m * l * s;
        const CMatrix v = complex_gaussian(n, m, 1.0, pick);

        const RfBeamformer sub = subconnected_ps(v, m);
        const RfBeamformer full = ps_full_switch(v, m, l);
        const RfBeamformer ss = ps_sub_switch(v, m, l, s);
        CHECK_NOTHROW(check_structure(sub));
        CHECK_NOTHROW(check_structure(full));
        CHECK_NOTHROW(check_structure(ss));
        for (int c = 0; c < m; ++c)
        {
            CHECK(nonzeros(sub.f_rf.col(c)) == n / m);
            CHECK(nonzeros(full.f_rf.col(c)) == l);
            CHECK(nonzeros(ss.f_rf.col(c)) == l);
            for (int q = 0; q < l; ++q)
                CHECK(nonzeros(ss.f_rf.col(c).segment(c * (n / m) + q * s, s)) == 1);
            for (int i = 0; i < n; ++i)
            {
                const cd f = full.f_rf(i, c);
                if (f != cd(0.0))
                {
                    CHECK(i / (n / m) == c);
                    CHECK_THAT(std::abs(f), WithinAbs(1.0, 1e-12));
                }
            }
        }
        CHECK(std::set<int>(ss.selected[0].begin(), ss.selected[0].end()).size() == static_cast<std::size_t>(l));
    }
}

TEST_CASE("check_structure rejects malformed matrices")
{
    const CMatrix v = channel_v(2, 8, 1, 1);
    RfBeamformer bf = ps_full_switch(v, 2, 2);
    RfBeamformer outside = bf;
    outside.f_rf(7, 0) = cd(1.0);
    CHECK_THROWS_AS(check_structure(outside), DimensionError);
    RfBeamformer scaled = bf;
    scaled.f_rf *= 1.5;
    CHECK_THROWS_AS(check_structure(scaled), DimensionError);
    RfBeamformer extra = bf;
    extra.f_rf.col(0).head(4) = CMatrix::Ones(4, 1);
    CHECK_THROWS_AS(check_structure(extra), DimensionError);
    RfBeamformer ss = ps_sub_switch(v, 2, 2, 2);
    ss.f_rf.col(0).head(2) = CMatrix::Ones(2, 1);
    ss.f_rf.col(0).segment(2, 2).setZero();
    CHECK_THROWS_AS(check_structure(ss), DimensionError);
}

TEST_CASE("build_beamformer dispatches")
{
    const CMatrix v = channel_v(4, 32, 9, 0);
    CHECK(build_beamformer(v, 4, {Architecture::SubPs, 0, 1}).f_rf == subconnected_ps(v, 4).f_rf);
    CHECK(build_beamformer(v, 4, {Architecture::FullSwitch, 3, 1}).f_rf == ps_full_switch(v, 4, 3).f_rf);
    CHECK(build_beamformer(v, 4, {Architecture::SubSwitch, 2, 4}).f_rf == ps_sub_switch(v, 4, 2, 4).f_rf);
    CHECK(architecture_name(Architecture::SubPs) == "sub-ps");
    CHECK(architecture_name(Architecture::FullSwitch) == "full-switch");
    CHECK(architecture_name(Architecture::SubSwitch) == "sub-switch");
}

TEST_CASE("phase rotation of singular vectors")
{
    const int n = 64, m = 4;
    SeededRng rng(15, 0);
    const CMatrix h = iid_rayleigh(m, n, rng).h;
    const CMatrix v = svd(h).v;
    CMatrix rotated = v;
    std::vector<cd> rot;
    for (int c = 0; c < m; ++c)
    {
        rot.push_back(std::polar(1.0, 0.7 * c + 0.3));
        rotated.col(c) *= rot.back();
    }
    const LinkBudget lb = LinkBudget::from_snr_db(10.0);
    for (const BeamformerSpec spec : {BeamformerSpec{Architecture::SubPs, 0, 1},
                                      BeamformerSpec{Architecture::FullSwitch, 6, 1},
                                      BeamformerSpec{Architecture::SubSwitch, 8, 2}})
    {
        const RfBeamformer a = build_beamformer(v, m, spec);
        const RfBeamformer b = build_beamformer(rotated, m, spec);
        CHECK(a.selected == b.selected);
        for (int c = 0; c < m; ++c)
            CHECK((b.f_rf.col(c) - a.f_rf.col(c) * rot[static_cast<std::size_t>(c)]).cwiseAbs().maxCoeff() < 1e-12);
        CHECK_THAT(hybrid_zf_rate(h, b, lb).rate_bits, WithinAbs(hybrid_zf_rate(h, a, lb).rate_bits, 1e-9));
    }
}

TEST_CASE("Q diagonalization improves with N")
{
    std::vector<QStats> stats;
    for (int n : {64, 128, 256, 512})
        stats.push_back(q_offdiag_ratio(n, 4, 100));
    CHECK(stats.back().averaged < 0.1);
    for (std::size_t i = 1; i < stats.size(); ++i)
    {
        CHECK(stats[i].averaged < stats[i - 1].averaged);
        CHECK(stats[i].per_channel < stats[i - 1].per_channel);
    }
    // Per realization the off-diagonal terms fall like 1/sqrt(N).
    CHECK_THAT(stats[3].per_channel / stats[0].per_channel, WithinRel(std::sqrt(64.0 / 512.0), 0.15));
}

TEST_CASE("full switch dominates sub switch at equal L")
{
    const int n = 128, m = 4, l = 16, s = 2, trials = 1000;
    const LinkBudget lb = LinkBudget::from_snr_db(10.0);
    std::vector<double> diff(trials);
    for (int t = 0; t < trials; ++t)
    {
        SeededRng rng(21, static_cast<std::uint64_t>(t));
        const CMatrix h = iid_rayleigh(m, n, rng).h;
        const CMatrix v = svd(h).v;
        diff[static_cast<std::size_t>(t)] = hybrid_zf_rate(h, ps_full_switch(v, m, l), lb).rate_bits -
                                            hybrid_zf_rate(h, ps_sub_switch(v, m, l, s), lb).rate_bits;
    }
    const McStats st = mc_stats(diff);
    CHECK(st.mean >= -3.0 * st.stderr_);
}
