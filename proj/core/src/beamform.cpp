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

#include "hbf/beamform.hpp"
#include "hbf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hbf {

namespace {

void check_columns(const CMatrix &v, int chains)
{
    if (chains < 1)
        throw DimensionError("beamformer: chain count must be >= 1");
    if (v.cols() < chains)
        throw DimensionError("beamformer: need " + std::to_string(chains) + " singular vectors, got " +
                             std::to_string(v.cols()));
}

cd unit_phase(cd value)
{
    return std::polar(1.0, std::arg(value));
}

} // namespace

std::string architecture_name(Architecture arch)
{
    switch (arch)
    {
    case Architecture::SubPs:
        return "sub-ps";
    case Architecture::FullSwitch:
        return "full-switch";
    case Architecture::SubSwitch:
        return "sub-switch";
    }
    return "unknown";
}

BlockIndexSets::BlockIndexSets(int antennas, int chains, int group)
    : antennas_(antennas), chains_(chains), group_(group)
{
    if (antennas < 1 || chains < 1 || group < 1)
        throw DimensionError("index sets: antennas, chains and group must be >= 1");
    if (antennas % chains != 0)
        throw DimensionError("index sets: N = " + std::to_string(antennas) + " is not divisible by M = " +
                             std::to_string(chains));
    if (block_size() % group != 0)
        throw DimensionError("index sets: block size " + std::to_string(block_size()) +
                             " is not divisible by S = " + std::to_string(group));
}

RfBeamformer subconnected_ps(const CMatrix &v, int chains)
{
    check_columns(v, chains);
    const BlockIndexSets sets(static_cast<int>(v.rows()), chains);

    RfBeamformer bf;
    bf.architecture = Architecture::SubPs;
    bf.shifters_per_chain = sets.block_size();
    bf.f_rf = CMatrix::Zero(sets.antennas(), chains);
    bf.selected.resize(chains);
    for (int m = 0; m < chains; ++m)
    {
        for (int i = 0; i < sets.block_size(); ++i)
        {
            const int n = sets.block_begin(m) + i;
            bf.f_rf(n, m) = unit_phase(v(n, m));
            bf.selected[m].push_back(n);
        }
    }
    return bf;
}

RfBeamformer ps_full_switch(const CMatrix &v, int chains, int shifters)
{
    check_columns(v, chains);
    const BlockIndexSets sets(static_cast<int>(v.rows()), chains);
    if (shifters < 1 || shifters > sets.block_size())
        throw DimensionError("full-switch: L = " + std::to_string(shifters) + " must lie in [1, N/M = " +
                             std::to_string(sets.block_size()) + "]");

    RfBeamformer bf;
    bf.architecture = Architecture::FullSwitch;
    bf.shifters_per_chain = shifters;
    bf.alpha = threshold_for_ratio(static_cast<double>(chains) * shifters / sets.antennas());
    bf.f_rf = CMatrix::Zero(sets.antennas(), chains);
    bf.selected.resize(chains);

    std::vector<int> order(sets.block_size());
    for (int m = 0; m < chains; ++m)
    {
        std::iota(order.begin(), order.end(), sets.block_begin(m));
        // stable: equal magnitudes keep ascending antenna order
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return std::abs(v(a, m)) > std::abs(v(b, m)); });
        std::vector<int> keep(order.begin(), order.begin() + shifters);
        std::sort(keep.begin(), keep.end());
        for (int n : keep)
            bf.f_rf(n, m) = unit_phase(v(n, m));
        bf.selected[m] = std::move(keep);
    }
    return bf;
}

RfBeamformer ps_sub_switch(const CMatrix &v, int chains, int shifters, int group)
{
    check_columns(v, chains);
    const long long antennas = v.rows();
    if (shifters < 1 || group < 1 || antennas != static_cast<long long>(chains) * shifters * group)
        throw DimensionError("sub-switch: N = " + std::to_string(antennas) + " must equal M * L * S = " +
                             std::to_string(chains) + " * " + std::to_string(shifters) + " * " +
                             std::to_string(group));
    const BlockIndexSets sets(static_cast<int>(antennas), chains, group);

    RfBeamformer bf;
    bf.architecture = Architecture::SubSwitch;
    bf.shifters_per_chain = shifters;
    bf.group_size = group;
    bf.f_rf = CMatrix::Zero(sets.antennas(), chains);
    bf.selected.resize(chains);
    for (int m = 0; m < chains; ++m)
    {
        for (int q = 0; q < sets.groups_per_block(); ++q)
        {
            const int first = sets.group_begin(m, q);
            int best = first;
            for (int n = first + 1; n < first + group; ++n)
                if (std::abs(v(n, m)) > std::abs(v(best, m)))
                    best = n;
            bf.f_rf(best, m) = unit_phase(v(best, m));
            bf.selected[m].push_back(best);
        }
    }
    return bf;
}

double threshold_for_ratio(double ratio)
{
    if (!(ratio > 0.0 && ratio <= 1.0))
        throw DimensionError("threshold_for_ratio: ratio must lie in (0, 1]");
    return std::sqrt(-std::log(ratio));
}

RfBeamformer build_beamformer(const CMatrix &v, int chains, const BeamformerSpec &spec)
{
    switch (spec.architecture)
    {
    case Architecture::SubPs:
        return subconnected_ps(v, chains);
    case Architecture::FullSwitch:
        return ps_full_switch(v, chains, spec.shifters);
    case Architecture::SubSwitch:
        return ps_sub_switch(v, chains, spec.shifters, spec.group);
    }
    throw DimensionError("build_beamformer: unknown architecture");
}

void check_structure(const RfBeamformer &bf)
{
    const BlockIndexSets sets(bf.antennas(), bf.chains(), bf.group_size);
    for (int m = 0; m < bf.chains(); ++m)
    {
        int count = 0;
        std::vector<int> per_group(sets.groups_per_block(), 0);
        for (int n = 0; n < bf.antennas(); ++n)
        {
            const cd f = bf.f_rf(n, m);
            if (f == cd{0.0, 0.0})
                continue;
            if (sets.chain_of(n) != m)
                throw DimensionError("structure: entry (" + std::to_string(n) + ", " + std::to_string(m) +
                                     ") outside block");
            if (std::abs(std::abs(f) - 1.0) > 1e-12)
                throw DimensionError("structure: entry (" + std::to_string(n) + ", " + std::to_string(m) +
                                     ") is not unit modulus");
            ++count;
            ++per_group[(n - sets.block_begin(m)) / sets.group()];
        }

        const int expected = bf.architecture == Architecture::SubPs ? sets.block_size() : bf.shifters_per_chain;
        if (count != expected)
            throw DimensionError("structure: column " + std::to_string(m) + " has " + std::to_string(count) +
                                 " nonzeros, expected " + std::to_string(expected));
        if (bf.architecture == Architecture::SubSwitch &&
            std::any_of(per_group.begin(), per_group.end(), [](int c) { return c != 1; }))
            throw DimensionError("structure: column " + std::to_string(m) + " has a group without exactly one "
                                 "active antenna");
    }
    if (bf.architecture == Architecture::SubPs && bf.shifters_per_chain != sets.block_size())
        throw DimensionError("structure: sub-ps must use L = N/M");
}

} // namespace hbf
