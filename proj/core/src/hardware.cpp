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

#include "hbf/hardware.hpp"
#include "hbf/errors.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace hbf {

namespace {

std::string chain_label(int m)
{
    return "chain " + std::to_string(m + 1);
}

std::string format_phase(double radians)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", radians);
    return buf;
}

template <class T> T read_value(std::istream &is, const std::string &key)
{
    std::string word;
    if (!(is >> word) || word != key)
        throw DimensionError("hardware report: expected '" + key + "', got '" + word + "'");
    T value{};
    if (!(is >> value))
        throw DimensionError("hardware report: bad value for '" + key + "'");
    return value;
}

} // namespace

HardwareConfig extract_hardware_full(const RfBeamformer &bf)
{
    if (bf.architecture != Architecture::FullSwitch && bf.architecture != Architecture::SubPs)
        throw DimensionError("extract_hardware_full: beamformer is " + architecture_name(bf.architecture));
    const BlockIndexSets sets(bf.antennas(), bf.chains());
    const int shifters = bf.shifters_per_chain;

    HardwareConfig hw;
    hw.topology = SwitchTopology::FullyConnected;
    hw.antennas = bf.antennas();
    hw.chains = bf.chains();
    hw.shifters = shifters;
    hw.group = 1;
    hw.chain.resize(bf.chains());

    for (int m = 0; m < bf.chains(); ++m)
    {
        ChainSettings &cs = hw.chain[m];
        cs.select = SelectMatrix::Zero(sets.block_size(), shifters);
        // block entries in antenna order; each nonzero takes the next shifter
        for (int i = 0; i < sets.block_size(); ++i)
        {
            const cd f = bf.f_rf(sets.block_begin(m) + i, m);
            if (f == cd{0.0, 0.0})
                continue;
            const int l = static_cast<int>(cs.phases.size());
            if (l >= shifters)
                throw DimensionError("extract_hardware_full: " + chain_label(m) + " has more than L nonzeros");
            cs.phases.push_back(f);
            cs.select(i, l) = 1;
        }
        if (static_cast<int>(cs.phases.size()) != shifters)
            throw DimensionError("extract_hardware_full: " + chain_label(m) + " has " +
                                 std::to_string(cs.phases.size()) + " nonzeros, expected " +
                                 std::to_string(shifters));
    }
    return hw;
}

HardwareConfig extract_hardware_sub(const RfBeamformer &bf)
{
    if (bf.architecture != Architecture::SubSwitch)
        throw DimensionError("extract_hardware_sub: beamformer is " + architecture_name(bf.architecture));
    const BlockIndexSets sets(bf.antennas(), bf.chains(), bf.group_size);
    const int shifters = bf.shifters_per_chain;
    const int group = bf.group_size;
    if (sets.groups_per_block() != shifters)
        throw DimensionError("extract_hardware_sub: N != M * L * S");

    HardwareConfig hw;
    hw.topology = SwitchTopology::Subconnected;
    hw.antennas = bf.antennas();
    hw.chains = bf.chains();
    hw.shifters = shifters;
    hw.group = group;
    hw.chain.resize(bf.chains());

    for (int m = 0; m < bf.chains(); ++m)
    {
        ChainSettings &cs = hw.chain[m];
        cs.select = SelectMatrix::Zero(shifters, group);
        for (int l = 0; l < shifters; ++l)
        {
            const int first = sets.group_begin(m, l);
            int hits = 0;
            for (int s = 0; s < group; ++s)
            {
                const cd f = bf.f_rf(first + s, m);
                if (f == cd{0.0, 0.0})
                    continue;
                ++hits;
                cs.select(l, s) = 1;
                cs.phases.push_back(f);
            }
            if (hits != 1)
                throw DimensionError("extract_hardware_sub: " + chain_label(m) + ", shifter " +
                                     std::to_string(l + 1) + " has " + std::to_string(hits) +
                                     " active antennas, expected 1");
        }
    }
    return hw;
}

void check_hardware(const HardwareConfig &hw)
{
    const BlockIndexSets sets(hw.antennas, hw.chains, hw.group);
    if (static_cast<int>(hw.chain.size()) != hw.chains)
        throw DimensionError("hardware: chain count mismatch");

    for (int m = 0; m < hw.chains; ++m)
    {
        const ChainSettings &cs = hw.chain[m];
        if (static_cast<int>(cs.phases.size()) != hw.shifters)
            throw DimensionError("hardware: " + chain_label(m) + " phase count != L");
        for (const cd &p : cs.phases)
            if (std::abs(std::abs(p) - 1.0) > 1e-12)
                throw DimensionError("hardware: " + chain_label(m) + " phase weight is not unit modulus");
        if ((cs.select.array() > 1).any())
            throw DimensionError("hardware: " + chain_label(m) + " select entries must be 0 or 1");

        const SelectMatrix &sel = cs.select;
        if (hw.topology == SwitchTopology::FullyConnected)
        {
            if (sel.rows() != sets.block_size() || sel.cols() != hw.shifters)
                throw DimensionError("hardware: " + chain_label(m) + " select matrix must be (N/M) x L");
            for (Eigen::Index i = 0; i < sel.rows(); ++i)
                if (sel.row(i).cast<int>().sum() > 1)
                    throw DimensionError("hardware: " + chain_label(m) + " select row " + std::to_string(i + 1) +
                                         " has more than one nonzero");
            for (Eigen::Index l = 0; l < sel.cols(); ++l)
                if (sel.col(l).cast<int>().sum() != 1)
                    throw DimensionError("hardware: " + chain_label(m) + " select column " +
                                         std::to_string(l + 1) + " is not one-hot");
        }
        else
        {
            if (sets.groups_per_block() != hw.shifters || sel.rows() != hw.shifters || sel.cols() != hw.group)
                throw DimensionError("hardware: " + chain_label(m) + " switch vectors must be L x S");
            for (Eigen::Index l = 0; l < sel.rows(); ++l)
                if (sel.row(l).cast<int>().sum() != 1)
                    throw DimensionError("hardware: " + chain_label(m) + " switch " + std::to_string(l + 1) +
                                         " is not one-hot");
        }
    }
}

CMatrix apply_hardware(const HardwareConfig &hw)
{
    check_hardware(hw);
    const BlockIndexSets sets(hw.antennas, hw.chains, hw.group);
    CMatrix f = CMatrix::Zero(hw.antennas, hw.chains);
    for (int m = 0; m < hw.chains; ++m)
    {
        const ChainSettings &cs = hw.chain[m];
        for (Eigen::Index r = 0; r < cs.select.rows(); ++r)
            for (Eigen::Index c = 0; c < cs.select.cols(); ++c)
            {
                if (cs.select(r, c) == 0)
                    continue;
                if (hw.topology == SwitchTopology::FullyConnected)
                    f(sets.block_begin(m) + r, m) = cs.phases[c]; // antenna r <- shifter c
                else
                    f(sets.group_begin(m, static_cast<int>(r)) + c, m) = cs.phases[r]; // shifter r -> antenna c
            }
    }
    return f;
}

void write_hardware_report(std::ostream &os, const HardwareConfig &hw)
{
    os << "hybridbf hardware report\n";
    os << "topology " << (hw.topology == SwitchTopology::FullyConnected ? "fully-connected" : "subconnected")
       << '\n';
    os << "antennas " << hw.antennas << '\n';
    os << "chains " << hw.chains << '\n';
    os << "shifters " << hw.shifters << '\n';
    os << "group " << hw.group << '\n';
    for (int m = 0; m < hw.chains; ++m)
    {
        const ChainSettings &cs = hw.chain[m];
        os << chain_label(m) << '\n';
        os << "phases";
        for (const cd &p : cs.phases)
            os << ' ' << format_phase(std::arg(p));
        os << '\n';
        os << "select " << cs.select.rows() << ' ' << cs.select.cols() << '\n';
        for (Eigen::Index r = 0; r < cs.select.rows(); ++r)
        {
            for (Eigen::Index c = 0; c < cs.select.cols(); ++c)
                os << (c ? " " : "") << static_cast<int>(cs.select(r, c));
            os << '\n';
        }
    }
}

std::string hardware_report(const HardwareConfig &hw)
{
    std::ostringstream os;
    write_hardware_report(os, hw);
    return os.str();
}

HardwareConfig parse_hardware_report(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || line != "hybridbf hardware report")
        throw DimensionError("hardware report: missing header line");

    HardwareConfig hw;
    const auto topology = read_value<std::string>(is, "topology");
    if (topology == "fully-connected")
        hw.topology = SwitchTopology::FullyConnected;
    else if (topology == "subconnected")
        hw.topology = SwitchTopology::Subconnected;
    else
        throw DimensionError("hardware report: unknown topology '" + topology + "'");
    hw.antennas = read_value<int>(is, "antennas");
    hw.chains = read_value<int>(is, "chains");
    hw.shifters = read_value<int>(is, "shifters");
    hw.group = read_value<int>(is, "group");
    if (hw.chains < 1 || hw.shifters < 1 || hw.antennas < 1 || hw.group < 1)
        throw DimensionError("hardware report: sizes must be >= 1");

    hw.chain.resize(hw.chains);
    for (int m = 0; m < hw.chains; ++m)
    {
        if (read_value<int>(is, "chain") != m + 1)
            throw DimensionError("hardware report: chains out of order");
        std::string word;
        is >> word;
        if (word != "phases")
            throw DimensionError("hardware report: expected 'phases'");
        ChainSettings &cs = hw.chain[m];
        for (int l = 0; l < hw.shifters; ++l)
        {
            double radians = 0.0;
            if (!(is >> radians))
                throw DimensionError("hardware report: bad phase value");
            cs.phases.push_back(std::polar(1.0, radians));
        }
        const int rows = read_value<int>(is, "select");
        int cols = 0;
        if (!(is >> cols) || rows < 1 || cols < 1)
            throw DimensionError("hardware report: bad select size");
        cs.select = SelectMatrix::Zero(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
            {
                int bit = 0;
                if (!(is >> bit) || (bit != 0 && bit != 1))
                    throw DimensionError("hardware report: select entries must be 0 or 1");
                cs.select(r, c) = static_cast<std::uint8_t>(bit);
            }
    }
    check_hardware(hw);
    return hw;
}

} // namespace hbf
