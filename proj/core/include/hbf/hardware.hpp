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

#ifndef HBF_HARDWARE_HPP
#define HBF_HARDWARE_HPP

#include "hbf/beamform.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hbf {

using SelectMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

enum class SwitchTopology
{
    FullyConnected,
    Subconnected,
};

// Settings of one RF chain.
//  FullyConnected: select is (N/M) x L; select(i, l) = 1 routes shifter l to
//                  antenna i of the block, so block = select * phases.
//  Subconnected:   select is L x S; row l is the one-hot switch state of
//                  shifter l over its S candidate antennas.
struct ChainSettings
{
    std::vector<cd> phases; // unit-modulus weights, length L
    SelectMatrix select;
};

struct HardwareConfig
{
    SwitchTopology topology = SwitchTopology::FullyConnected;
    int antennas = 0;
    int chains = 0;
    int shifters = 0; // L
    int group = 1;    // S
    std::vector<ChainSettings> chain;
};

// Phase weights and select matrices for a FullSwitch (or SubPs, where every
// select matrix is the identity) beamformer.
HardwareConfig extract_hardware_full(const RfBeamformer &bf);

// Phase weights and one-hot switch vectors for a SubSwitch beamformer.
HardwareConfig extract_hardware_sub(const RfBeamformer &bf);

// Rebuilds the N x M RF matrix from hardware settings.
CMatrix apply_hardware(const HardwareConfig &hw);

// Throws DimensionError on any select-matrix violation.
void check_hardware(const HardwareConfig &hw);

// Plain-text report: phases in radians with 12 significant digits, select
// matrices as 0/1 grids. parse_hardware_report reads it back.
std::string hardware_report(const HardwareConfig &hw);
void write_hardware_report(std::ostream &os, const HardwareConfig &hw);
HardwareConfig parse_hardware_report(std::istream &is);

} // namespace hbf

#endif
