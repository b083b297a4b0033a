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

#ifndef HBF_BEAMFORM_HPP
#define HBF_BEAMFORM_HPP

#include "hbf/numerics.hpp"

#include <string>
#include <vector>

namespace hbf {

enum class Architecture
{
    SubPs,      // one phase shifter per antenna, disjoint blocks
    FullSwitch, // L shifters per chain routed by a fully-connected switch
    SubSwitch,  // L shifters per chain, each a 1-of-S switch over adjacent antennas
};

std::string architecture_name(Architecture arch);

// Antenna partition of a subconnected array. All indices are 0-based:
// chain m owns antennas [m * N/M, (m + 1) * N/M), and when a group size S is
// set, group q covers [q * S, (q + 1) * S).
class BlockIndexSets
{
public:
    BlockIndexSets(int antennas, int chains, int group = 1);

    int antennas() const noexcept { return antennas_; }
    int chains() const noexcept { return chains_; }
    int group() const noexcept { return group_; }
    int block_size() const noexcept { return antennas_ / chains_; }
    int groups_per_block() const noexcept { return block_size() / group_; }

    int block_begin(int chain) const noexcept { return chain * block_size(); }
    int group_begin(int chain, int local_group) const noexcept
    {
        return block_begin(chain) + local_group * group_;
    }
    int chain_of(int antenna) const noexcept { return antenna / block_size(); }

private:
    int antennas_;
    int chains_;
    int group_;
};

struct RfBeamformer
{
    CMatrix f_rf; // antennas x chains
    Architecture architecture = Architecture::SubPs;
    int shifters_per_chain = 0; // L; equals N/M for SubPs
    int group_size = 1;         // S; 1 unless SubSwitch
    double alpha = 0.0;         // threshold of the equivalent large-N rule (FullSwitch)
    std::vector<std::vector<int>> selected; // per chain, active antenna indices in ascending order

    int antennas() const { return static_cast<int>(f_rf.rows()); }
    int chains() const { return static_cast<int>(f_rf.cols()); }

    // trace(F^H F) / M, which equals L for every construction here.
    double gamma() const { return static_cast<double>(shifters_per_chain); }
};

// F[n, m] = exp(j arg V[n, m]) on block m, zero elsewhere.
RfBeamformer subconnected_ps(const CMatrix &v, int chains);

// Keeps, per block, the L antennas with the largest |V[n, m]| (lowest index
// wins ties) and phases them like subconnected_ps.
RfBeamformer ps_full_switch(const CMatrix &v, int chains, int shifters);

// Each group of S adjacent antennas inside a block gets one shifter, routed to
// the antenna with the largest |V[n, m]| (lowest index wins ties).
// Requires N = M * L * S.
RfBeamformer ps_sub_switch(const CMatrix &v, int chains, int shifters, int group);

// alpha = sqrt(-ln(ratio)), the Rayleigh tail threshold that keeps a fraction
// `ratio` = ML/N of the antennas.
double threshold_for_ratio(double ratio);

// Parameters for building any of the three beamformers.
struct BeamformerSpec
{
    Architecture architecture = Architecture::SubPs;
    int shifters = 0; // L; ignored for SubPs
    int group = 1;    // S; used by SubSwitch only
};

RfBeamformer build_beamformer(const CMatrix &v, int chains, const BeamformerSpec &spec);

// Structural checks: block support, unit modulus, per-column counts.
// Throws DimensionError describing the first violation.
void check_structure(const RfBeamformer &bf);

} // namespace hbf

#endif
