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

#ifndef HBF_CHANNEL_HPP
#define HBF_CHANNEL_HPP

#include "hbf/numerics.hpp"

#include <string>
#include <variant>

namespace hbf {

struct IidRayleigh
{
};

// Exponential antenna correlation at the base station, R_ij = rho^|i-j|.
struct CorrelatedRayleigh
{
    double rho = 0.7;
};

// Uniform linear array with `paths` multipath components per user.
struct SparseGeometric
{
    int paths = 2;
    double spacing_ratio = 0.5; // d / lambda
};

using ChannelModel = std::variant<IidRayleigh, CorrelatedRayleigh, SparseGeometric>;

void validate(const ChannelModel &model);

// "iid", "correlated" or "sparse".
std::string channel_name(const ChannelModel &model);

struct ChannelMatrix
{
    CMatrix h; // users x antennas
    ChannelModel model;

    Eigen::Index users() const { return h.rows(); }
    Eigen::Index antennas() const { return h.cols(); }
};

ChannelMatrix iid_rayleigh(int users, int antennas, SeededRng &rng);

CMatrix exp_correlation_matrix(int n, double rho);

ChannelMatrix correlated_rayleigh(int users, int antennas, double rho, SeededRng &rng);

// n x 1 array response; entry m is exp(j 2 pi spacing_ratio m cos(phi)) / sqrt(n).
CMatrix steering_vector(int n, double phi, double spacing_ratio = 0.5);

// Row k is sqrt(N/C) * sum_c beta_ck * conj(a(phi_ck)). Per user and per path the
// stream is consumed as: beta (two uniforms), then phi (one uniform on [0, pi]).
ChannelMatrix sparse_channel(int users, int antennas, int paths, double spacing_ratio, SeededRng &rng);

// Draws channels of one fixed model and size. Holds the correlation square
// root so repeated correlated draws do not redo the eigendecomposition.
class ChannelSampler
{
public:
    ChannelSampler(ChannelModel model, int users, int antennas);

    ChannelMatrix draw(SeededRng &rng) const;

    const ChannelModel &model() const noexcept { return model_; }
    int users() const noexcept { return users_; }
    int antennas() const noexcept { return antennas_; }

private:
    ChannelModel model_;
    int users_;
    int antennas_;
    CMatrix corr_sqrt_; // empty unless correlated with rho > 0
};

} // namespace hbf

#endif
