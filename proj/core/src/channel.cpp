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

#include "hbf/channel.hpp"
#include "hbf/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hbf {

namespace {

template <class... Ts> struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void check_dims(int users, int antennas)
{
    if (users < 1 || antennas < 1)
        throw DimensionError("channel: users and antennas must be >= 1");
    if (users > antennas)
        throw DimensionError("channel: users (" + std::to_string(users) + ") exceed antennas (" +
                             std::to_string(antennas) + ")");
}

CMatrix sparse_rows(int users, int antennas, int paths, double spacing_ratio, SeededRng &rng)
{
    const double gain = std::sqrt(static_cast<double>(antennas) / paths);
    CMatrix h = CMatrix::Zero(users, antennas);
    for (int k = 0; k < users; ++k)
    {
        for (int c = 0; c < paths; ++c)
        {
            const cd beta = rng.complex_normal(1.0);
            const double phi = std::numbers::pi * rng.uniform();
            h.row(k) += (gain * beta) * steering_vector(antennas, phi, spacing_ratio).col(0).conjugate().transpose();
        }
    }
    return h;
}

} // namespace

void validate(const ChannelModel &model)
{
    std::visit(overloaded{
                   [](const IidRayleigh &) {},
                   [](const CorrelatedRayleigh &c) {
                       if (!(c.rho >= 0.0 && c.rho < 1.0))
                           throw DimensionError("correlated channel: rho must lie in [0, 1)");
                   },
                   [](const SparseGeometric &s) {
                       if (s.paths < 1)
                           throw DimensionError("sparse channel: path count must be >= 1");
                       if (!(s.spacing_ratio > 0.0))
                           throw DimensionError("sparse channel: spacing ratio must be positive");
                   },
               },
               model);
}

std::string channel_name(const ChannelModel &model)
{
    return std::visit(overloaded{
                          [](const IidRayleigh &) { return std::string("iid"); },
                          [](const CorrelatedRayleigh &) { return std::string("correlated"); },
                          [](const SparseGeometric &) { return std::string("sparse"); },
                      },
                      model);
}

ChannelMatrix iid_rayleigh(int users, int antennas, SeededRng &rng)
{
    check_dims(users, antennas);
    return {complex_gaussian(users, antennas, 1.0, rng), IidRayleigh{}};
}

CMatrix exp_correlation_matrix(int n, double rho)
{
    if (n < 1)
        throw DimensionError("exp_correlation_matrix: n must be >= 1");
    if (!(rho >= 0.0 && rho <= 1.0))
        throw DimensionError("exp_correlation_matrix: rho must lie in [0, 1]");

    CMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = std::pow(rho, std::abs(i - j));
    return r;
}

ChannelMatrix correlated_rayleigh(int users, int antennas, double rho, SeededRng &rng)
{
    return ChannelSampler(CorrelatedRayleigh{rho}, users, antennas).draw(rng);
}

CMatrix steering_vector(int n, double phi, double spacing_ratio)
{
    if (n < 1)
        throw DimensionError("steering_vector: n must be >= 1");
    if (!(phi >= 0.0 && phi <= std::numbers::pi))
        throw DimensionError("steering_vector: phi must lie in [0, pi]");

    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    const double step = 2.0 * std::numbers::pi * spacing_ratio * std::cos(phi);
    CMatrix a(n, 1);
    for (int m = 0; m < n; ++m)
        a(m, 0) = std::polar(norm, step * m);
    return a;
}

ChannelMatrix sparse_channel(int users, int antennas, int paths, double spacing_ratio, SeededRng &rng)
{
    return ChannelSampler(SparseGeometric{paths, spacing_ratio}, users, antennas).draw(rng);
}

ChannelSampler::ChannelSampler(ChannelModel model, int users, int antennas)
    : model_(std::move(model)), users_(users), antennas_(antennas)
{
    check_dims(users, antennas);
    validate(model_);
    if (const auto *c = std::get_if<CorrelatedRayleigh>(&model_); c && c->rho > 0.0)
        corr_sqrt_ = hermitian_sqrt(exp_correlation_matrix(antennas, c->rho));
}

ChannelMatrix ChannelSampler::draw(SeededRng &rng) const
{
    return std::visit(overloaded{
                          [&](const IidRayleigh &) { return iid_rayleigh(users_, antennas_, rng); },
                          [&](const CorrelatedRayleigh &) {
                              CMatrix hw = complex_gaussian(users_, antennas_, 1.0, rng);
                              if (corr_sqrt_.size() == 0)
                                  return ChannelMatrix{std::move(hw), model_};
                              return ChannelMatrix{hw * corr_sqrt_, model_};
                          },
                          [&](const SparseGeometric &s) {
                              return ChannelMatrix{sparse_rows(users_, antennas_, s.paths, s.spacing_ratio, rng),
                                                   model_};
                          },
                      },
                      model_);
}

} // namespace hbf
