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

#include "hbf/errors.hpp"
#include "hbf/numerics.hpp"

#include <cmath>
#include <numbers>

namespace hbf {

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
    engine_.seed(seq);
}

double SeededRng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform_open()
{
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

cd SeededRng::complex_normal(double variance)
{
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double radius = std::sqrt(-variance * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(theta), radius * std::sin(theta)};
}

CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, double variance, SeededRng &rng)
{
    if (rows < 1 || cols < 1)
        throw DimensionError("complex_gaussian: rows and cols must be >= 1");
    if (!(variance > 0.0))
        throw DimensionError("complex_gaussian: variance must be positive");

    CMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            out(i, j) = rng.complex_normal(variance);
    return out;
}

} // namespace hbf
