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

#ifndef HBF_NUMERICS_HPP
#define HBF_NUMERICS_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>

namespace hbf {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Thin SVD a = u * diag(singular_values) * v^H with r = min(rows, cols).
// Column phases of u and v are whatever the solver produced; callers must not
// depend on them.
struct SvdResult
{
    CMatrix u;               // rows x r
    RVector singular_values; // r, non-negative, descending
    CMatrix v;               // cols x r
};

SvdResult svd(const CMatrix &a);

// Hermitian PSD square root B with B * B^H = r. Eigenvalues in [-1e-8, 0) are
// clamped to zero; anything more negative throws NotPsdError.
CMatrix hermitian_sqrt(const CMatrix &r);

// Error function, odd-symmetric by construction.
double erf(double x);

// Inverse of a small square matrix (<= 16x16) through partial-pivot LU.
// Throws SingularMatrixError when the estimated condition number exceeds 1e12.
CMatrix inverse_small(const CMatrix &a);

bool all_finite(const CMatrix &a);

// Deterministic random stream keyed by (master_seed, stream_index). Two
// instances with the same key produce identical sequences on every platform:
// std::mt19937_64 and std::seed_seq are fully specified by the standard, and
// the uniform/normal transforms below are written out explicitly instead of
// relying on the implementation-defined std:: distributions.
class SeededRng
{
public:
    SeededRng(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_index() const noexcept { return stream_index_; }

    double uniform();      // [0, 1)
    double uniform_open(); // (0, 1]

    // Box-Muller: one circularly-symmetric complex normal per two uniforms,
    // real and imaginary parts each with variance / 2.
    cd complex_normal(double variance = 1.0);

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
};

// rows x cols matrix of i.i.d. CN(0, variance) entries, drawn in row-major order.
CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, double variance, SeededRng &rng);

// Neumaier-compensated sum; the result depends only on the element order.
double compensated_sum(std::span<const double> values);

// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

} // namespace hbf

#endif
