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

#include "hbf/numerics.hpp"
#include "hbf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hbf {

bool all_finite(const CMatrix &a)
{
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
                return false;
    return true;
}

SvdResult svd(const CMatrix &a)
{
    if (a.rows() < 1 || a.cols() < 1)
        throw DimensionError("svd: empty matrix");
    if (!all_finite(a))
        throw NumericalError("svd: input has non-finite entries");

    Eigen::JacobiSVD<CMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success)
        throw NumericalError("svd: Jacobi iteration did not converge");

    SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
    if (!all_finite(out.u) || !all_finite(out.v) || !out.singular_values.allFinite())
        throw NumericalError("svd: non-finite factors");
    return out;
}

CMatrix hermitian_sqrt(const CMatrix &r)
{
    if (r.rows() != r.cols() || r.rows() < 1)
        throw DimensionError("hermitian_sqrt: matrix must be square and non-empty");
    const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
    if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw DimensionError("hermitian_sqrt: matrix is not Hermitian");

    const Eigen::Index n = r.rows();
    bool diagonal = true;
    for (Eigen::Index j = 0; j < n && diagonal; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            if (i != j && r(i, j) != cd{0.0, 0.0})
            {
                diagonal = false;
                break;
            }

    if (diagonal)
    {
        CMatrix out = CMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double d = r(i, i).real();
            if (d < -1e-8)
                throw NotPsdError("hermitian_sqrt: negative eigenvalue " + std::to_string(d));
            out(i, i) = std::sqrt(std::max(d, 0.0));
        }
        return out;
    }

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(r);
    if (eig.info() != Eigen::Success)
        throw NumericalError("hermitian_sqrt: eigendecomposition did not converge");
    RVector lambda = eig.eigenvalues();
    if (lambda.minCoeff() < -1e-8)
        throw NotPsdError("hermitian_sqrt: negative eigenvalue " + std::to_string(lambda.minCoeff()));
    lambda = lambda.cwiseMax(0.0).cwiseSqrt();

    const CMatrix &vecs = eig.eigenvectors();
    CMatrix out = vecs * lambda.cast<cd>().asDiagonal() * vecs.adjoint();
    // Symmetrize away rounding so the result is exactly Hermitian.
    out = (0.5 * (out + out.adjoint())).eval();
    return out;
}

double erf(double x)
{
    return x < 0.0 ? -std::erf(-x) : std::erf(x);
}

CMatrix inverse_small(const CMatrix &a)
{
    if (a.rows() != a.cols() || a.rows() < 1)
        throw DimensionError("inverse_small: matrix must be square and non-empty");
    if (a.rows() > 16)
        throw DimensionError("inverse_small: limited to 16x16");

    Eigen::PartialPivLU<CMatrix> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12))
        throw SingularMatrixError("inverse_small: condition number above 1e12 (rcond " + std::to_string(rcond) +
                                  ")");
    CMatrix inv = lu.inverse();
    if (!all_finite(inv))
        throw SingularMatrixError("inverse_small: non-finite inverse");
    return inv;
}

double compensated_sum(std::span<const double> values)
{
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values)
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            carry += (sum - t) + v;
        else
            carry += (v - t) + sum;
        sum = t;
    }
    return sum + carry;
}

double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8)
    {
        double s = 0.0;
        for (double v : values)
            s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

} // namespace hbf
