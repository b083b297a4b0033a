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

#include "hbf/rates.hpp"
#include "hbf/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hbf {

namespace {

constexpr double kHalfSqrtPi = 0.88622692545275801364908374167057; // sqrt(pi) / 2

double log2_det_hpd(const CMatrix &a)
{
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw NumericalError("log2 det: matrix is not positive definite");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        acc += std::log2(llt.matrixL()(i, i).real());
    return 2.0 * acc;
}

void check_users(int antennas, int users)
{
    if (users < 1 || antennas <= users)
        throw DimensionError("analytic rate: need N > K >= 1 (N = " + std::to_string(antennas) +
                             ", K = " + std::to_string(users) + ")");
}

// 1 - (1 - exp(-v^2))^S without cancellation.
double max_rayleigh_tail(double v, int group)
{
    return -std::expm1(group * std::log1p(-std::exp(-v * v)));
}

} // namespace

LinkBudget::LinkBudget(double power, double noise_variance)
    : power_(power), noise_variance_(noise_variance)
{
    if (!(power > 0.0) || !(noise_variance > 0.0) || !std::isfinite(power) || !std::isfinite(noise_variance))
        throw DimensionError("link budget: power and noise variance must be positive and finite");
}

LinkBudget LinkBudget::from_snr_db(double snr_db, double noise_variance)
{
    return {noise_variance * std::pow(10.0, snr_db / 10.0), noise_variance};
}

double LinkBudget::snr_db() const
{
    return 10.0 * std::log10(snr());
}

double sum_capacity(const CMatrix &h, const LinkBudget &lb)
{
    if (h.rows() > h.cols())
        throw DimensionError("sum_capacity: K must not exceed N");
    const CMatrix gram = CMatrix::Identity(h.rows(), h.rows()) + lb.snr() * (h * h.adjoint());
    return std::max(0.0, log2_det_hpd(gram));
}

RateResult zf_digital_rate(const CMatrix &h, const LinkBudget &lb)
{
    const auto users = static_cast<int>(h.rows());
    if (users > h.cols())
        throw DimensionError("zf_digital_rate: K must not exceed N");
    const CMatrix inv = inverse_small(h * h.adjoint());

    RateResult out;
    out.gamma = inv.trace().real() / users;
    out.rate_bits = rate_from_gamma(users, out.gamma, lb);
    out.per_user.assign(users, out.rate_bits / users);
    return out;
}

double hybrid_zf_gamma(const CMatrix &h, const RfBeamformer &bf)
{
    if (h.cols() != bf.antennas())
        throw DimensionError("hybrid ZF: channel has " + std::to_string(h.cols()) + " antennas, beamformer " +
                             std::to_string(bf.antennas()));
    if (h.rows() != bf.chains())
        throw DimensionError("hybrid ZF: requires M = K");

    const double scale = 1.0 / std::sqrt(bf.gamma());
    const CMatrix effective = scale * (h * bf.f_rf);
    const CMatrix baseband = inverse_small(effective);
    const CMatrix rf_gram = (bf.f_rf.adjoint() * bf.f_rf) / bf.gamma();
    return (baseband.adjoint() * rf_gram * baseband).trace().real() / bf.chains();
}

RateResult hybrid_zf_rate(const CMatrix &h, const RfBeamformer &bf, const LinkBudget &lb)
{
    RateResult out;
    out.gamma = hybrid_zf_gamma(h, bf);
    out.rate_bits = rate_from_gamma(bf.chains(), out.gamma, lb);

    // Per-stream SINR on the precoded channel H F_rf F_B / sqrt(gamma_rf).
    const double scale = 1.0 / std::sqrt(bf.gamma());
    const CMatrix effective = scale * (h * bf.f_rf);
    const CMatrix end_to_end = effective * inverse_small(effective);
    const double tx = lb.power() / out.gamma;
    out.per_user.resize(bf.chains());
    for (Eigen::Index k = 0; k < end_to_end.rows(); ++k)
    {
        double interference = 0.0;
        for (Eigen::Index j = 0; j < end_to_end.cols(); ++j)
            if (j != k)
                interference += std::norm(end_to_end(k, j));
        const double sinr = tx * std::norm(end_to_end(k, k)) / (lb.noise_variance() + tx * interference);
        out.per_user[k] = std::log2(1.0 + sinr);
    }
    return out;
}

double rate_from_gamma(int streams, double gamma, const LinkBudget &lb)
{
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw NumericalError("rate: power normalization must be positive and finite");
    return streams * std::log2(1.0 + lb.power() / (gamma * lb.noise_variance()));
}

RateResult aggregate(std::span<const RateResult> results)
{
    if (results.empty())
        throw DimensionError("aggregate: no results");

    std::vector<double> rates;
    std::vector<double> gammas;
    rates.reserve(results.size());
    gammas.reserve(results.size());
    for (const RateResult &r : results)
    {
        rates.push_back(r.rate_bits);
        gammas.push_back(r.gamma);
    }

    const double n = static_cast<double>(results.size());
    RateResult out;
    out.trials = results.size();
    out.rate_bits = compensated_sum(rates) / n;
    out.gamma = compensated_sum(gammas) / n;
    if (results.size() > 1)
    {
        std::vector<double> dev2;
        dev2.reserve(rates.size());
        for (double r : rates)
            dev2.push_back((r - out.rate_bits) * (r - out.rate_bits));
        out.stderr_bits = std::sqrt(compensated_sum(dev2) / (n - 1.0)) / std::sqrt(n);
    }
    out.per_trial = std::move(rates);
    return out;
}

double zf_rate_analytic(int antennas, int users, const LinkBudget &lb)
{
    check_users(antennas, users);
    return users * std::log2(1.0 + lb.snr() * (antennas - users));
}

double subps_rate_analytic(int chains, int antennas, const LinkBudget &lb)
{
    check_users(antennas, chains);
    return chains * std::log2(1.0 + std::numbers::pi * lb.snr() * (antennas - chains) / (4.0 * chains));
}

double truncated_rayleigh_mean(double alpha, const std::function<double(double)> &erf_fn)
{
    if (!(alpha >= 0.0))
        throw DimensionError("truncated_rayleigh_mean: alpha must be >= 0");
    return kHalfSqrtPi + alpha * std::exp(-alpha * alpha) - kHalfSqrtPi * erf_fn(alpha);
}

double truncated_rayleigh_mean(double alpha)
{
    return truncated_rayleigh_mean(alpha, [](double x) { return hbf::erf(x); });
}

double full_switch_rate_analytic(int chains, int antennas, int shifters, const LinkBudget &lb)
{
    check_users(antennas, chains);
    const double ratio = static_cast<double>(chains) * shifters / antennas;
    if (shifters < 1 || !(ratio <= 1.0))
        throw DimensionError("full-switch analytic rate: need 1 <= L <= N/M");
    const double mean = truncated_rayleigh_mean(threshold_for_ratio(ratio));
    return chains * std::log2(1.0 + mean * mean * lb.snr() * (antennas - chains) / (chains * ratio));
}

double expected_max_rayleigh(int group)
{
    if (group < 1 || group > 64)
        throw DimensionError("expected_max_rayleigh: S must lie in [1, 64]");

    // Alternating binomial sum in extended precision. Its terms grow like
    // 2^S, so once the rounding bound passes 1e-12 the same mean is taken
    // as the integral of the survival function 1 - (1 - exp(-v^2))^S.
    std::vector<long double> terms(group);
    long double binom = 1.0L;
    long double magnitude = 0.0L;
    for (int s = 0; s < group; ++s)
    {
        const long double t = binom / powl(static_cast<long double>(s + 1), 1.5L);
        terms[s] = (s % 2 == 0) ? t : -t;
        magnitude += t;
        binom = binom * (group - 1 - s) / (s + 1);
    }
    const long double scale = static_cast<long double>(group) * kHalfSqrtPi;
    const long double bound = scale * magnitude * group * std::numeric_limits<long double>::epsilon();
    if (bound <= 1e-12L)
    {
        // pairwise reduction
        for (std::size_t width = 1; width < terms.size(); width *= 2)
            for (std::size_t i = 0; i + width < terms.size(); i += 2 * width)
                terms[i] += terms[i + width];
        return static_cast<double>(scale * terms[0]);
    }

    const double upper = std::sqrt(std::log(static_cast<double>(group)) + 40.0);
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [group](double v) { return max_rayleigh_tail(v, group); }, 0.0, upper, 15, 1e-14);
}

double sub_switch_rate_analytic(int chains, int group, int antennas, const LinkBudget &lb)
{
    check_users(antennas, chains);
    if (group < 1 || antennas % (chains * group) != 0)
        throw DimensionError("sub-switch analytic rate: N must equal M * L * S");
    const double mean = expected_max_rayleigh(group);
    return chains * std::log2(1.0 + mean * mean / group * lb.snr() * (antennas - chains) / chains);
}

} // namespace hbf
