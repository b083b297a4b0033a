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

#ifndef HBF_RATES_HPP
#define HBF_RATES_HPP

#include "hbf/beamform.hpp"
#include "hbf/channel.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hbf {

// Transmit power per stream and noise variance, both linear.
class LinkBudget
{
public:
    LinkBudget(double power, double noise_variance);

    static LinkBudget from_snr_db(double snr_db, double noise_variance = 1.0);

    double power() const noexcept { return power_; }
    double noise_variance() const noexcept { return noise_variance_; }
    double snr() const noexcept { return power_ / noise_variance_; }
    double snr_db() const;

private:
    double power_;
    double noise_variance_;
};

struct RateResult
{
    double rate_bits = 0.0; // bits/s/Hz; the mean when aggregated
    double gamma = 0.0;     // power normalization used (mean when aggregated)
    std::size_t trials = 1;
    double stderr_bits = 0.0;      // sample stddev / sqrt(trials); 0 for one trial
    std::vector<double> per_trial; // filled by aggregate()
    std::vector<double> per_user;  // per-stream rates of a single realization
};

// log2 det(I + snr H H^H).
double sum_capacity(const CMatrix &h, const LinkBudget &lb);

// Digital ZF on one realization: gamma = trace((H H^H)^-1) / K,
// rate = K log2(1 + P / (gamma sigma^2)).
RateResult zf_digital_rate(const CMatrix &h, const LinkBudget &lb);

// Power normalization of hybrid ZF with effective channel
// H_e = H F_rf / sqrt(gamma_rf) and baseband F_B = H_e^-1:
// trace(H_e^-H (F_rf^H F_rf / gamma_rf) H_e^-1) / M.
double hybrid_zf_gamma(const CMatrix &h, const RfBeamformer &bf);

// Hybrid ZF on one realization; requires M = K. per_user holds the per-stream
// rates measured on the precoded effective channel.
RateResult hybrid_zf_rate(const CMatrix &h, const RfBeamformer &bf, const LinkBudget &lb);

// streams * log2(1 + P / (gamma sigma^2)).
double rate_from_gamma(int streams, double gamma, const LinkBudget &lb);

// Mean, gamma mean and standard error over per-realization results.
RateResult aggregate(std::span<const RateResult> results);

// Large-N closed forms. gamma_zf = 1 / (N - K) with K = M.
double zf_rate_analytic(int antennas, int users, const LinkBudget &lb);
double subps_rate_analytic(int chains, int antennas, const LinkBudget &lb);
double full_switch_rate_analytic(int chains, int antennas, int shifters, const LinkBudget &lb);
double sub_switch_rate_analytic(int chains, int group, int antennas, const LinkBudget &lb);

// E[V~], the mean of a unit-power Rayleigh variable zeroed below alpha:
// sqrt(pi)/2 + alpha exp(-alpha^2) - sqrt(pi)/2 erf(alpha).
double truncated_rayleigh_mean(double alpha);
double truncated_rayleigh_mean(double alpha, const std::function<double(double)> &erf_fn);

// Mean of the maximum of S i.i.d. unit-power Rayleigh variables (1 <= S <= 64).
double expected_max_rayleigh(int group);

} // namespace hbf

#endif
