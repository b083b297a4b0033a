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

#include "hbf/beamform.hpp"
#include "hbf/channel.hpp"
#include "hbf/experiments.hpp"
#include "hbf/rates.hpp"

#include <benchmark/benchmark.h>

using namespace hbf;

static void BM_Svd(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    SeededRng rng(1, 0);
    const CMatrix h = iid_rayleigh(4, n, rng).h;
    for (auto _ : state)
        benchmark::DoNotOptimize(svd(h));
}
BENCHMARK(BM_Svd)->Arg(64)->Arg(128)->Arg(512);

static void BM_ChannelDraw(benchmark::State &state)
{
    const ChannelModel models[] = {IidRayleigh{}, CorrelatedRayleigh{0.7}, SparseGeometric{2, 0.5}};
    const ChannelSampler sampler(models[state.range(0)], 4, 512);
    std::uint64_t t = 0;
    for (auto _ : state)
    {
        SeededRng rng(1, t++);
        benchmark::DoNotOptimize(sampler.draw(rng));
    }
    state.SetLabel(channel_name(sampler.model()));
}
BENCHMARK(BM_ChannelDraw)->DenseRange(0, 2);

static void BM_Beamformer(benchmark::State &state)
{
    SeededRng rng(1, 0);
    const CMatrix v = svd(iid_rayleigh(4, 512, rng).h).v;
    const BeamformerSpec specs[] = {{Architecture::SubPs, 0, 1},
                                    {Architecture::FullSwitch, 64, 1},
                                    {Architecture::SubSwitch, 64, 2}};
    const BeamformerSpec spec = specs[state.range(0)];
    for (auto _ : state)
        benchmark::DoNotOptimize(build_beamformer(v, 4, spec));
    state.SetLabel(architecture_name(spec.architecture));
}
BENCHMARK(BM_Beamformer)->DenseRange(0, 2);

// One Monte-Carlo trial of the N = 512 phase-shifter sweep: draw, SVD, and
// the power normalization of every column.
static void BM_Trial(benchmark::State &state)
{
    const LinkBudget lb = LinkBudget::from_snr_db(10.0);
    std::uint64_t t = 0;
    for (auto _ : state)
    {
        SeededRng rng(1, t++);
        const CMatrix h = iid_rayleigh(4, 512, rng).h;
        const CMatrix v = svd(h).v;
        double acc = hybrid_zf_rate(h, subconnected_ps(v, 4), lb).rate_bits;
        for (int l : {16, 32, 64, 96})
            acc += hybrid_zf_gamma(h, ps_full_switch(v, 4, l));
        for (int s : {2, 4, 8})
            acc += hybrid_zf_gamma(h, ps_sub_switch(v, 4, 128 / s, s));
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_Trial);

static void BM_Sweep(benchmark::State &state)
{
    SweepConfig cfg = default_config(Scenario::PhaseShifters);
    cfg.trials = 100;
    cfg.threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_sweep(cfg));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_ExpectedMax(benchmark::State &state)
{
    const int s = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(expected_max_rayleigh(s));
}
BENCHMARK(BM_ExpectedMax)->Arg(4)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
