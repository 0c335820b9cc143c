// SPDX-License-Identifier: Apache-2.0
//
// mmce - wideband mmWave hybrid MIMO channel estimation with low-precision ADCs
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

#include "mmce/estimator.hpp"
#include "mmce/frontend.hpp"
#include "mmce/quantizer.hpp"

#include <benchmark/benchmark.h>

using namespace mmce;

namespace
{

SystemConfig bench_config(int antennas)
{
    SystemConfig cfg;
    cfg.n_t = antennas;
    cfg.n_r = antennas;
    cfg.n_rft = 4;
    cfg.n_rfr = 4;
    cfg.k = 16;
    cfg.n_c = 4;
    cfg.m = SystemConfig::default_channel_uses(antennas, antennas, 4, 4);
    return cfg;
}

void bm_steering_vector(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    double theta = 0.1234;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(steering_vector(theta, n));
        theta += 1e-6;
    }
}
BENCHMARK(bm_steering_vector)->Arg(16)->Arg(64)->Arg(256);

void bm_sparse_channel(benchmark::State& state)
{
    SystemConfig cfg = bench_config(static_cast<int>(state.range(0)));
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_sparse_channel(cfg, 3, ++seed));
}
BENCHMARK(bm_sparse_channel)->Arg(16)->Arg(64);

void bm_sensing_matrix(benchmark::State& state)
{
    SystemConfig cfg = bench_config(static_cast<int>(state.range(0)));
    auto dict = build_dictionaries(cfg.n_t, cfg.n_r);
    auto pilots = generate_pilots(cfg, 0);
    auto words = generate_analog_codewords(cfg, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(sensing_matrix(pilots, words, dict, 0));
}
BENCHMARK(bm_sensing_matrix)->Arg(8)->Arg(16);

void bm_quantize(benchmark::State& state)
{
    auto model = QuantizerModel::make(static_cast<int>(state.range(0)));
    auto g = rng::engine(5);
    cvec x = rng::complex_normal_vec(g, 4096);
    for (auto _ : state)
        benchmark::DoNotOptimize(quantize(x, model, 1.0));
}
BENCHMARK(bm_quantize)->Arg(1)->Arg(3)->Arg(5);

void bm_omp_support(benchmark::State& state)
{
    SystemConfig cfg = bench_config(8);
    auto dict = build_dictionaries(cfg.n_t, cfg.n_r);
    auto pilots = generate_pilots(cfg, 0);
    auto words = generate_analog_codewords(cfg, 2);
    cmat sensing = sensing_matrix(pilots, words, dict, 0);

    auto g = rng::engine(7);
    cvec h_v = cvec::Zero(sensing.cols());
    h_v[3] = rng::complex_normal(g);
    h_v[17] = rng::complex_normal(g);
    h_v[40] = rng::complex_normal(g);
    cvec y = sensing * h_v + rng::complex_normal_vec(g, sensing.rows(), 1e-4);

    for (auto _ : state)
        benchmark::DoNotOptimize(omp_support(y, sensing, 1e-2));
}
BENCHMARK(bm_omp_support);

void bm_lmmse_combiner(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    auto g = rng::engine(9);
    cmat omega = rng::complex_normal_mat(g, n, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(lmmse_combiner(omega, 0.1175, 0.5, 1.0));
}
BENCHMARK(bm_lmmse_combiner)->Arg(64)->Arg(256);

} // namespace

BENCHMARK_MAIN();
