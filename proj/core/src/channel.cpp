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

#include "mmce/channel.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>

namespace mmce
{

namespace
{
constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<cmat> taps_to_freq(const std::vector<cmat>& taps, int num_subcarriers)
{
    std::vector<cmat> freq(num_subcarriers);
    for (int k = 0; k < num_subcarriers; ++k)
        freq[k] = frequency_response(taps, k, num_subcarriers);
    return freq;
}
} // namespace

cvec steering_vector(double directional_cosine, int num_elements)
{
    if (num_elements < 1)
        throw std::invalid_argument("steering_vector: num_elements must be positive");
    cvec a(num_elements);
    const double norm = 1.0 / std::sqrt(static_cast<double>(num_elements));
    for (int n = 0; n < num_elements; ++n)
    {
        double phase = -two_pi * n * directional_cosine;
        a[n] = norm * cxd(std::cos(phase), std::sin(phase));
    }
    return a;
}

ChannelRealization generate_sparse_channel(const SystemConfig& cfg, int num_paths, std::uint64_t seed)
{
    cfg.validate();
    if (num_paths < 1)
        throw std::invalid_argument("generate_sparse_channel: need at least one path");
    if (static_cast<long>(num_paths) > static_cast<long>(cfg.n_r) * cfg.n_t)
        throw std::invalid_argument("generate_sparse_channel: more paths than channel coefficients");

    auto g = rng::engine(seed);
    std::uniform_int_distribution<int> delay_dist(0, cfg.n_c - 1);
    std::uniform_real_distribution<double> cosine_dist(-0.5, 0.5);

    ChannelRealization ch;
    ch.kind = ChannelKind::SparseGeometric;
    ch.paths.gains.resize(num_paths);
    ch.paths.delays.resize(num_paths);
    ch.paths.aoa_cosines.resize(num_paths);
    ch.paths.aod_cosines.resize(num_paths);

    // alpha_l ~ CN(0, sigma_h^2 N_r N_t / N_p) gives E{h_v h_v^H} = sigma_h^2 I
    // over path draws.
    const double gain_var = cfg.channel_var * cfg.n_r * cfg.n_t / num_paths;
    for (int l = 0; l < num_paths; ++l)
    {
        ch.paths.gains[l] = rng::complex_normal(g, gain_var);
        ch.paths.delays[l] = delay_dist(g);
        ch.paths.aoa_cosines[l] = cosine_dist(g);
        ch.paths.aod_cosines[l] = cosine_dist(g);
    }

    ch.taps.assign(cfg.n_c, cmat::Zero(cfg.n_r, cfg.n_t));
    for (int l = 0; l < num_paths; ++l)
    {
        cvec ar = steering_vector(ch.paths.aoa_cosines[l], cfg.n_r);
        cvec at = steering_vector(ch.paths.aod_cosines[l], cfg.n_t);
        ch.taps[ch.paths.delays[l]] += ch.paths.gains[l] * (ar * at.adjoint());
    }
    ch.freq_responses = taps_to_freq(ch.taps, cfg.k);
    return ch;
}

ChannelRealization generate_rayleigh_channel(const SystemConfig& cfg, std::uint64_t seed)
{
    cfg.validate();
    auto g = rng::engine(seed);

    ChannelRealization ch;
    ch.kind = ChannelKind::Rayleigh;
    ch.taps.assign(cfg.n_c, cmat::Zero(cfg.n_r, cfg.n_t));
    ch.taps[0] = rng::complex_normal_mat(g, cfg.n_r, cfg.n_t, cfg.channel_var);
    // Single tap makes H[k] identical for all k.
    ch.freq_responses.assign(cfg.k, ch.taps[0]);
    return ch;
}

cmat frequency_response(const std::vector<cmat>& taps, int k, int num_subcarriers)
{
    if (k < 0 || k >= num_subcarriers)
        throw std::out_of_range("frequency_response: subcarrier index out of range");
    if (taps.empty())
        throw std::invalid_argument("frequency_response: no taps");
    cmat h = cmat::Zero(taps[0].rows(), taps[0].cols());
    for (std::size_t d = 0; d < taps.size(); ++d)
    {
        double phase = -two_pi * k * static_cast<double>(d) / num_subcarriers;
        h += taps[d] * cxd(std::cos(phase), std::sin(phase));
    }
    return h;
}

DictionarySet build_dictionaries(int n_t, int n_r)
{
    if (n_t < 1 || n_r < 1)
        throw std::invalid_argument("build_dictionaries: dimensions must be positive");

    auto build = [](int n) {
        cmat a(n, n);
        for (int p = 1; p <= n; ++p)
        {
            double theta = (p - 0.5 * (n + 1)) / n;
            a.col(p - 1) = steering_vector(theta, n);
        }
        return a;
    };

    DictionarySet d;
    d.tx = build(n_t);
    d.rx = build(n_r);
    d.kron_projection = Eigen::kroneckerProduct(d.tx.conjugate(), d.rx).eval();
    return d;
}

cvec virtual_channel(const cmat& h_k, const DictionarySet& dict)
{
    if (h_k.rows() != dict.rx.rows() || h_k.cols() != dict.tx.rows())
        throw std::invalid_argument("virtual_channel: dimension mismatch");
    cmat hv = dict.rx.adjoint() * h_k * dict.tx;
    return Eigen::Map<const cvec>(hv.data(), hv.size());
}

} // namespace mmce
