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

#include "mmce/quantizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace mmce
{

namespace
{

double gauss_pdf(double x)
{
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double gauss_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// Conditional mean of N(0,1) on (lo, hi); +-inf endpoints allowed.
double truncated_mean(double lo, double hi)
{
    double p_lo = std::isinf(lo) ? 0.0 : gauss_cdf(lo);
    double p_hi = std::isinf(hi) ? 1.0 : gauss_cdf(hi);
    double f_lo = std::isinf(lo) ? 0.0 : gauss_pdf(lo);
    double f_hi = std::isinf(hi) ? 0.0 : gauss_pdf(hi);
    double mass = p_hi - p_lo;
    if (mass <= 0.0)
        return 0.5 * (lo + hi);
    return (f_lo - f_hi) / mass;
}

// Distortion factors from the b-bit minimum-MSE Gaussian quantizer.
constexpr std::array<double, 5> table_eta = {0.3634, 0.1175, 0.03454, 0.009497, 0.002499};

} // namespace

double GaussianCodebook::map(double x) const
{
    auto it = std::upper_bound(thresholds.begin(), thresholds.end(), x);
    return levels[static_cast<std::size_t>(it - thresholds.begin())];
}

double distortion_factor(AdcBits bits)
{
    if (!bits)
        return 0.0;
    int b = *bits;
    if (b < 1)
        throw std::invalid_argument("distortion_factor: bits must be >= 1");
    if (b <= 5)
        return table_eta[static_cast<std::size_t>(b - 1)];
    return 0.5 * std::numbers::pi * std::sqrt(3.0) * std::exp2(-2.0 * b);
}

GaussianCodebook build_codebook(int bits)
{
    if (bits < 1 || bits > 12)
        throw std::invalid_argument("build_codebook: bits must be in [1, 12]");
    const int n = 1 << bits;

    GaussianCodebook cb;
    cb.bits = bits;
    cb.levels.resize(n);
    cb.thresholds.assign(n - 1, 0.0);

    // Uniform initial levels on [-4, 4]; Lloyd iteration to fixed point.
    for (int i = 0; i < n; ++i)
        cb.levels[i] = -4.0 + 8.0 * (i + 0.5) / n;

    constexpr int max_iter = 100000;
    for (int iter = 0; iter < max_iter; ++iter)
    {
        for (int i = 0; i + 1 < n; ++i)
            cb.thresholds[i] = 0.5 * (cb.levels[i] + cb.levels[i + 1]);

        double max_change = 0.0;
        for (int i = 0; i < n; ++i)
        {
            double lo = (i == 0) ? -std::numeric_limits<double>::infinity() : cb.thresholds[i - 1];
            double hi = (i == n - 1) ? std::numeric_limits<double>::infinity() : cb.thresholds[i];
            double next = truncated_mean(lo, hi);
            max_change = std::max(max_change, std::abs(next - cb.levels[i]));
            cb.levels[i] = next;
        }
        if (max_change < 1e-10)
        {
            // Enforce exact odd symmetry before returning.
            for (int i = 0; i < n / 2; ++i)
            {
                double v = 0.5 * (cb.levels[n - 1 - i] - cb.levels[i]);
                cb.levels[i] = -v;
                cb.levels[n - 1 - i] = v;
            }
            for (int i = 0; i + 1 < n; ++i)
                cb.thresholds[i] = 0.5 * (cb.levels[i] + cb.levels[i + 1]);
            return cb;
        }
    }
    throw std::runtime_error("build_codebook: Lloyd iteration failed to converge");
}

QuantizerModel QuantizerModel::make(AdcBits bits, AgcMode agc)
{
    QuantizerModel m;
    m.bits = bits;
    m.distortion = distortion_factor(bits);
    m.agc_mode = agc;
    if (bits)
        m.codebook = build_codebook(*bits);
    return m;
}

cvec quantize(const cvec& signal, const QuantizerModel& model, double input_variance_per_real_dim)
{
    if (model.is_infinite())
        return signal;
    if (input_variance_per_real_dim <= 0.0)
        throw std::invalid_argument("quantize: input variance must be positive");

    const double scale = std::sqrt(input_variance_per_real_dim);
    cvec out(signal.size());
    for (Eigen::Index i = 0; i < signal.size(); ++i)
    {
        double re = scale * model.codebook.map(signal[i].real() / scale);
        double im = scale * model.codebook.map(signal[i].imag() / scale);
        out[i] = cxd(re, im);
    }
    return out;
}

BussgangModel bussgang_linearize(const QuantizerModel& model, const SystemConfig& cfg)
{
    const double eta = model.distortion;
    BussgangModel bm;
    bm.gain = 1.0 - eta;
    bm.stats.per_element_var =
        (1.0 - eta) * (cfg.noise_var + eta * cfg.channel_var * cfg.pilot_power * cfg.n_rft);
    bm.stats.total_var = static_cast<double>(cfg.m) * cfg.n_rfr * bm.stats.per_element_var;
    return bm;
}

} // namespace mmce
