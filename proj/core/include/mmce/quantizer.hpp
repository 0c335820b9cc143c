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

#pragma once

#include "mmce/types.hpp"

#include <vector>

namespace mmce
{

/// Minimum-MSE scalar quantizer for a unit-variance real Gaussian input.
struct GaussianCodebook
{
    int bits = 0;
    std::vector<double> levels;     // 2^b reconstruction levels, increasing
    std::vector<double> thresholds; // 2^b - 1 decision boundaries, increasing

    double map(double x) const; // nearest-level lookup
};

enum class AgcMode
{
    AnalyticVariance,
    EmpiricalVariance
};

/// Per-RF-chain ADC model: bit depth, distortion factor, and the scalar codebook.
struct QuantizerModel
{
    AdcBits bits = adc_infinite;
    double distortion = 0.0; // eta_b
    GaussianCodebook codebook;
    AgcMode agc_mode = AgcMode::AnalyticVariance;

    bool is_infinite() const { return !bits.has_value(); }

    static QuantizerModel make(AdcBits bits, AgcMode agc = AgcMode::AnalyticVariance);
};

/// Second-order statistics of the effective noise e_hat after linearization.
struct EffectiveNoiseStats
{
    double per_element_var = 0.0; // sigma_ehat^2
    double total_var = 0.0;       // M * N_RFr * sigma_ehat^2
};

/// eta_b: tabulated for b <= 5, closed-form approximation (pi sqrt(3)/2) 4^-b
/// beyond, and 0 for an infinite-precision ADC.
double distortion_factor(AdcBits bits);

/// Lloyd-Max codebook for N(0,1) with 2^b levels, 1 <= b <= 12.
GaussianCodebook build_codebook(int bits);

/// Component-wise quantization with AGC: each real dimension is scaled to unit
/// variance, snapped to its nearest level, and scaled back.
cvec quantize(const cvec& signal, const QuantizerModel& model, double input_variance_per_real_dim);

/// Bussgang gain (1 - eta_b) and the effective-noise variance
/// sigma_ehat^2 = (1 - eta_b)(sigma_v^2 + eta_b sigma_h^2 P N_RFt).
struct BussgangModel
{
    double gain = 1.0;
    EffectiveNoiseStats stats;
};

BussgangModel bussgang_linearize(const QuantizerModel& model, const SystemConfig& cfg);

/// Pre-ADC variance per real dimension the AGC is matched to.
inline double agc_input_variance(const SystemConfig& cfg)
{
    return 0.5 * (cfg.channel_var * cfg.pilot_power * cfg.n_rft + cfg.noise_var);
}

} // namespace mmce
