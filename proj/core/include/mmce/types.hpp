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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

namespace mmce
{

using cxd = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;

/// ADC resolution in bits; empty optional means an ideal (infinite-precision) ADC.
using AdcBits = std::optional<int>;
inline constexpr std::nullopt_t adc_infinite = std::nullopt;

/// System-wide dimension / power / precision parameters.
struct SystemConfig
{
    int n_t = 16;    // transmit antennas
    int n_r = 16;    // receive antennas
    int n_rft = 4;   // transmit RF chains
    int n_rfr = 4;   // receive RF chains
    int k = 16;      // OFDM subcarriers
    int n_c = 4;     // maximal delay tap count
    int m = 64;      // channel uses within a coherence block
    double pilot_power = 1.0;
    double noise_var = 1.0;   // sigma_v^2
    double channel_var = 1.0; // sigma_h^2
    AdcBits adc_bits = adc_infinite;

    int groups() const { return m / n_rft; } // M_g

    /// Trainings needed to cover all N_r*N_t coefficients.
    int trainings() const
    {
        return static_cast<int>((static_cast<long>(n_r) * n_t + static_cast<long>(n_rfr) * n_rft - 1) /
                                (static_cast<long>(n_rfr) * n_rft));
    }

    /// Smallest M that is a multiple of N_RFt and gives M*N_RFr >= N_r*N_t.
    static int default_channel_uses(int n_t, int n_r, int n_rft, int n_rfr)
    {
        long need = (static_cast<long>(n_r) * n_t + n_rfr - 1) / n_rfr;
        long mg = (need + n_rft - 1) / n_rft;
        return static_cast<int>(mg * n_rft);
    }

    void validate() const
    {
        if (n_t < 1 || n_r < 1 || n_rft < 1 || n_rfr < 1 || k < 1 || n_c < 1 || m < 1)
            throw std::invalid_argument("SystemConfig: dimensions must be positive");
        if (n_rft > n_t || n_rfr > n_r)
            throw std::invalid_argument("SystemConfig: RF chain count exceeds antenna count");
        if (n_c > k)
            throw std::invalid_argument("SystemConfig: N_c must not exceed K");
        if (m % n_rft != 0)
            throw std::invalid_argument("SystemConfig: M must be a multiple of N_RFt");
        if (pilot_power <= 0.0)
            throw std::invalid_argument("SystemConfig: pilot power must be positive");
        if (noise_var < 0.0)
            throw std::invalid_argument("SystemConfig: noise variance must be non-negative");
        if (channel_var <= 0.0)
            throw std::invalid_argument("SystemConfig: channel variance must be positive");
        if (adc_bits && *adc_bits < 1)
            throw std::invalid_argument("SystemConfig: ADC bits must be >= 1");
    }
};

namespace rng
{

/// splitmix64 step; used to derive independent stream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic per-(label...) sub-seed, order-insensitive across work items.
inline std::uint64_t derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0)
{
    std::uint64_t s = master;
    s ^= splitmix64(a) + 0x9e3779b97f4a7c15ULL;
    s ^= splitmix64(b) + (s << 6) + (s >> 2);
    s ^= splitmix64(c) + (s << 6) + (s >> 2);
    return splitmix64(s);
}

inline std::mt19937_64 engine(std::uint64_t seed)
{
    return std::mt19937_64(seed);
}

/// One CN(0, var) sample.
inline cxd complex_normal(std::mt19937_64& g, double var = 1.0)
{
    std::normal_distribution<double> n(0.0, std::sqrt(var / 2.0));
    double re = n(g);
    double im = n(g);
    return {re, im};
}

inline cvec complex_normal_vec(std::mt19937_64& g, Eigen::Index n, double var = 1.0)
{
    cvec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = complex_normal(g, var);
    return v;
}

inline cmat complex_normal_mat(std::mt19937_64& g, Eigen::Index rows, Eigen::Index cols, double var = 1.0)
{
    cmat a(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            a(i, j) = complex_normal(g, var);
    return a;
}

} // namespace rng

} // namespace mmce
