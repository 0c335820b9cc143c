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

/// Uniform linear array described by element count and the spacing ratio s/lambda.
struct ArrayGeometry
{
    int num_elements = 1;
    double spacing_over_wavelength = 0.5;

    void validate() const
    {
        if (num_elements < 1)
            throw std::invalid_argument("ArrayGeometry: need at least one element");
        if (spacing_over_wavelength < 0.5)
            throw std::invalid_argument("ArrayGeometry: spacing must be at least half a wavelength");
    }
};

/// Per-path parameters of a sparse geometric channel.
struct PathSet
{
    std::vector<cxd> gains;
    std::vector<int> delays;         // integer taps in {0, ..., N_c-1}
    std::vector<double> aoa_cosines; // in (-0.5, 0.5)
    std::vector<double> aod_cosines; // in (-0.5, 0.5)

    int num_paths() const { return static_cast<int>(gains.size()); }
};

enum class ChannelKind
{
    SparseGeometric,
    Rayleigh
};

/// Delay-tap matrices plus per-subcarrier frequency responses of one realization.
struct ChannelRealization
{
    ChannelKind kind = ChannelKind::SparseGeometric;
    std::vector<cmat> taps;           // N_c matrices, each N_r x N_t
    std::vector<cmat> freq_responses; // K matrices, each N_r x N_t
    PathSet paths;                    // populated for SparseGeometric only
};

/// Unitary angular-domain dictionaries and their Kronecker lift.
struct DictionarySet
{
    cmat tx; // A_t, N_t x N_t
    cmat rx; // A_r, N_r x N_r
    cmat kron_projection; // Psi = conj(A_t) x A_r, (N_r N_t) square
};

/// ULA response at a directional cosine; element n is e^{-j 2 pi n theta} / sqrt(N).
cvec steering_vector(double directional_cosine, int num_elements);

ChannelRealization generate_sparse_channel(const SystemConfig& cfg, int num_paths, std::uint64_t seed);
ChannelRealization generate_rayleigh_channel(const SystemConfig& cfg, std::uint64_t seed);

/// H[k] = sum_d H_d e^{-j 2 pi k d / K}
cmat frequency_response(const std::vector<cmat>& taps, int k, int num_subcarriers);

/// Angular grid theta_p = (p - (N+1)/2) / N for p = 1..N; both dictionaries unitary.
DictionarySet build_dictionaries(int n_t, int n_r);

/// h_v[k] = vec(A_r^H H[k] A_t); satisfies Psi h_v = vec(H).
cvec virtual_channel(const cmat& h_k, const DictionarySet& dict);

} // namespace mmce
