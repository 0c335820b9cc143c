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

#include "mmce/channel.hpp"
#include "mmce/types.hpp"

#include <vector>

namespace mmce
{

/// Orthogonal pilots; within each group of N_RFt consecutive channel uses the
/// Gram matrix is exactly P * N_RFt * I.
struct PilotBook
{
    // pilots[m] is the N_RFt pilot vector of channel use m; constant across
    // subcarriers (frequency-flat training).
    std::vector<cvec> pilots;

    const cvec& at(int m, int /*k*/) const { return pilots.at(m); }
};

/// One channel use of the phase-shifter network: constant-modulus entries,
/// 1/sqrt(N_t) for the precoder and 1/sqrt(N_r) for the combiner.
struct AnalogCodeword
{
    cmat precoder; // F_Am, N_t x N_RFt
    cmat combiner; // W_Am, N_r x N_RFr
};

/// Stacked sensing operator for one subcarrier.
struct MeasurementOperator
{
    std::vector<cmat> per_use; // Phi_m[k], each N_RFr x (N_r N_t)
    cmat stacked;              // Phi[k], (M N_RFr) x (N_r N_t)
    cmat projected;            // Omega[k] = Phi[k] Psi P_v, (M N_RFr) x N_v
};

PilotBook generate_pilots(const SystemConfig& cfg, std::uint64_t seed);

std::vector<AnalogCodeword> generate_analog_codewords(const SystemConfig& cfg, std::uint64_t seed);

/// Phi_m[k] = (s_m^T F_Am^T) kron W_Am^H, stacked over m; Omega restricted to
/// the selected virtual-domain columns (empty support means keep all columns).
MeasurementOperator assemble_measurement(const PilotBook& pilots,
                                         const std::vector<AnalogCodeword>& codewords,
                                         const DictionarySet& dict,
                                         const std::vector<int>& support,
                                         int k);

/// Sensing matrix Phi[k] * Psi without materializing Psi or Phi: row block m is
/// (s_m^T F_Am^T conj(A_t)) kron (W_Am^H A_r).
cmat sensing_matrix(const PilotBook& pilots,
                    const std::vector<AnalogCodeword>& codewords,
                    const DictionarySet& dict,
                    int k);

/// Pre-ADC receive path for one subcarrier: entries m give
/// W_Am^H (H[k] F_Am s_m[k] + v_m[k]) with v_m[k] ~ CN(0, sigma_v^2 I).
std::vector<cvec> simulate_unquantized_rx(const ChannelRealization& channel,
                                          const PilotBook& pilots,
                                          const std::vector<AnalogCodeword>& codewords,
                                          const SystemConfig& cfg,
                                          int k,
                                          std::mt19937_64& noise_rng);

/// Minimum pilot spacing ceil(K * delta_f / coherence_bw).
int min_pilot_spacing(int num_subcarriers, double subcarrier_spacing, double coherence_bandwidth);

} // namespace mmce
