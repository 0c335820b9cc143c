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
#include "mmce/quantizer.hpp"
#include "mmce/types.hpp"

#include <vector>

namespace mmce
{

/// Sorted virtual-domain support indices (column selection P_v).
struct SupportSelection
{
    std::vector<int> indices; // strictly increasing, 0-based

    int size() const { return static_cast<int>(indices.size()); }

    static SupportSelection full(int dim)
    {
        SupportSelection s;
        s.indices.resize(dim);
        for (int i = 0; i < dim; ++i)
            s.indices[i] = i;
        return s;
    }
};

/// LMMSE digital combiner W_D (M N_RFr x N_v) plus its regularization scalar.
struct DigitalCombiner
{
    cmat matrix;
    double regularization = 0.0; // sigma_ehat^2 / ((1-eta_b)^2 sigma_h^2)
};

struct EstimationResult
{
    SupportSelection support;
    cvec h_v_nz_hat; // estimated non-zero virtual coefficients
    cvec h_hat;      // antenna-domain estimate, length N_r N_t
};

/// Greedy OMP on the given sensing matrix; stops when the squared residual
/// norm drops to `epsilon` or the support reaches the observation count.
SupportSelection omp_support(const cvec& y, const cmat& sensing, double epsilon);

/// OMP stopping threshold E{e_hat^H e_hat} = M N_RFr sigma_ehat^2.
double default_threshold(const EffectiveNoiseStats& stats);

/// W_D* = Omega/(1-eta_b) (Omega^H Omega + sigma_ehat^2/((1-eta_b)^2 sigma_h^2) I)^-1
DigitalCombiner lmmse_combiner(const cmat& omega, double eta_b, double noise_var_eff, double channel_var);

/// h_v_nz = W_D^H y; antenna-domain estimate Psi * embed(h_v_nz) with zeros
/// off support.
EstimationResult estimate_channel(const cvec& y,
                                  const DigitalCombiner& combiner,
                                  const SupportSelection& support,
                                  const cmat& kron_projection);

/// Closed-form MSE of the linearized model for a given combiner.
double analytic_mse(const cmat& w_d, const cmat& omega, double eta_b, double channel_var,
                    double noise_var_eff, int support_size);

/// Wirtinger derivative of the MSE with respect to conj(W_D).
cmat mse_gradient(const cmat& w_d, const cmat& omega, double eta_b, double channel_var,
                  double noise_var_eff);

/// Quantization-ignorant comparison estimators.
struct BaselineEstimates
{
    cvec ls;            // pseudo-inverse solution
    cvec unaware_lmmse; // LMMSE with eta_b = 0, noise variance sigma_v^2
};

BaselineEstimates conventional_baselines(const cvec& y, const cmat& sensing, double noise_var,
                                         double channel_var);

} // namespace mmce
