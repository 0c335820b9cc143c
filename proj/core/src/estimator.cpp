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

#include <algorithm>
#include <cmath>

namespace mmce
{

SupportSelection omp_support(const cvec& y, const cmat& sensing, double epsilon)
{
    if (epsilon < 0.0)
        throw std::invalid_argument("omp_support: threshold must be non-negative");
    if (y.size() != sensing.rows())
        throw std::invalid_argument("omp_support: observation length mismatch");

    SupportSelection sel;
    if (y.squaredNorm() == 0.0)
        return sel;

    const Eigen::Index max_atoms = std::min(sensing.rows(), sensing.cols());
    std::vector<int> picked;
    std::vector<char> in_set(static_cast<std::size_t>(sensing.cols()), 0);
    cvec residual = y;
    cmat selected(sensing.rows(), 0);

    while (static_cast<Eigen::Index>(picked.size()) < max_atoms &&
           residual.squaredNorm() > epsilon)
    {
        // Atom most correlated with the residual; ties break toward the
        // lowest index.
        cvec corr = sensing.adjoint() * residual;
        int best = -1;
        double best_abs = -1.0;
        for (Eigen::Index j = 0; j < corr.size(); ++j)
        {
            if (in_set[static_cast<std::size_t>(j)])
                continue;
            double a = std::abs(corr[j]);
            if (a > best_abs)
            {
                best_abs = a;
                best = static_cast<int>(j);
            }
        }
        if (best < 0 || best_abs == 0.0)
            break;

        picked.push_back(best);
        in_set[static_cast<std::size_t>(best)] = 1;
        selected.conservativeResize(Eigen::NoChange, selected.cols() + 1);
        selected.col(selected.cols() - 1) = sensing.col(best);

        cvec coeff = selected.colPivHouseholderQr().solve(y);
        residual = y - selected * coeff;
    }

    sel.indices = picked;
    std::sort(sel.indices.begin(), sel.indices.end());
    return sel;
}

double default_threshold(const EffectiveNoiseStats& stats)
{
    return stats.total_var;
}

DigitalCombiner lmmse_combiner(const cmat& omega, double eta_b, double noise_var_eff,
                               double channel_var)
{
    if (channel_var <= 0.0)
        throw std::invalid_argument("lmmse_combiner: channel variance must be positive");
    const double gain = 1.0 - eta_b;
    if (gain <= 0.0)
        throw std::invalid_argument("lmmse_combiner: Bussgang gain must be positive");

    const double reg = noise_var_eff / (gain * gain * channel_var);
    cmat gram = omega.adjoint() * omega;
    gram.diagonal().array() += reg;

    Eigen::LLT<cmat> llt(gram);
    if (llt.info() != Eigen::Success)
    {
        if (noise_var_eff == 0.0)
            throw std::runtime_error("lmmse_combiner: rank-deficient operator with zero noise");
        throw std::runtime_error("lmmse_combiner: factorization failed");
    }

    DigitalCombiner w;
    w.regularization = reg;
    // W_D^H = G^-1 Omega^H / (1-eta); stored as W_D.
    w.matrix = (llt.solve(omega.adjoint()) / gain).adjoint();
    return w;
}

EstimationResult estimate_channel(const cvec& y,
                                  const DigitalCombiner& combiner,
                                  const SupportSelection& support,
                                  const cmat& kron_projection)
{
    if (combiner.matrix.rows() != y.size())
        throw std::invalid_argument("estimate_channel: combiner/observation mismatch");
    if (combiner.matrix.cols() != support.size())
        throw std::invalid_argument("estimate_channel: combiner/support mismatch");

    EstimationResult res;
    res.support = support;
    res.h_v_nz_hat = combiner.matrix.adjoint() * y;

    cvec embedded = cvec::Zero(kron_projection.cols());
    for (int i = 0; i < support.size(); ++i)
        embedded[support.indices[static_cast<std::size_t>(i)]] = res.h_v_nz_hat[i];
    res.h_hat = kron_projection * embedded;
    return res;
}

double analytic_mse(const cmat& w_d, const cmat& omega, double eta_b, double channel_var,
                    double noise_var_eff, int support_size)
{
    const double gain = 1.0 - eta_b;
    double quad = (w_d.adjoint() * omega * omega.adjoint() * w_d).trace().real();
    double cross = 2.0 * (omega.cwiseProduct(w_d.conjugate())).sum().real();
    return gain * channel_var * (gain * quad - cross) + channel_var * support_size +
           noise_var_eff * w_d.squaredNorm();
}

cmat mse_gradient(const cmat& w_d, const cmat& omega, double eta_b, double channel_var,
                  double noise_var_eff)
{
    const double gain = 1.0 - eta_b;
    return gain * gain * channel_var * (omega * (omega.adjoint() * w_d)) -
           gain * channel_var * omega + noise_var_eff * w_d;
}

BaselineEstimates conventional_baselines(const cvec& y, const cmat& sensing, double noise_var,
                                         double channel_var)
{
    BaselineEstimates out;

    Eigen::ColPivHouseholderQR<cmat> qr(sensing);
    if (qr.rank() < sensing.cols())
        throw std::runtime_error("conventional_baselines: rank-deficient sensing matrix for LS");
    out.ls = qr.solve(y);

    DigitalCombiner w = lmmse_combiner(sensing, 0.0, noise_var, channel_var);
    out.unaware_lmmse = w.matrix.adjoint() * y;
    return out;
}

} // namespace mmce
