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

#include "mmce/frontend.hpp"

#include <cmath>
#include <numbers>

namespace mmce
{

namespace
{
constexpr double two_pi = 2.0 * std::numbers::pi;

// kron(row^T, B) for a column vector `row` interpreted as a 1 x N row.
cmat kron_row(const cvec& row, const cmat& b)
{
    cmat out(b.rows(), row.size() * b.cols());
    for (Eigen::Index j = 0; j < row.size(); ++j)
        out.middleCols(j * b.cols(), b.cols()) = row[j] * b;
    return out;
}
} // namespace

PilotBook generate_pilots(const SystemConfig& cfg, std::uint64_t /*seed*/)
{
    cfg.validate();
    // sqrt(P) times DFT columns: within a group, s_i^H s_j = P N_RFt delta_ij.
    const int n = cfg.n_rft;
    const double amp = std::sqrt(cfg.pilot_power);

    PilotBook book;
    book.pilots.resize(cfg.m);
    for (int m = 0; m < cfg.m; ++m)
    {
        int col = m % n;
        cvec s(n);
        for (int row = 0; row < n; ++row)
        {
            double phase = -two_pi * row * col / n;
            s[row] = amp * cxd(std::cos(phase), std::sin(phase));
        }
        book.pilots[m] = s;
    }
    return book;
}

std::vector<AnalogCodeword> generate_analog_codewords(const SystemConfig& cfg, std::uint64_t seed)
{
    cfg.validate();
    auto g = rng::engine(seed);
    std::uniform_real_distribution<double> phase_dist(0.0, two_pi);

    auto unimodular = [&](int rows, int cols) {
        cmat a(rows, cols);
        const double norm = 1.0 / std::sqrt(static_cast<double>(rows));
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i)
            {
                double p = phase_dist(g);
                a(i, j) = norm * cxd(std::cos(p), std::sin(p));
            }
        return a;
    };

    std::vector<AnalogCodeword> words(cfg.m);
    for (int m = 0; m < cfg.m; ++m)
    {
        words[m].precoder = unimodular(cfg.n_t, cfg.n_rft);
        words[m].combiner = unimodular(cfg.n_r, cfg.n_rfr);
    }
    return words;
}

MeasurementOperator assemble_measurement(const PilotBook& pilots,
                                         const std::vector<AnalogCodeword>& codewords,
                                         const DictionarySet& dict,
                                         const std::vector<int>& support,
                                         int k)
{
    const int m_uses = static_cast<int>(codewords.size());
    if (pilots.pilots.size() != codewords.size())
        throw std::invalid_argument("assemble_measurement: pilot/codeword count mismatch");
    const Eigen::Index n_r = codewords[0].combiner.rows();
    const Eigen::Index n_t = codewords[0].precoder.rows();
    const Eigen::Index n_rfr = codewords[0].combiner.cols();
    const Eigen::Index dim = n_r * n_t;
    if (dict.rx.rows() != n_r || dict.tx.rows() != n_t)
        throw std::invalid_argument("assemble_measurement: dictionary dimension mismatch");

    MeasurementOperator op;
    op.per_use.resize(m_uses);
    op.stacked.resize(m_uses * n_rfr, dim);
    for (int m = 0; m < m_uses; ++m)
    {
        const cvec& s = pilots.at(m, k);
        if (s.size() != codewords[m].precoder.cols())
            throw std::invalid_argument("assemble_measurement: pilot length mismatch");
        cvec fs = codewords[m].precoder * s; // (s^T F^T)^T
        cmat wh = codewords[m].combiner.adjoint();
        op.per_use[m] = kron_row(fs, wh);
        op.stacked.middleRows(m * n_rfr, n_rfr) = op.per_use[m];
    }

    cmat full = op.stacked * dict.kron_projection;
    if (support.empty())
    {
        op.projected = std::move(full);
    }
    else
    {
        op.projected.resize(full.rows(), static_cast<Eigen::Index>(support.size()));
        for (std::size_t i = 0; i < support.size(); ++i)
        {
            if (support[i] < 0 || support[i] >= dim)
                throw std::invalid_argument("assemble_measurement: support index out of range");
            op.projected.col(static_cast<Eigen::Index>(i)) = full.col(support[i]);
        }
    }
    return op;
}

cmat sensing_matrix(const PilotBook& pilots,
                    const std::vector<AnalogCodeword>& codewords,
                    const DictionarySet& dict,
                    int k)
{
    const int m_uses = static_cast<int>(codewords.size());
    const Eigen::Index n_rfr = codewords[0].combiner.cols();
    const Eigen::Index dim = dict.rx.rows() * dict.tx.rows();

    cmat out(m_uses * n_rfr, dim);
    for (int m = 0; m < m_uses; ++m)
    {
        cvec fs = codewords[m].precoder * pilots.at(m, k);
        // row (s^T F^T) conj(A_t), stored as the column A_t^H F s
        cvec left = dict.tx.adjoint() * fs;
        cmat right = codewords[m].combiner.adjoint() * dict.rx;
        out.middleRows(m * n_rfr, n_rfr) = kron_row(left, right);
    }
    return out;
}

std::vector<cvec> simulate_unquantized_rx(const ChannelRealization& channel,
                                          const PilotBook& pilots,
                                          const std::vector<AnalogCodeword>& codewords,
                                          const SystemConfig& cfg,
                                          int k,
                                          std::mt19937_64& noise_rng)
{
    const cmat& h = channel.freq_responses.at(k);
    std::vector<cvec> out(codewords.size());
    for (std::size_t m = 0; m < codewords.size(); ++m)
    {
        cvec fs = codewords[m].precoder * pilots.at(static_cast<int>(m), k);
        cvec rx = h * fs;
        if (cfg.noise_var > 0.0)
            rx += rng::complex_normal_vec(noise_rng, cfg.n_r, cfg.noise_var);
        out[m] = codewords[m].combiner.adjoint() * rx;
    }
    return out;
}

int min_pilot_spacing(int num_subcarriers, double subcarrier_spacing, double coherence_bandwidth)
{
    if (num_subcarriers < 1 || subcarrier_spacing <= 0.0 || coherence_bandwidth <= 0.0)
        throw std::invalid_argument("min_pilot_spacing: inputs must be positive");
    return static_cast<int>(std::ceil(num_subcarriers * subcarrier_spacing / coherence_bandwidth));
}

} // namespace mmce
