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

#include "mmce/harness.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <numbers>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mmce
{

std::string to_string(EstimatorKind kind)
{
    switch (kind)
    {
    case EstimatorKind::ProposedLMMSE: return "proposed_lmmse";
    case EstimatorKind::ProposedOmpLmmse: return "proposed_omp_lmmse";
    case EstimatorKind::LS: return "ls";
    case EstimatorKind::UnawareLMMSE: return "unaware_lmmse";
    }
    throw std::logic_error("unknown estimator kind");
}

EstimatorKind estimator_from_string(const std::string& name)
{
    if (name == "proposed_lmmse") return EstimatorKind::ProposedLMMSE;
    if (name == "proposed_omp_lmmse") return EstimatorKind::ProposedOmpLmmse;
    if (name == "ls") return EstimatorKind::LS;
    if (name == "unaware_lmmse") return EstimatorKind::UnawareLMMSE;
    throw std::invalid_argument("unknown estimator: " + name);
}

std::string bits_to_string(AdcBits bits)
{
    return bits ? std::to_string(*bits) : std::string("inf");
}

AdcBits bits_from_string(const std::string& text)
{
    if (text == "inf" || text == "Inf" || text == "infinite")
        return adc_infinite;
    int b = std::stoi(text);
    if (b < 1)
        throw std::invalid_argument("ADC bits must be >= 1");
    return b;
}

void ExperimentSpec::validate() const
{
    system.validate();
    if (trials < 1)
        throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
    if (snr_grid_db.empty() || bits_grid.empty() || estimators.empty() || subcarriers.empty())
        throw std::invalid_argument("ExperimentSpec: grids must be non-empty");
    if (channel_kind == ChannelKind::SparseGeometric && num_paths < 1)
        throw std::invalid_argument("ExperimentSpec: num_paths must be >= 1");
    for (int k : subcarriers)
        if (k < 0 || k >= system.k)
            throw std::invalid_argument("ExperimentSpec: subcarrier index out of range");
}

double nmse(const cvec& estimate, const cvec& truth)
{
    double denom = truth.squaredNorm();
    if (denom == 0.0)
        throw std::invalid_argument("nmse: truth vector is zero");
    return (estimate - truth).squaredNorm() / denom;
}

double noise_var_for_snr_db(const SystemConfig& cfg, double snr_db)
{
    double snr_lin = std::pow(10.0, snr_db / 10.0);
    return cfg.channel_var * cfg.pilot_power * cfg.n_rft / snr_lin;
}

namespace
{

struct TrialAccumulator
{
    std::vector<double> samples;
    int failures = 0;
};

ChannelRealization draw_channel(const SystemConfig& cfg, ChannelKind kind, int num_paths,
                                std::uint64_t seed)
{
    if (kind == ChannelKind::SparseGeometric)
        return generate_sparse_channel(cfg, num_paths, seed);
    return generate_rayleigh_channel(cfg, seed);
}

// One grid point: run all trials for every requested estimator on shared draws.
void run_grid_point(const ExperimentSpec& spec, const SystemConfig& cfg,
                    const DictionarySet& dict, const QuantizerModel& quant,
                    std::size_t snr_idx, std::size_t bits_idx,
                    std::vector<TrialAccumulator>& acc)
{
    const BussgangModel bm = bussgang_linearize(quant, cfg);
    const double agc_var = agc_input_variance(cfg);
    const PilotBook pilots = generate_pilots(cfg, 0);

    for (int trial = 0; trial < spec.trials; ++trial)
    {
        std::uint64_t trial_seed =
            rng::derive(spec.master_seed, static_cast<std::uint64_t>(trial), snr_idx, bits_idx);
        auto channel = draw_channel(cfg, spec.channel_kind, spec.num_paths,
                                    rng::derive(trial_seed, 1));
        auto codewords = generate_analog_codewords(cfg, rng::derive(trial_seed, 2));
        auto noise_rng = rng::engine(rng::derive(trial_seed, 3));

        // Pilots and codewords are frequency-flat, so the sensing matrix is
        // shared across subcarriers; factor the full-support normal equations
        // once per trial.
        cmat sensing = sensing_matrix(pilots, codewords, dict, 0);

        bool needs_gram = false, needs_ls = false;
        for (auto e : spec.estimators)
            if (e == EstimatorKind::ProposedLMMSE || e == EstimatorKind::UnawareLMMSE)
                needs_gram = true;
            else if (e == EstimatorKind::LS)
                needs_ls = true;

        cmat gram;
        Eigen::LLT<cmat> llt_proposed, llt_unaware;
        if (needs_gram)
        {
            gram = sensing.adjoint() * sensing;
            for (auto e : spec.estimators)
            {
                if (e == EstimatorKind::ProposedLMMSE)
                {
                    cmat g = gram;
                    g.diagonal().array() +=
                        bm.stats.per_element_var / (bm.gain * bm.gain * cfg.channel_var);
                    llt_proposed.compute(g);
                }
                else if (e == EstimatorKind::UnawareLMMSE)
                {
                    cmat g = gram;
                    g.diagonal().array() += cfg.noise_var / cfg.channel_var;
                    llt_unaware.compute(g);
                }
            }
        }
        Eigen::ColPivHouseholderQR<cmat> qr_ls;
        if (needs_ls)
            qr_ls.compute(sensing);

        std::vector<std::vector<double>> per_estimator(spec.estimators.size());
        std::vector<char> failed(spec.estimators.size(), 0);

        for (int k : spec.subcarriers)
        {
            const cmat& h_k = channel.freq_responses.at(static_cast<std::size_t>(k));
            cvec truth = Eigen::Map<const cvec>(h_k.data(), h_k.size());
            cvec h_v = virtual_channel(h_k, dict);

            cvec y;
            if (spec.mode == SimMode::Nonlinear)
            {
                auto blocks = simulate_unquantized_rx(channel, pilots, codewords, cfg, k, noise_rng);
                cvec stacked(cfg.m * cfg.n_rfr);
                for (int m = 0; m < cfg.m; ++m)
                    stacked.segment(m * cfg.n_rfr, cfg.n_rfr) = blocks[static_cast<std::size_t>(m)];
                y = quantize(stacked, quant, agc_var);
            }
            else
            {
                y = bm.gain * (sensing * h_v);
                if (bm.stats.per_element_var > 0.0)
                    y += rng::complex_normal_vec(noise_rng, cfg.m * cfg.n_rfr,
                                                 bm.stats.per_element_var);
            }

            for (std::size_t e = 0; e < spec.estimators.size(); ++e)
            {
                if (failed[e])
                    continue;
                try
                {
                    cvec h_hat;
                    switch (spec.estimators[e])
                    {
                    case EstimatorKind::ProposedLMMSE:
                    {
                        if (llt_proposed.info() != Eigen::Success)
                            throw std::runtime_error("LMMSE factorization failed");
                        cvec h_v_hat = llt_proposed.solve(sensing.adjoint() * y) / bm.gain;
                        h_hat = dict.kron_projection * h_v_hat;
                        break;
                    }
                    case EstimatorKind::ProposedOmpLmmse:
                    {
                        double eps = default_threshold(bm.stats);
                        auto support = omp_support(y, bm.gain * sensing, eps);
                        if (support.size() == 0)
                        {
                            h_hat = cvec::Zero(truth.size());
                            break;
                        }
                        cmat omega(sensing.rows(), support.size());
                        for (int i = 0; i < support.size(); ++i)
                            omega.col(i) = sensing.col(support.indices[static_cast<std::size_t>(i)]);
                        auto w = lmmse_combiner(omega, quant.distortion,
                                                bm.stats.per_element_var, cfg.channel_var);
                        h_hat = estimate_channel(y, w, support, dict.kron_projection).h_hat;
                        break;
                    }
                    case EstimatorKind::UnawareLMMSE:
                    {
                        if (llt_unaware.info() != Eigen::Success)
                            throw std::runtime_error("LMMSE factorization failed");
                        cvec h_v_hat = llt_unaware.solve(sensing.adjoint() * y);
                        h_hat = dict.kron_projection * h_v_hat;
                        break;
                    }
                    case EstimatorKind::LS:
                    {
                        if (qr_ls.rank() < sensing.cols())
                            throw std::runtime_error("rank-deficient sensing matrix");
                        cvec h_v_hat = qr_ls.solve(y);
                        h_hat = dict.kron_projection * h_v_hat;
                        break;
                    }
                    }
                    per_estimator[e].push_back(nmse(h_hat, truth));
                }
                catch (const std::exception&)
                {
                    failed[e] = 1;
                }
            }
        }

        for (std::size_t e = 0; e < spec.estimators.size(); ++e)
        {
            if (failed[e] || per_estimator[e].empty())
            {
                acc[e].failures += 1;
                continue;
            }
            double mean = 0.0;
            for (double v : per_estimator[e])
                mean += v;
            acc[e].samples.push_back(mean / per_estimator[e].size());
        }
    }
}

} // namespace

std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec)
{
    spec.validate();
    const DictionarySet dict = build_dictionaries(spec.system.n_t, spec.system.n_r);

    std::vector<ResultRecord> records;
    for (std::size_t bi = 0; bi < spec.bits_grid.size(); ++bi)
    {
        const QuantizerModel quant = QuantizerModel::make(spec.bits_grid[bi]);
        for (std::size_t si = 0; si < spec.snr_grid_db.size(); ++si)
        {
            SystemConfig cfg = spec.system;
            cfg.adc_bits = spec.bits_grid[bi];
            cfg.noise_var = noise_var_for_snr_db(cfg, spec.snr_grid_db[si]);

            auto t0 = std::chrono::steady_clock::now();
            std::vector<TrialAccumulator> acc(spec.estimators.size());
            run_grid_point(spec, cfg, dict, quant, si, bi, acc);
            double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

            for (std::size_t e = 0; e < spec.estimators.size(); ++e)
            {
                ResultRecord rec;
                rec.estimator = to_string(spec.estimators[e]);
                rec.snr_db = spec.snr_grid_db[si];
                rec.bits = spec.bits_grid[bi];
                rec.trials = spec.trials;
                rec.failed_trials = acc[e].failures;
                rec.wall_time_s = elapsed;

                const auto& s = acc[e].samples;
                if (!s.empty())
                {
                    double mean = 0.0;
                    for (double v : s)
                        mean += v;
                    mean /= s.size();
                    double var = 0.0;
                    for (double v : s)
                        var += (v - mean) * (v - mean);
                    rec.nmse_mean = mean;
                    rec.nmse_stderr =
                        s.size() > 1 ? std::sqrt(var / (s.size() - 1.0) / s.size()) : 0.0;
                }
                records.push_back(std::move(rec));
            }
        }
    }
    return records;
}

Lemma1Report verify_lemma1(const SystemConfig& cfg, AdcBits bits, int trials,
                           ChannelKind kind, int num_paths, std::uint64_t seed)
{
    SystemConfig c = cfg;
    c.adc_bits = bits;
    c.validate();

    const QuantizerModel quant = QuantizerModel::make(bits);
    const BussgangModel bm = bussgang_linearize(quant, c);
    const double agc_var = agc_input_variance(c);
    const PilotBook pilots = generate_pilots(c, 0);

    double acc = 0.0;
    for (int t = 0; t < trials; ++t)
    {
        std::uint64_t ts = rng::derive(seed, static_cast<std::uint64_t>(t));
        auto channel = draw_channel(c, kind, num_paths, rng::derive(ts, 1));
        auto codewords = generate_analog_codewords(c, rng::derive(ts, 2));
        auto noise_rng = rng::engine(rng::derive(ts, 3));

        const cmat& h = channel.freq_responses[0];
        cvec clean(c.m * c.n_rfr);
        cvec noisy(c.m * c.n_rfr);
        for (int m = 0; m < c.m; ++m)
        {
            cvec fs = codewords[static_cast<std::size_t>(m)].precoder * pilots.at(m, 0);
            cvec rx = h * fs;
            cvec block_clean = codewords[static_cast<std::size_t>(m)].combiner.adjoint() * rx;
            clean.segment(m * c.n_rfr, c.n_rfr) = block_clean;
            cvec v = rng::complex_normal_vec(noise_rng, c.n_r, c.noise_var);
            noisy.segment(m * c.n_rfr, c.n_rfr) =
                block_clean + codewords[static_cast<std::size_t>(m)].combiner.adjoint() * v;
        }
        cvec y = quantize(noisy, quant, agc_var);
        acc += (y - bm.gain * clean).squaredNorm();
    }

    Lemma1Report rep;
    rep.empirical_var = acc / trials;
    rep.analytic_var = bm.stats.total_var;
    rep.relative_error = std::abs(rep.empirical_var - rep.analytic_var) / rep.analytic_var;
    return rep;
}

IsotropyReport verify_isotropy(const SystemConfig& cfg, int draws, std::uint64_t seed)
{
    cfg.validate();
    SystemConfig single = cfg;
    single.m = cfg.n_rft; // one pilot group is enough; blocks are i.i.d. over m
    const PilotBook pilots = generate_pilots(single, 0);

    rvec diag_acc = rvec::Zero(cfg.n_rfr);
    auto g = rng::engine(seed);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);

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

    for (int d = 0; d < draws; ++d)
    {
        cmat f = unimodular(cfg.n_t, cfg.n_rft);
        cmat w = unimodular(cfg.n_r, cfg.n_rfr);
        const cvec& s = pilots.at(d % cfg.n_rft, 0);
        // Psi is unitary, so diag(Phi_m Psi Psi^H Phi_m^H) = diag(Phi_m Phi_m^H);
        // row i of Phi_m = (s^T F^T) kron w_i^H.
        double left = (f * s).squaredNorm();
        for (int i = 0; i < cfg.n_rfr; ++i)
            diag_acc[i] += left * w.col(i).squaredNorm();
    }

    IsotropyReport rep;
    rep.diagonal = diag_acc / draws;
    rep.expected = cfg.pilot_power * cfg.n_rft;
    rep.max_relative_deviation =
        ((rep.diagonal.array() - rep.expected).abs() / rep.expected).maxCoeff();
    return rep;
}

namespace
{
std::string format_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}
} // namespace

std::string results_to_csv(const std::vector<ResultRecord>& records)
{
    std::ostringstream os;
    os << "estimator,snr_db,bits,nmse_mean,nmse_stderr,trials\n";
    for (const auto& r : records)
    {
        os << r.estimator << ',' << format_double(r.snr_db) << ',' << bits_to_string(r.bits)
           << ',' << format_double(r.nmse_mean) << ',' << format_double(r.nmse_stderr) << ','
           << r.trials << '\n';
    }
    return os.str();
}

std::string results_to_json(const std::vector<ResultRecord>& records)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records)
    {
        arr.push_back({{"estimator", r.estimator},
                       {"snr_db", r.snr_db},
                       {"bits", bits_to_string(r.bits)},
                       {"nmse_mean", r.nmse_mean},
                       {"nmse_stderr", r.nmse_stderr},
                       {"trials", r.trials},
                       {"failed_trials", r.failed_trials},
                       {"wall_time_s", r.wall_time_s}});
    }
    return arr.dump(2);
}

std::vector<ResultRecord> results_from_json(const std::string& text)
{
    nlohmann::json arr = nlohmann::json::parse(text);
    std::vector<ResultRecord> out;
    for (const auto& j : arr)
    {
        ResultRecord r;
        r.estimator = j.at("estimator").get<std::string>();
        r.snr_db = j.at("snr_db").get<double>();
        r.bits = bits_from_string(j.at("bits").get<std::string>());
        r.nmse_mean = j.at("nmse_mean").get<double>();
        r.nmse_stderr = j.at("nmse_stderr").get<double>();
        r.trials = j.at("trials").get<int>();
        r.failed_trials = j.value("failed_trials", 0);
        r.wall_time_s = j.value("wall_time_s", 0.0);
        out.push_back(std::move(r));
    }
    return out;
}

namespace
{
constexpr const char* plot_script = R"PY(#!/usr/bin/env python3
"""Plot NMSE curves from the CSV written next to this script."""
import sys
import pandas as pd
import matplotlib.pyplot as plt

csv_path = sys.argv[1] if len(sys.argv) > 1 else "%CSV%"
df = pd.read_csv(csv_path)
fig, ax = plt.subplots()
for (est, bits), grp in df.groupby(["estimator", "bits"]):
    ax.semilogy(grp["snr_db"], grp["nmse_mean"], marker="o", label=f"{est} (b={bits})")
ax.set_xlabel("SNR [dB]")
ax.set_ylabel("NMSE")
ax.grid(True, which="both", alpha=0.3)
ax.legend()
fig.tight_layout()
fig.savefig(csv_path + ".png", dpi=150)
print("wrote", csv_path + ".png")
)PY";
}

void emit_results(const std::vector<ResultRecord>& records, const std::string& path,
                  OutputFormat format)
{
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("emit_results: cannot open " + path);
    f << (format == OutputFormat::Csv ? results_to_csv(records) : results_to_json(records));
    if (!f.flush())
        throw std::runtime_error("emit_results: write failed for " + path);

    if (format == OutputFormat::Csv)
    {
        std::string script = plot_script;
        auto pos = script.find("%CSV%");
        script.replace(pos, 5, path);
        std::ofstream p(path + ".plot.py");
        if (!p)
            throw std::runtime_error("emit_results: cannot open " + path + ".plot.py");
        p << script;
    }
}

} // namespace mmce
