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

#include "mmce/config_file.hpp"
#include "mmce/estimator.hpp"
#include "mmce/fixture_io.hpp"
#include "mmce/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace
{

int run_sweep(const std::string& config_path, std::optional<std::uint64_t> seed,
              std::optional<int> trials, std::optional<std::string> mode,
              const std::string& out, const std::string& format)
{
    mmce::ExperimentSpec spec = mmce::load_experiment_config(config_path);
    if (seed)
        spec.master_seed = *seed;
    if (trials)
        spec.trials = *trials;
    if (mode)
        spec.mode = (*mode == "linearized") ? mmce::SimMode::Linearized : mmce::SimMode::Nonlinear;
    spec.validate();

    auto records = mmce::run_experiment(spec);
    auto fmt = (format == "json") ? mmce::OutputFormat::Json : mmce::OutputFormat::Csv;
    if (out.empty())
    {
        std::cout << (fmt == mmce::OutputFormat::Csv ? mmce::results_to_csv(records)
                                                     : mmce::results_to_json(records));
    }
    else
    {
        mmce::emit_results(records, out, fmt);
        std::cout << "wrote " << records.size() << " records to " << out << "\n";
    }
    return 0;
}

int run_verify(std::uint64_t seed, int trials)
{
    bool all_pass = true;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        all_pass = all_pass && ok;
        std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
    };

    // Effective-noise variance at large array scale, full nonlinear chain.
    {
        mmce::SystemConfig cfg;
        cfg.n_t = 64;
        cfg.n_r = 64;
        cfg.n_rft = 4;
        cfg.n_rfr = 4;
        cfg.k = 4;
        cfg.n_c = 4;
        cfg.m = 8;
        cfg.noise_var = 1.0;
        for (int b : {1, 2, 3})
        {
            auto rep = mmce::verify_lemma1(cfg, b, trials, mmce::ChannelKind::Rayleigh, 1,
                                           mmce::rng::derive(seed, 10, b));
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "b=%d empirical=%.4f analytic=%.4f rel_err=%.3f%%", b,
                          rep.empirical_var, rep.analytic_var, 100.0 * rep.relative_error);
            report("effective-noise-variance", rep.relative_error < 0.08, buf);
        }
    }

    // Isotropy of the stacked measurement operator.
    {
        mmce::SystemConfig cfg;
        cfg.n_t = 64;
        cfg.n_r = 64;
        cfg.n_rft = 4;
        cfg.n_rfr = 4;
        cfg.k = 4;
        cfg.n_c = 4;
        cfg.m = 8;
        auto rep = mmce::verify_isotropy(cfg, trials, mmce::rng::derive(seed, 20));
        char buf[120];
        std::snprintf(buf, sizeof(buf), "max deviation from P*N_RFt: %.3f%%",
                      100.0 * rep.max_relative_deviation);
        report("measurement-isotropy", rep.max_relative_deviation < 0.05, buf);
    }

    // Combiner stationarity on random instances.
    {
        auto g = mmce::rng::engine(mmce::rng::derive(seed, 30));
        double worst = 0.0;
        for (int i = 0; i < 100; ++i)
        {
            int rows = 8 + static_cast<int>(g() % 17);
            int cols = 2 + static_cast<int>(g() % static_cast<std::uint64_t>(rows - 2));
            mmce::cmat omega = mmce::rng::complex_normal_mat(g, rows, cols);
            double eta = mmce::distortion_factor(1 + static_cast<int>(g() % 5));
            double sig_e = 0.05 + 2.0 * static_cast<double>(g() % 1000) / 1000.0;
            double sig_h = 0.2 + 3.0 * static_cast<double>(g() % 1000) / 1000.0;
            auto w = mmce::lmmse_combiner(omega, eta, sig_e, sig_h);
            double rel = mmce::mse_gradient(w.matrix, omega, eta, sig_h, sig_e).norm() /
                         w.matrix.norm();
            worst = std::max(worst, rel);
        }
        char buf[96];
        std::snprintf(buf, sizeof(buf), "worst relative gradient norm: %.3e", worst);
        report("combiner-stationarity", worst < 1e-9, buf);
    }

    return all_pass ? 0 : 2;
}

int run_codebook(int bits, const std::string& out)
{
    auto cb = mmce::build_codebook(bits);
    std::string text = mmce::codebook_to_json(cb);
    if (out.empty())
    {
        std::cout << text << "\n";
    }
    else
    {
        std::ofstream f(out);
        if (!f)
        {
            std::cerr << "cannot open " << out << "\n";
            return 2;
        }
        f << text << "\n";
    }
    return 0;
}

int run_demo(std::uint64_t seed, int trials, const std::string& mode)
{
    mmce::ExperimentSpec spec;
    spec.system.n_t = 8;
    spec.system.n_r = 8;
    spec.system.n_rft = 2;
    spec.system.n_rfr = 2;
    spec.system.k = 8;
    spec.system.n_c = 2;
    spec.system.m = mmce::SystemConfig::default_channel_uses(8, 8, 2, 2);
    spec.channel_kind = mmce::ChannelKind::SparseGeometric;
    spec.num_paths = 3;
    spec.snr_grid_db = {0, 10, 20};
    spec.bits_grid = {2, mmce::adc_infinite};
    spec.estimators = {mmce::EstimatorKind::ProposedLMMSE, mmce::EstimatorKind::ProposedOmpLmmse,
                       mmce::EstimatorKind::UnawareLMMSE};
    spec.trials = trials;
    spec.master_seed = seed;
    spec.subcarriers = {0};
    spec.mode = (mode == "linearized") ? mmce::SimMode::Linearized : mmce::SimMode::Nonlinear;

    auto records = mmce::run_experiment(spec);
    std::cout << mmce::results_to_csv(records);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Wideband mmWave hybrid MIMO channel estimation simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "csv", mode;
    std::optional<std::uint64_t> seed_opt;
    std::optional<int> trials_opt;
    std::optional<std::string> mode_opt;

    auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo NMSE sweep from a config file");
    sweep->add_option("--config", config_path, "Experiment config file")->required();
    std::uint64_t sweep_seed = 0;
    auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "Override master seed");
    int sweep_trials = 0;
    auto* sweep_trials_opt = sweep->add_option("--trials", sweep_trials, "Override trial count");
    std::string sweep_mode;
    auto* sweep_mode_opt = sweep->add_option("--mode", sweep_mode, "Simulation mode")
                               ->check(CLI::IsMember({"linearized", "nonlinear"}));
    sweep->add_option("--out", out_path, "Output path (stdout if omitted)");
    sweep->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* verify = app.add_subcommand("verify", "Run the statistical verification suites");
    std::uint64_t verify_seed = 7;
    int verify_trials = 2000;
    verify->add_option("--seed", verify_seed, "Master seed");
    verify->add_option("--trials", verify_trials, "Monte Carlo draws per suite");

    auto* codebook = app.add_subcommand("codebook", "Dump the Lloyd-Max quantizer codebook");
    int cb_bits = 1;
    codebook->add_option("--bits", cb_bits, "ADC bits")->check(CLI::Range(1, 12));
    codebook->add_option("--out", out_path, "Output path (stdout if omitted)");

    auto* demo = app.add_subcommand("demo", "Small end-to-end run printing an NMSE table");
    std::uint64_t demo_seed = 1;
    int demo_trials = 20;
    std::string demo_mode = "nonlinear";
    demo->add_option("--seed", demo_seed, "Master seed");
    demo->add_option("--trials", demo_trials, "Trials per grid point");
    demo->add_option("--mode", demo_mode, "Simulation mode")
        ->check(CLI::IsMember({"linearized", "nonlinear"}));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try
    {
        if (*sweep)
        {
            if (*sweep_seed_opt)
                seed_opt = sweep_seed;
            if (*sweep_trials_opt)
                trials_opt = sweep_trials;
            if (*sweep_mode_opt)
                mode_opt = sweep_mode;
            return run_sweep(config_path, seed_opt, trials_opt, mode_opt, out_path, format);
        }
        if (*verify)
            return run_verify(verify_seed, verify_trials);
        if (*codebook)
            return run_codebook(cb_bits, out_path);
        if (*demo)
            return run_demo(demo_seed, demo_trials, demo_mode);
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
