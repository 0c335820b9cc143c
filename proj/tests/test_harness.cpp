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
#include "mmce/harness.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace mmce;

namespace
{

SystemConfig small_system()
{
    SystemConfig cfg;
    cfg.n_t = 4;
    cfg.n_r = 4;
    cfg.n_rft = 2;
    cfg.n_rfr = 2;
    cfg.k = 8;
    cfg.n_c = 2;
    cfg.m = 8;
    return cfg;
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path);
    REQUIRE(bool(f));
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("nmse basics")
{
    auto g = rng::engine(1);
    cvec x = rng::complex_normal_vec(g, 8);
    CHECK(nmse(x, x) == 0.0);
    CHECK(nmse(cvec::Zero(8), x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nmse(2.0 * x, x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(nmse(x, cvec::Zero(8)), std::invalid_argument);
}

TEST_CASE("noise variance for a requested SNR")
{
    SystemConfig cfg = small_system();
    cfg.channel_var = 1.0;
    cfg.pilot_power = 1.0;
    CHECK(noise_var_for_snr_db(cfg, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(noise_var_for_snr_db(cfg, 10.0) == doctest::Approx(0.2).epsilon(1e-12));
    cfg.pilot_power = 2.5;
    CHECK(noise_var_for_snr_db(cfg, 0.0) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("estimator and bits string round trips")
{
    for (auto kind : {EstimatorKind::ProposedLMMSE, EstimatorKind::ProposedOmpLmmse,
                      EstimatorKind::LS, EstimatorKind::UnawareLMMSE})
        CHECK(estimator_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(estimator_from_string("mmse"), std::invalid_argument);

    CHECK(bits_to_string(adc_infinite) == "inf");
    CHECK(bits_to_string(3) == "3");
    CHECK(bits_from_string("inf") == adc_infinite);
    CHECK(bits_from_string("4") == AdcBits(4));
    CHECK_THROWS_AS(bits_from_string("0"), std::invalid_argument);
}

TEST_CASE("experiment spec validation")
{
    ExperimentSpec spec;
    spec.system = small_system();
    spec.trials = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.trials = 1;
    spec.subcarriers = {99};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.subcarriers = {0};
    spec.num_paths = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.num_paths = 2;
    spec.validate();
}

TEST_CASE("run_experiment is deterministic for a fixed seed")
{
    ExperimentSpec spec;
    spec.system = small_system();
    spec.num_paths = 2;
    spec.snr_grid_db = {10.0};
    spec.bits_grid = {AdcBits(2), adc_infinite};
    spec.estimators = {EstimatorKind::ProposedLMMSE, EstimatorKind::ProposedOmpLmmse};
    spec.trials = 3;
    spec.master_seed = 4242;

    auto a = run_experiment(spec);
    auto b = run_experiment(spec);
    CHECK(results_to_csv(a) == results_to_csv(b));
    REQUIRE(a.size() == 4);
    for (const auto& r : a)
    {
        CHECK(r.trials == 3);
        CHECK(r.failed_trials == 0);
        CHECK(r.nmse_mean > 0.0);
    }
}

TEST_CASE("ideal ADC at very high SNR recovers the channel")
{
    ExperimentSpec spec;
    spec.system = small_system();
    spec.num_paths = 2;
    spec.snr_grid_db = {200.0};
    spec.bits_grid = {adc_infinite};
    spec.estimators = {EstimatorKind::ProposedLMMSE, EstimatorKind::LS};
    spec.trials = 4;
    spec.master_seed = 7;

    for (const auto& r : run_experiment(spec))
        CHECK(r.nmse_mean < 1e-6);
}

TEST_CASE("proposed and unaware estimates coincide bit for bit at infinite precision")
{
    ExperimentSpec spec;
    spec.system = small_system();
    spec.num_paths = 2;
    spec.snr_grid_db = {0.0, 10.0};
    spec.bits_grid = {adc_infinite};
    spec.estimators = {EstimatorKind::ProposedLMMSE, EstimatorKind::UnawareLMMSE};
    spec.trials = 5;
    spec.master_seed = 99;

    auto rec = run_experiment(spec);
    REQUIRE(rec.size() == 4);
    for (std::size_t i = 0; i < rec.size(); i += 2)
    {
        CHECK(rec[i].nmse_mean == rec[i + 1].nmse_mean);
        CHECK(rec[i].nmse_stderr == rec[i + 1].nmse_stderr);
    }
}

TEST_CASE("CSV serialization has the fixed header and formats")
{
    CHECK(results_to_csv({}) == "estimator,snr_db,bits,nmse_mean,nmse_stderr,trials\n");

    ResultRecord r;
    r.estimator = "ls";
    r.snr_db = 12.5;
    r.bits = adc_infinite;
    r.nmse_mean = 0.25;
    r.nmse_stderr = 0.0625;
    r.trials = 10;
    CHECK(results_to_csv({r}) ==
          "estimator,snr_db,bits,nmse_mean,nmse_stderr,trials\n"
          "ls,12.5,inf,0.25,0.0625,10\n");
    r.bits = 2;
    CHECK(results_to_csv({r}).find(",2,") != std::string::npos);
}

TEST_CASE("JSON results round trip exactly")
{
    ResultRecord a;
    a.estimator = "proposed_lmmse";
    a.snr_db = 7.25;
    a.bits = 3;
    a.nmse_mean = 0.123456789012345;
    a.nmse_stderr = 1.5e-3;
    a.trials = 200;
    a.failed_trials = 1;
    a.wall_time_s = 0.5;

    ResultRecord b;
    b.estimator = "unaware_lmmse";
    b.snr_db = -5.0;
    b.bits = adc_infinite;
    b.nmse_mean = 2.0;
    b.trials = 50;

    auto round = results_from_json(results_to_json({a, b}));
    REQUIRE(round.size() == 2);
    CHECK(round[0] == a);
    CHECK(round[1] == b);
}

TEST_CASE("emit_results writes the CSV and a companion plot script")
{
    ResultRecord r;
    r.estimator = "ls";
    r.snr_db = 0.0;
    r.trials = 1;
    const std::string path = "harness_emit_test.csv";

    emit_results({r}, path, OutputFormat::Csv);
    CHECK(read_file(path) == results_to_csv({r}));
    std::string script = read_file(path + ".plot.py");
    CHECK(script.find("matplotlib") != std::string::npos);
    CHECK(script.find(path) != std::string::npos);

    const std::string jpath = "harness_emit_test.json";
    emit_results({r}, jpath, OutputFormat::Json);
    auto round = results_from_json(read_file(jpath));
    REQUIRE(round.size() == 1);
    CHECK(round[0] == r);

    std::remove(path.c_str());
    std::remove((path + ".plot.py").c_str());
    std::remove(jpath.c_str());
}

TEST_CASE("effective-noise closed form holds through the nonlinear chain")
{
    SystemConfig cfg = small_system();
    cfg.noise_var = 0.5;

    // Infinite precision: the residual is exactly the combined thermal noise.
    auto ideal = verify_lemma1(cfg, adc_infinite, 400, ChannelKind::Rayleigh, 0, 31);
    CHECK(ideal.analytic_var == doctest::Approx(cfg.m * cfg.n_rfr * cfg.noise_var).epsilon(1e-12));
    CHECK(ideal.relative_error < 0.1);

    auto one_bit = verify_lemma1(cfg, 1, 1500, ChannelKind::Rayleigh, 0, 32);
    CHECK(one_bit.relative_error < 0.1);
}

TEST_CASE("measurement rows are isotropic on average")
{
    SystemConfig cfg = small_system();
    cfg.pilot_power = 1.5;
    auto rep = verify_isotropy(cfg, 4000, 17);
    CHECK(rep.expected == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep.max_relative_deviation < 0.1);
}

TEST_CASE("config parser reads every key")
{
    const std::string text = R"(
# experiment description
n_t = 8
n_r = 8
n_rft = 2
n_rfr = 2
subcarrier_count = 16
max_delay_taps = 4
channel_uses = 32
pilot_power = 2.0
channel_var = 1.5
channel = "sparse"
num_paths = 4
snr_db = [0, 10, 20]
bits = [1, 2, inf]
estimators = [proposed_lmmse, ls]
trials = 25
seed = 123
subcarriers = [0, 8]
mode = linearized
)";
    auto spec = parse_experiment_config(text);
    CHECK(spec.system.n_t == 8);
    CHECK(spec.system.n_r == 8);
    CHECK(spec.system.n_rft == 2);
    CHECK(spec.system.n_rfr == 2);
    CHECK(spec.system.k == 16);
    CHECK(spec.system.n_c == 4);
    CHECK(spec.system.m == 32);
    CHECK(spec.system.pilot_power == 2.0);
    CHECK(spec.system.channel_var == 1.5);
    CHECK(spec.channel_kind == ChannelKind::SparseGeometric);
    CHECK(spec.num_paths == 4);
    CHECK(spec.snr_grid_db == std::vector<double>{0.0, 10.0, 20.0});
    REQUIRE(spec.bits_grid.size() == 3);
    CHECK(spec.bits_grid[0] == AdcBits(1));
    CHECK(spec.bits_grid[2] == adc_infinite);
    REQUIRE(spec.estimators.size() == 2);
    CHECK(spec.estimators[0] == EstimatorKind::ProposedLMMSE);
    CHECK(spec.estimators[1] == EstimatorKind::LS);
    CHECK(spec.trials == 25);
    CHECK(spec.master_seed == 123);
    CHECK(spec.subcarriers == std::vector<int>{0, 8});
    CHECK(spec.mode == SimMode::Linearized);
}

TEST_CASE("config parser rejects bad input")
{
    CHECK_THROWS_AS(parse_experiment_config("unknown_key = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_config("n_t 8\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_config("mode = fancy\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_config("trials = 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(load_experiment_config("does_not_exist.conf"), std::invalid_argument);

    // Defaults survive an empty config.
    auto spec = parse_experiment_config("# nothing here\n\n");
    CHECK(spec.system.n_t == 16);
    CHECK(spec.mode == SimMode::Nonlinear);
}
