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
#include "mmce/estimator.hpp"
#include "mmce/frontend.hpp"
#include "mmce/quantizer.hpp"
#include "mmce/types.hpp"

#include <string>
#include <vector>

namespace mmce
{

enum class EstimatorKind
{
    ProposedLMMSE,
    ProposedOmpLmmse,
    LS,
    UnawareLMMSE
};

enum class SimMode
{
    Linearized, // sample the Bussgang model directly with Gaussian e_hat
    Nonlinear   // run the actual Lloyd-Max quantizer
};

std::string to_string(EstimatorKind kind);
EstimatorKind estimator_from_string(const std::string& name);
std::string bits_to_string(AdcBits bits);
AdcBits bits_from_string(const std::string& text);

/// One Monte Carlo sweep: grids over SNR and ADC precision for a set of
/// estimators on a fixed system configuration.
struct ExperimentSpec
{
    SystemConfig system;
    ChannelKind channel_kind = ChannelKind::SparseGeometric;
    int num_paths = 3;
    std::vector<double> snr_grid_db = {0, 10, 20, 30};
    std::vector<AdcBits> bits_grid = {adc_infinite};
    std::vector<EstimatorKind> estimators = {EstimatorKind::ProposedLMMSE};
    int trials = 500;
    std::uint64_t master_seed = 1;
    std::vector<int> subcarriers = {0};
    SimMode mode = SimMode::Nonlinear;

    void validate() const;
};

struct ResultRecord
{
    std::string estimator;
    double snr_db = 0.0;
    AdcBits bits = adc_infinite;
    double nmse_mean = 0.0;
    double nmse_stderr = 0.0;
    int trials = 0;
    int failed_trials = 0;
    double wall_time_s = 0.0;

    bool operator==(const ResultRecord&) const = default;
};

/// ||estimate - truth||^2 / ||truth||^2
double nmse(const cvec& estimate, const cvec& truth);

/// SNR (dB) -> sigma_v^2 under SNR = sigma_h^2 P N_RFt / sigma_v^2.
double noise_var_for_snr_db(const SystemConfig& cfg, double snr_db);

std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec);

struct Lemma1Report
{
    double empirical_var = 0.0;
    double analytic_var = 0.0;
    double relative_error = 0.0;
};

/// Full nonlinear chain; compares E{e_hat^H e_hat} to the closed form.
Lemma1Report verify_lemma1(const SystemConfig& cfg, AdcBits bits, int trials,
                           ChannelKind kind, int num_paths, std::uint64_t seed);

struct IsotropyReport
{
    rvec diagonal;          // Monte Carlo diag of Phi Psi Psi^H Phi^H, one RF-chain block
    double expected = 0.0;  // P N_RFt
    double max_relative_deviation = 0.0;
};

IsotropyReport verify_isotropy(const SystemConfig& cfg, int draws, std::uint64_t seed);

enum class OutputFormat
{
    Csv,
    Json
};

/// CSV columns: estimator,snr_db,bits,nmse_mean,nmse_stderr,trials.
/// CSV output also writes a companion matplotlib script at <path>.plot.py.
void emit_results(const std::vector<ResultRecord>& records, const std::string& path,
                  OutputFormat format);

std::string results_to_csv(const std::vector<ResultRecord>& records);
std::string results_to_json(const std::vector<ResultRecord>& records);
std::vector<ResultRecord> results_from_json(const std::string& text);

} // namespace mmce
