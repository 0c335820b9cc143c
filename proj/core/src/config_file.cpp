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

#include <fstream>
#include <sstream>

namespace mmce
{

namespace
{

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s)
{
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::string body = s;
    if (body.size() >= 2 && body.front() == '[' && body.back() == ']')
        body = body.substr(1, body.size() - 2);
    std::vector<std::string> items;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = unquote(trim(item));
        if (!item.empty())
            items.push_back(item);
    }
    return items;
}

} // namespace

ExperimentSpec parse_experiment_config(const std::string& text)
{
    ExperimentSpec spec;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = unquote(trim(line.substr(eq + 1)));

        try
        {
            if (key == "n_t") spec.system.n_t = std::stoi(value);
            else if (key == "n_r") spec.system.n_r = std::stoi(value);
            else if (key == "n_rft") spec.system.n_rft = std::stoi(value);
            else if (key == "n_rfr") spec.system.n_rfr = std::stoi(value);
            else if (key == "subcarrier_count") spec.system.k = std::stoi(value);
            else if (key == "max_delay_taps") spec.system.n_c = std::stoi(value);
            else if (key == "channel_uses") spec.system.m = std::stoi(value);
            else if (key == "pilot_power") spec.system.pilot_power = std::stod(value);
            else if (key == "channel_var") spec.system.channel_var = std::stod(value);
            else if (key == "channel")
            {
                if (value == "sparse") spec.channel_kind = ChannelKind::SparseGeometric;
                else if (value == "rayleigh") spec.channel_kind = ChannelKind::Rayleigh;
                else throw std::invalid_argument("channel must be 'sparse' or 'rayleigh'");
            }
            else if (key == "num_paths") spec.num_paths = std::stoi(value);
            else if (key == "snr_db")
            {
                spec.snr_grid_db.clear();
                for (const auto& v : split_list(value))
                    spec.snr_grid_db.push_back(std::stod(v));
            }
            else if (key == "bits")
            {
                spec.bits_grid.clear();
                for (const auto& v : split_list(value))
                    spec.bits_grid.push_back(bits_from_string(v));
            }
            else if (key == "estimators")
            {
                spec.estimators.clear();
                for (const auto& v : split_list(value))
                    spec.estimators.push_back(estimator_from_string(v));
            }
            else if (key == "trials") spec.trials = std::stoi(value);
            else if (key == "seed") spec.master_seed = std::stoull(value);
            else if (key == "subcarriers")
            {
                spec.subcarriers.clear();
                for (const auto& v : split_list(value))
                    spec.subcarriers.push_back(std::stoi(v));
            }
            else if (key == "mode")
            {
                if (value == "linearized") spec.mode = SimMode::Linearized;
                else if (value == "nonlinear") spec.mode = SimMode::Nonlinear;
                else throw std::invalid_argument("mode must be 'linearized' or 'nonlinear'");
            }
            else
                throw std::invalid_argument("unknown key '" + key + "'");
        }
        catch (const std::invalid_argument&)
        {
            throw;
        }
        catch (const std::exception& ex)
        {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    spec.validate();
    return spec;
}

ExperimentSpec load_experiment_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_experiment_config(ss.str());
}

} // namespace mmce
