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

#include "mmce/fixture_io.hpp"

#include <nlohmann/json.hpp>

namespace mmce
{

namespace
{

using nlohmann::json;

json mat_to_json(const cmat& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

cmat mat_from_json(const json& rows)
{
    Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
    Eigen::Index nc = nr > 0 ? static_cast<Eigen::Index>(rows[0].size()) : 0;
    cmat m(nr, nc);
    for (Eigen::Index i = 0; i < nr; ++i)
        for (Eigen::Index j = 0; j < nc; ++j)
        {
            const auto& p = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            m(i, j) = cxd(p[0].get<double>(), p[1].get<double>());
        }
    return m;
}

} // namespace

std::string channel_to_json(const ChannelRealization& ch)
{
    json j;
    j["kind"] = ch.kind == ChannelKind::SparseGeometric ? "sparse_geometric" : "rayleigh";
    j["taps"] = json::array();
    for (const auto& t : ch.taps)
        j["taps"].push_back(mat_to_json(t));
    j["freq_responses"] = json::array();
    for (const auto& f : ch.freq_responses)
        j["freq_responses"].push_back(mat_to_json(f));
    if (ch.kind == ChannelKind::SparseGeometric)
    {
        json paths = json::array();
        for (int l = 0; l < ch.paths.num_paths(); ++l)
        {
            paths.push_back({{"gain", {ch.paths.gains[l].real(), ch.paths.gains[l].imag()}},
                             {"delay", ch.paths.delays[l]},
                             {"aoa_cosine", ch.paths.aoa_cosines[l]},
                             {"aod_cosine", ch.paths.aod_cosines[l]}});
        }
        j["paths"] = std::move(paths);
    }
    return j.dump(2);
}

ChannelRealization channel_from_json(const std::string& text)
{
    json j = json::parse(text);
    ChannelRealization ch;
    ch.kind = j.at("kind").get<std::string>() == "rayleigh" ? ChannelKind::Rayleigh
                                                            : ChannelKind::SparseGeometric;
    for (const auto& t : j.at("taps"))
        ch.taps.push_back(mat_from_json(t));
    for (const auto& f : j.at("freq_responses"))
        ch.freq_responses.push_back(mat_from_json(f));
    if (j.contains("paths"))
    {
        for (const auto& p : j["paths"])
        {
            ch.paths.gains.emplace_back(p.at("gain")[0].get<double>(),
                                        p.at("gain")[1].get<double>());
            ch.paths.delays.push_back(p.at("delay").get<int>());
            ch.paths.aoa_cosines.push_back(p.at("aoa_cosine").get<double>());
            ch.paths.aod_cosines.push_back(p.at("aod_cosine").get<double>());
        }
    }
    return ch;
}

std::string codewords_to_json(const std::vector<AnalogCodeword>& words)
{
    json arr = json::array();
    for (const auto& w : words)
        arr.push_back({{"precoder", mat_to_json(w.precoder)}, {"combiner", mat_to_json(w.combiner)}});
    return arr.dump(2);
}

std::vector<AnalogCodeword> codewords_from_json(const std::string& text)
{
    json arr = json::parse(text);
    std::vector<AnalogCodeword> words;
    for (const auto& j : arr)
    {
        AnalogCodeword w;
        w.precoder = mat_from_json(j.at("precoder"));
        w.combiner = mat_from_json(j.at("combiner"));
        words.push_back(std::move(w));
    }
    return words;
}

std::string codebook_to_json(const GaussianCodebook& cb)
{
    json j;
    j["bits"] = cb.bits;
    j["levels"] = cb.levels;
    j["thresholds"] = cb.thresholds;
    return j.dump(2);
}

GaussianCodebook codebook_from_json(const std::string& text)
{
    json j = json::parse(text);
    GaussianCodebook cb;
    cb.bits = j.at("bits").get<int>();
    cb.levels = j.at("levels").get<std::vector<double>>();
    cb.thresholds = j.at("thresholds").get<std::vector<double>>();
    return cb;
}

} // namespace mmce
