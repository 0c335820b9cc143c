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
#include "mmce/frontend.hpp"
#include "mmce/quantizer.hpp"

#include <string>
#include <vector>

namespace mmce
{

// JSON debug/fixture serialization. Complex matrices are stored as nested
// [re, im] pair arrays in row-major order; round trips are lossless because
// doubles serialize at full precision.

std::string channel_to_json(const ChannelRealization& ch);
ChannelRealization channel_from_json(const std::string& text);

std::string codewords_to_json(const std::vector<AnalogCodeword>& words);
std::vector<AnalogCodeword> codewords_from_json(const std::string& text);

std::string codebook_to_json(const GaussianCodebook& cb);
GaussianCodebook codebook_from_json(const std::string& text);

} // namespace mmce
