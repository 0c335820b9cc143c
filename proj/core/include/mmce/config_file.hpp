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

#include "mmce/harness.hpp"

#include <string>

namespace mmce
{

/// Parses a flat TOML-style key = value experiment config (see README for the
/// key list). Unknown keys raise; missing keys keep the defaults.
ExperimentSpec parse_experiment_config(const std::string& text);

ExperimentSpec load_experiment_config(const std::string& path);

} // namespace mmce
