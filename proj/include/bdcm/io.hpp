// SPDX-License-Identifier: Apache-2.0
//
// bdcm: near-field beam domain channel simulator for massive MIMO
// Copyright (C) 2026 The bdcm authors
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

#ifndef BDCM_IO_H
#define BDCM_IO_H

#include "bdcm/config.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace bdcm
{
    // Configuration problems; the message starts with the key path or the file name
    class ConfigError : public std::invalid_argument
    {
      public:
        explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
    };

    // JSON object -> validated config. Omitted keys keep the defaults of the selected "preset" (fig3 when absent);
    // unknown keys are rejected.
    SimulationConfig config_from_json(const nlohmann::json &j);
    nlohmann::json config_to_json(const SimulationConfig &config);

    // Empty or whitespace-only text yields the defaults
    SimulationConfig parse_config(const std::string &text, const std::string &source = "<string>");
    SimulationConfig load_config(const std::filesystem::path &path);

    // Pretty-printed JSON that parse_config reads back to an identical config
    std::string emit_config(const SimulationConfig &config);

    // FNV-1a over the compact JSON form
    std::uint64_t config_hash(const SimulationConfig &config);
    std::string config_hash_hex(const SimulationConfig &config);
}

#endif
