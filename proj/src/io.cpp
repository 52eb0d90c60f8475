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

#include "bdcm/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace bdcm
{
    using nlohmann::json;

    namespace
    {
        std::string join(const std::string &path, const std::string &key)
        {
            return path.empty() ? key : path + "." + key;
        }

        void reject_unknown(const json &obj, const std::string &path, const std::set<std::string> &known)
        {
            if (!obj.is_object())
                throw ConfigError((path.empty() ? std::string("config") : path) + ": expected an object");
            for (const auto &item : obj.items())
                if (!known.contains(item.key()))
                    throw ConfigError(join(path, item.key()) + ": unknown key");
        }

        template <typename T>
        void read(const json &obj, const std::string &path, const char *key, T &value)
        {
            const auto it = obj.find(key);
            if (it == obj.end())
                return;
            const std::string where = join(path, key);
            if constexpr (std::is_same_v<T, bool>)
            {
                if (!it->is_boolean())
                    throw ConfigError(where + ": expected true or false");
                value = it->get<bool>();
            }
            else if constexpr (std::is_floating_point_v<T>)
            {
                if (it->is_string() && it->get<std::string>() == "inf")
                    value = std::numeric_limits<double>::infinity();
                else if (!it->is_number())
                    throw ConfigError(where + ": expected a number");
                else
                    value = it->get<double>();
            }
            else if constexpr (std::is_integral_v<T>)
            {
                if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0))
                    throw ConfigError(where + ": expected a non-negative integer");
                value = T(it->get<std::uint64_t>());
            }
            else
            {
                if (!it->is_string())
                    throw ConfigError(where + ": expected a string");
                value = it->get<std::string>();
            }
        }

        template <typename Fn>
        void read_enum(const json &obj, const char *key, Fn convert)
        {
            std::string name;
            if (!obj.contains(key))
                return;
            read(obj, "", key, name);
            try
            {
                convert(name);
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(std::string(key) + ": " + e.what());
            }
        }

        void read_grid(const json &obj, const char *key, LinearGrid &grid)
        {
            const auto it = obj.find(key);
            if (it == obj.end())
                return;
            reject_unknown(*it, key, {"start", "stop", "points"});
            read(*it, key, "start", grid.start);
            read(*it, key, "stop", grid.stop);
            read(*it, key, "points", grid.points);
        }

        json grid_json(const LinearGrid &g)
        {
            return json{{"start", g.start}, {"stop", g.stop}, {"points", g.points}};
        }

        SimulationConfig preset(const std::string &name)
        {
            if (name == "fig3")
                return fig3_config();
            if (name == "fig4")
                return fig4_config();
            if (name == "fig5")
                return fig5_config();
            throw ConfigError("preset: unknown preset '" + name + "' (expected fig3, fig4 or fig5)");
        }
    }

    SimulationConfig config_from_json(const json &j)
    {
        reject_unknown(j, "", {"preset", "array", "ellipse", "evolution", "wavelength", "max_doppler", "velocity_angle",
                               "rician_k", "los_rician_k", "rays_per_cluster", "num_beams", "von_mises_kappa", "mean_aoa",
                               "delay_spacing", "beam_weighting", "normalization", "ensemble", "seed", "time_samples",
                               "space_lags", "time_lags", "freq_lags"});

        std::string preset_name = "fig3";
        read(j, "", "preset", preset_name);
        SimulationConfig c = preset(preset_name);

        if (const auto it = j.find("array"); it != j.end())
        {
            reject_unknown(*it, "array", {"num_tx", "num_rx", "spacing_tx", "spacing_rx", "tilt_tx", "tilt_rx"});
            read(*it, "array", "num_tx", c.array.num_tx);
            read(*it, "array", "num_rx", c.array.num_rx);
            read(*it, "array", "spacing_tx", c.array.spacing_tx);
            read(*it, "array", "spacing_rx", c.array.spacing_rx);
            read(*it, "array", "tilt_tx", c.array.tilt_tx);
            read(*it, "array", "tilt_rx", c.array.tilt_rx);
        }
        if (const auto it = j.find("ellipse"); it != j.end())
        {
            reject_unknown(*it, "ellipse", {"semi_major", "focal_half"});
            read(*it, "ellipse", "semi_major", c.ellipse.semi_major);
            read(*it, "ellipse", "focal_half", c.ellipse.focal_half);
        }
        if (const auto it = j.find("evolution"); it != j.end())
        {
            reject_unknown(*it, "evolution", {"enabled", "birth_rate", "death_rate", "array_decorrelation",
                                              "space_decorrelation", "scenario_factor", "ms_speed"});
            read(*it, "evolution", "enabled", c.evolution.enabled);
            read(*it, "evolution", "birth_rate", c.evolution.birth_rate);
            read(*it, "evolution", "death_rate", c.evolution.death_rate);
            read(*it, "evolution", "array_decorrelation", c.evolution.array_decorrelation);
            read(*it, "evolution", "space_decorrelation", c.evolution.space_decorrelation);
            read(*it, "evolution", "scenario_factor", c.evolution.scenario_factor);
            read(*it, "evolution", "ms_speed", c.evolution.ms_speed);
        }

        read(j, "", "wavelength", c.wavelength);
        read(j, "", "max_doppler", c.max_doppler);
        read(j, "", "velocity_angle", c.velocity_angle);
        read(j, "", "rician_k", c.rician_k);
        read(j, "", "los_rician_k", c.los_rician_k);
        read(j, "", "rays_per_cluster", c.rays_per_cluster);
        read(j, "", "num_beams", c.num_beams);
        read(j, "", "von_mises_kappa", c.von_mises_kappa);
        read(j, "", "mean_aoa", c.mean_aoa);
        read(j, "", "delay_spacing", c.delay_spacing);
        read_enum(j, "beam_weighting", [&](const std::string &s) { c.beam_weighting = beam_weighting_from_string(s); });
        read_enum(j, "normalization", [&](const std::string &s) { c.normalization = normalization_from_string(s); });
        read(j, "", "ensemble", c.ensemble);
        read(j, "", "seed", c.seed);

        if (const auto it = j.find("time_samples"); it != j.end())
        {
            if (!it->is_array())
                throw ConfigError("time_samples: expected a list of numbers");
            c.time_samples.clear();
            for (std::size_t i = 0; i < it->size(); ++i)
            {
                if (!(*it)[i].is_number())
                    throw ConfigError("time_samples[" + std::to_string(i) + "]: expected a number");
                c.time_samples.push_back((*it)[i].get<double>());
            }
        }
        read_grid(j, "space_lags", c.space_lags);
        read_grid(j, "time_lags", c.time_lags);
        read_grid(j, "freq_lags", c.freq_lags);

        try
        {
            c.validate();
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
        return c;
    }

    json config_to_json(const SimulationConfig &c)
    {
        json j;
        j["array"] = {{"num_tx", c.array.num_tx},         {"num_rx", c.array.num_rx},   {"spacing_tx", c.array.spacing_tx},
                      {"spacing_rx", c.array.spacing_rx}, {"tilt_tx", c.array.tilt_tx}, {"tilt_rx", c.array.tilt_rx}};
        j["ellipse"] = {{"semi_major", c.ellipse.semi_major}, {"focal_half", c.ellipse.focal_half}};
        j["evolution"] = {{"enabled", c.evolution.enabled},
                          {"birth_rate", c.evolution.birth_rate},
                          {"death_rate", c.evolution.death_rate},
                          {"array_decorrelation", c.evolution.array_decorrelation},
                          {"space_decorrelation", c.evolution.space_decorrelation},
                          {"scenario_factor", c.evolution.scenario_factor},
                          {"ms_speed", c.evolution.ms_speed}};
        j["wavelength"] = c.wavelength;
        j["max_doppler"] = c.max_doppler;
        j["velocity_angle"] = c.velocity_angle;
        j["rician_k"] = c.rician_k;
        j["los_rician_k"] = c.los_rician_k;
        j["rays_per_cluster"] = c.rays_per_cluster;
        j["num_beams"] = c.num_beams;
        if (std::isinf(c.von_mises_kappa))
            j["von_mises_kappa"] = "inf"; // JSON has no infinity
        else
            j["von_mises_kappa"] = c.von_mises_kappa;
        j["mean_aoa"] = c.mean_aoa;
        j["delay_spacing"] = c.delay_spacing;
        j["beam_weighting"] = to_string(c.beam_weighting);
        j["normalization"] = to_string(c.normalization);
        j["ensemble"] = c.ensemble;
        j["seed"] = c.seed;
        j["time_samples"] = c.time_samples;
        j["space_lags"] = grid_json(c.space_lags);
        j["time_lags"] = grid_json(c.time_lags);
        j["freq_lags"] = grid_json(c.freq_lags);
        return j;
    }

    SimulationConfig parse_config(const std::string &text, const std::string &source)
    {
        bool blank = true;
        for (unsigned char ch : text)
            blank = blank && std::isspace(ch);
        if (blank)
            return fig3_config();

        json j;
        try
        {
            j = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(source + ": parse error: " + e.what());
        }
        return config_from_json(j);
    }

    SimulationConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError(path.string() + ": cannot open config file");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str(), path.string());
    }

    std::string emit_config(const SimulationConfig &config)
    {
        return config_to_json(config).dump(2) + "\n";
    }

    std::uint64_t config_hash(const SimulationConfig &config)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char ch : config_to_json(config).dump())
        {
            h ^= ch;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    std::string config_hash_hex(const SimulationConfig &config)
    {
        char buf[20];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(config)));
        return buf;
    }
}
