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

#include "bdcm/config.hpp"

#include <cmath>
#include <stdexcept>

namespace bdcm
{
    std::string to_string(Model model)
    {
        return model == Model::gbsm ? "gbsm" : "bdcm";
    }

    std::string to_string(BeamWeighting weighting)
    {
        return weighting == BeamWeighting::von_mises ? "von_mises" : "uniform";
    }

    std::string to_string(Normalization normalization)
    {
        return normalization == Normalization::ensemble ? "ensemble" : "per_realization";
    }

    Model model_from_string(const std::string &name)
    {
        if (name == "gbsm")
            return Model::gbsm;
        if (name == "bdcm")
            return Model::bdcm;
        throw std::invalid_argument("unknown model '" + name + "' (expected gbsm or bdcm)");
    }

    BeamWeighting beam_weighting_from_string(const std::string &name)
    {
        if (name == "von_mises")
            return BeamWeighting::von_mises;
        if (name == "uniform")
            return BeamWeighting::uniform;
        throw std::invalid_argument("unknown beam weighting '" + name + "' (expected von_mises or uniform)");
    }

    Normalization normalization_from_string(const std::string &name)
    {
        if (name == "ensemble")
            return Normalization::ensemble;
        if (name == "per_realization")
            return Normalization::per_realization;
        throw std::invalid_argument("unknown normalization '" + name + "' (expected ensemble or per_realization)");
    }

    void EvolutionConfig::validate() const
    {
        if (!(birth_rate > 0.0))
            throw std::invalid_argument("evolution.birth_rate must be > 0");
        if (!(death_rate > 0.0))
            throw std::invalid_argument("evolution.death_rate must be > 0 (mean cluster count birth_rate/death_rate must be finite)");
        if (!(array_decorrelation > 0.0))
            throw std::invalid_argument("evolution.array_decorrelation must be > 0");
        if (!(space_decorrelation > 0.0))
            throw std::invalid_argument("evolution.space_decorrelation must be > 0");
        if (!(scenario_factor >= 0.0 && scenario_factor <= 1.0))
            throw std::invalid_argument("evolution.scenario_factor must lie in [0, 1]");
        if (!(ms_speed >= 0.0))
            throw std::invalid_argument("evolution.ms_speed must be >= 0");
    }

    std::vector<double> LinearGrid::values() const
    {
        std::vector<double> v(points);
        if (points == 1)
        {
            v[0] = start;
            return v;
        }
        const double step = (stop - start) / double(points - 1);
        for (std::size_t i = 0; i < points; ++i)
            v[i] = start + double(i) * step;
        v.back() = stop;
        return v;
    }

    void LinearGrid::validate(const std::string &key) const
    {
        if (points < 1)
            throw std::invalid_argument(key + ".points must be >= 1");
        if (!std::isfinite(start) || !std::isfinite(stop) || stop < start)
            throw std::invalid_argument(key + ": need finite start <= stop");
    }

    void SimulationConfig::validate() const
    {
        array.validate();
        ellipse.validate();
        evolution.validate();

        if (!(wavelength > 0.0))
            throw std::invalid_argument("wavelength must be > 0");
        if (!(max_doppler >= 0.0))
            throw std::invalid_argument("max_doppler must be >= 0");
        if (!std::isfinite(velocity_angle))
            throw std::invalid_argument("velocity_angle must be finite");
        if (!(rician_k >= 0.0))
            throw std::invalid_argument("rician_k must be >= 0");
        if (!(los_rician_k >= 0.0))
            throw std::invalid_argument("los_rician_k must be >= 0");
        if (rays_per_cluster < 1)
            throw std::invalid_argument("rays_per_cluster must be >= 1");
        if (num_beams < 1)
            throw std::invalid_argument("num_beams must be >= 1");
        if (!(von_mises_kappa >= 0.0))
            throw std::invalid_argument("von_mises_kappa must be >= 0");
        if (!std::isfinite(mean_aoa))
            throw std::invalid_argument("mean_aoa must be finite");
        if (!(delay_spacing > 0.0))
            throw std::invalid_argument("delay_spacing must be > 0");
        if (ensemble < 1)
            throw std::invalid_argument("ensemble must be >= 1");
        if (time_samples.empty())
            throw std::invalid_argument("time_samples must not be empty");
        for (double t : time_samples)
            if (!(t >= 0.0) || !std::isfinite(t))
                throw std::invalid_argument("time_samples entries must be finite and >= 0");

        space_lags.validate("space_lags");
        if (space_lags.start < 0.0)
            throw std::invalid_argument("space_lags.start must be >= 0");
        time_lags.validate("time_lags");
        freq_lags.validate("freq_lags");
    }

    SimulationConfig fig3_config()
    {
        return SimulationConfig{};
    }

    SimulationConfig fig4_config()
    {
        SimulationConfig c;
        c.wavelength = 0.15;
        c.array.spacing_tx = 0.5 * c.wavelength;
        c.array.spacing_rx = 0.5 * c.wavelength;
        c.evolution.array_decorrelation = 15.0;
        c.time_samples = {1.0, 2.0, 3.0, 4.0};
        c.space_lags = {0.0, 3.0 * c.wavelength, 31};
        return c;
    }

    SimulationConfig fig5_config()
    {
        SimulationConfig c = fig4_config();
        c.time_samples = {1.0};
        return c;
    }
}
