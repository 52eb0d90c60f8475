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

#ifndef BDCM_CONFIG_H
#define BDCM_CONFIG_H

#include "bdcm/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bdcm
{
    inline constexpr const char *version_string = "0.1.0";

    enum class Model
    {
        gbsm, // antenna-domain ray model
        bdcm, // beam-domain model
    };

    // How the NLOS power of a cluster is spread over the virtual beams
    enum class BeamWeighting
    {
        von_mises, // cluster AoA density sampled on the beam grid, renormalized
        uniform,   // 1/M on every beam
    };

    // Normalization of the correlation estimators
    enum class Normalization
    {
        ensemble,        // E[x y*] / sqrt(E|x|^2 E|y|^2)
        per_realization, // E[x y* / (|x| |y|)]
    };

    std::string to_string(Model model);
    std::string to_string(BeamWeighting weighting);
    std::string to_string(Normalization normalization);
    Model model_from_string(const std::string &name);
    BeamWeighting beam_weighting_from_string(const std::string &name);
    Normalization normalization_from_string(const std::string &name);

    // Birth-death parameters of the array-axis and time-axis cluster evolution
    struct EvolutionConfig
    {
        bool enabled = true;
        double birth_rate = 80.0;          // lambda_G [1/m]
        double death_rate = 4.0;           // lambda_R [1/m]
        double array_decorrelation = 30.0; // D_c^a [m]
        double space_decorrelation = 50.0; // D_c^s [m]
        double scenario_factor = 0.3;      // P_F (also written eta_c), share of moving scatterers
        double ms_speed = 0.5;             // v_c [m/s]

        // lambda_G / lambda_R
        double mean_cluster_count() const { return birth_rate / death_rate; }
        void validate() const;

        bool operator==(const EvolutionConfig &) const = default;
    };

    // `points` equally spaced values from start to stop (inclusive)
    struct LinearGrid
    {
        double start = 0.0;
        double stop = 0.0;
        std::size_t points = 1;

        std::vector<double> values() const;
        void validate(const std::string &key) const;

        bool operator==(const LinearGrid &) const = default;
    };

    struct SimulationConfig
    {
        ArrayConfig array;
        EllipseConfig ellipse;
        EvolutionConfig evolution;

        double wavelength = 0.12;          // lambda [m]
        double max_doppler = 33.33;        // f_max [Hz]
        double velocity_angle = pi / 6;    // alpha_v [rad]
        double rician_k = 0.0;             // K, 0 = NLOS
        double los_rician_k = 3.0;         // K used for the LOS curves of the frequency-correlation experiment
        std::size_t rays_per_cluster = 20; // S
        std::size_t num_beams = 256;       // M
        double von_mises_kappa = 5.0;      // kappa of the per-cluster AoA spread
        double mean_aoa = pi / 3;          // mean AoA of the first cluster; later clusters draw theirs uniformly
        double delay_spacing = 25e-9;      // delay step between consecutive initial clusters [s]
        BeamWeighting beam_weighting = BeamWeighting::von_mises;
        Normalization normalization = Normalization::ensemble;

        std::size_t ensemble = 10000;
        std::uint64_t seed = 1;
        std::vector<double> time_samples{1.0}; // evaluation instants t [s]

        LinearGrid space_lags{0.0, 0.36, 31}; // receive spacing delta_R [m]
        LinearGrid time_lags{0.0, 0.3, 61};   // Delta t [s]
        LinearGrid freq_lags{0.0, 5e6, 51};   // Delta omega [Hz]

        // Throws std::invalid_argument whose message starts with the offending key path
        void validate() const;

        bool operator==(const SimulationConfig &) const = default;
    };

    // Parameter sets of the reproduced figures
    SimulationConfig fig3_config(); // receive space CCF
    SimulationConfig fig4_config(); // time ACF at t = 1..4 s
    SimulationConfig fig5_config(); // FCF, NLOS and LOS
}

#endif
