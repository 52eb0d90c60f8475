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

#ifndef BDCM_CLUSTER_H
#define BDCM_CLUSTER_H

#include "bdcm/config.hpp"
#include "bdcm/random.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace bdcm
{
    // Stretch of an array (meters from element 1 towards element M) over which a cluster is visible.
    // Element j (1-based) with spacing d sits at position (j - 1) * d.
    struct ArraySpan
    {
        double begin = 0.0;
        double end = std::numeric_limits<double>::infinity();

        bool contains(double position) const { return position >= begin && position < end; }
    };

    // One scatterer cluster on its own confocal ellipse
    struct Cluster
    {
        std::uint64_t id = 0;
        std::size_t index = 0;      // 1-based rank by delay in the current set
        double semi_major = 0.0;    // a_n [m]
        double delay = 0.0;         // tau_n = 2 a_n / c [s]
        double pdp_weight = 0.0;    // unnormalized power-delay-profile weight
        double power = 0.0;         // P_n, normalized over the clusters seen by the link (1, 1)
        double mean_aoa = 0.0;      // [rad]
        std::vector<double> ray_aoas;    // S von Mises ray angles
        std::vector<double> path_phases; // phi_0 per ray / per beam, max(S, M) entries shared by both models
        double los_phase = 0.0;          // phi_0 of the LOS component (used by the first cluster only)
        ArraySpan tx_span;
        ArraySpan rx_span;
        double birth_time = 0.0;
        double death_time = std::numeric_limits<double>::infinity();

        EllipseConfig ellipse(double focal_half) const { return {semi_major, focal_half}; }

        bool visible_tx(std::size_t l, double spacing) const { return tx_span.contains(double(l - 1) * spacing); }
        bool visible_rx(std::size_t k, double spacing) const { return rx_span.contains(double(k - 1) * spacing); }
        bool visible(std::size_t k, std::size_t l, const ArrayConfig &array) const
        {
            return visible_rx(k, array.spacing_rx) && visible_tx(l, array.spacing_tx);
        }

        // Visibility sets C^T and C^R membership as 1-based element indices
        std::vector<std::size_t> visible_tx_set(const ArrayConfig &array) const;
        std::vector<std::size_t> visible_rx_set(const ArrayConfig &array) const;
    };

    // Cluster population of one realization plus the state of the time-axis birth process
    struct ClusterSet
    {
        std::vector<Cluster> clusters;
        double time = 0.0;
        double next_birth = std::numeric_limits<double>::infinity();
        std::uint64_t next_id = 0;

        const Cluster *find_id(std::uint64_t id) const;
        const Cluster *find_index(std::size_t index) const;
    };

    // Per-step survival probabilities of the birth-death process
    double array_survival(double step, const EvolutionConfig &evo);
    double time_survival(double dt, const EvolutionConfig &evo);

    // Expected number of new clusters that are visible after one step:
    // (lambda_G / lambda_R) * (1 - survival), with the lambda_R -> 0 limit handled
    double array_birth_mean(double step, const EvolutionConfig &evo);
    double time_birth_mean(double dt, const EvolutionConfig &evo);

    // Draws a cluster count ~ Poisson(lambda_G / lambda_R) (redrawn while zero), places the clusters on
    // semi-major axes a_1 + (n - 1) * c * delay_spacing / 2 and evolves them across both arrays
    ClusterSet initial_clusters(const SimulationConfig &config, std::uint64_t rng_seed);
    ClusterSet initial_clusters(const SimulationConfig &config, Rng &rng);

    // Array-axis birth-death: every cluster is made visible at element 1 and survives from one element to the
    // next with probability array_survival(spacing); new clusters are born along both arrays.
    // Tx and Rx are evolved independently.
    void evolve_array(ClusterSet &set, const SimulationConfig &config, Rng &rng);

    // Time-axis birth-death over dt >= 0. Survival over dt is exp(-lambda_R * P_F * v_c * dt / D_c^s); newborn clusters
    // draw fresh delay, power and angles. Outcomes do not depend on how an interval is split into steps.
    void evolve_time(ClusterSet &set, double dt, const SimulationConfig &config, Rng &rng);

    // evolve_time up to an absolute instant
    void advance_to(ClusterSet &set, double time, const SimulationConfig &config, Rng &rng);

    // Sorts by delay, assigns 1-based indices and renormalizes powers
    void refresh_clusters(ClusterSet &set);
}

#endif
