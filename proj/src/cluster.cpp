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

#include "bdcm/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bdcm
{
    namespace
    {
        // Extent rate of a cluster along an array [1/m]; 0 disables deaths
        double array_death_rate(const EvolutionConfig &evo)
        {
            return evo.enabled ? evo.death_rate / evo.array_decorrelation : 0.0;
        }

        // Density of newborn clusters along an array [1/m]
        double array_birth_rate(const EvolutionConfig &evo)
        {
            return evo.enabled ? evo.birth_rate / evo.array_decorrelation : 0.0;
        }

        // Relative motion per second scaled by the decorrelation distance
        double time_motion(const EvolutionConfig &evo)
        {
            return evo.scenario_factor * evo.ms_speed / evo.space_decorrelation;
        }

        double time_death_rate(const EvolutionConfig &evo)
        {
            return evo.enabled ? evo.death_rate * time_motion(evo) : 0.0;
        }

        double time_birth_rate(const EvolutionConfig &evo)
        {
            return evo.enabled ? evo.birth_rate * time_motion(evo) : 0.0;
        }

        double birth_mean(double exponent, double birth_rate, double death_rate, double scale)
        {
            if (death_rate > 0.0)
                return birth_rate / death_rate * -std::expm1(-exponent);
            return birth_rate * scale;
        }

        double semi_major_step(const SimulationConfig &config)
        {
            return speed_of_light * config.delay_spacing / 2.0;
        }

        // a drawn uniformly over the span covered by the mean initial ladder
        double fresh_semi_major(const SimulationConfig &config, Rng &rng)
        {
            const double rungs = std::max(config.evolution.mean_cluster_count() - 1.0, 0.0);
            return config.ellipse.semi_major + uniform01(rng) * rungs * semi_major_step(config);
        }

        double pdp_weight(double delay, const SimulationConfig &config)
        {
            const double first = 2.0 * config.ellipse.semi_major / speed_of_light;
            const double mean_excess = (config.evolution.mean_cluster_count() - 1.0) * config.delay_spacing / 2.0;
            const double tau0 = std::max(config.delay_spacing, mean_excess);
            return std::exp(-(delay - first) / tau0);
        }

        Cluster make_cluster(ClusterSet &set, const SimulationConfig &config, Rng &rng,
                             double semi_major, double mean_aoa, double birth_time)
        {
            Cluster c;
            c.id = set.next_id++;
            c.semi_major = semi_major;
            c.delay = 2.0 * semi_major / speed_of_light;
            c.pdp_weight = pdp_weight(c.delay, config);
            c.mean_aoa = wrap_angle(mean_aoa);

            c.ray_aoas.resize(config.rays_per_cluster);
            for (double &theta : c.ray_aoas)
                theta = von_mises(rng, c.mean_aoa, config.von_mises_kappa);

            c.path_phases.resize(std::max(config.rays_per_cluster, config.num_beams));
            for (double &phase : c.path_phases)
                phase = uniform_phase(rng);
            c.los_phase = uniform_phase(rng);

            c.birth_time = birth_time;
            c.death_time = birth_time + exponential(rng, time_death_rate(config.evolution));
            return c;
        }

        void draw_spans(Cluster &c, const EvolutionConfig &evo, Rng &rng)
        {
            const double rate = array_death_rate(evo);
            c.tx_span = {0.0, exponential(rng, rate)};
            c.rx_span = {0.0, exponential(rng, rate)};
        }

        // Births along one array; `side_tx` selects which span starts at the birth position
        void array_births(ClusterSet &set, const SimulationConfig &config, Rng &rng, bool side_tx)
        {
            const std::size_t count = side_tx ? config.array.num_tx : config.array.num_rx;
            const double spacing = side_tx ? config.array.spacing_tx : config.array.spacing_rx;
            const double length = double(count - 1) * spacing;
            if (count < 2 || !(length > 0.0))
                return;

            const double extent_rate = array_death_rate(config.evolution);
            const std::uint64_t births = poisson(rng, array_birth_rate(config.evolution) * length);
            for (std::uint64_t b = 0; b < births; ++b)
            {
                const double x = length * (1.0 - uniform01(rng)); // (0, length]
                Cluster c = make_cluster(set, config, rng, fresh_semi_major(config, rng), uniform_angle(rng), set.time);
                draw_spans(c, config.evolution, rng);
                ArraySpan &span = side_tx ? c.tx_span : c.rx_span;
                span = {x, x + exponential(rng, extent_rate)};

                // First element at or after the birth position; clusters that die before reaching one are never observed
                const double first_element = std::min(std::ceil(x / spacing), double(count - 1)) * spacing;
                if (first_element >= x && span.contains(first_element))
                    set.clusters.push_back(std::move(c));
            }
        }
    }

    std::vector<std::size_t> Cluster::visible_tx_set(const ArrayConfig &array) const
    {
        std::vector<std::size_t> out;
        for (std::size_t l = 1; l <= array.num_tx; ++l)
            if (visible_tx(l, array.spacing_tx))
                out.push_back(l);
        return out;
    }

    std::vector<std::size_t> Cluster::visible_rx_set(const ArrayConfig &array) const
    {
        std::vector<std::size_t> out;
        for (std::size_t k = 1; k <= array.num_rx; ++k)
            if (visible_rx(k, array.spacing_rx))
                out.push_back(k);
        return out;
    }

    const Cluster *ClusterSet::find_id(std::uint64_t id) const
    {
        for (const auto &c : clusters)
            if (c.id == id)
                return &c;
        return nullptr;
    }

    const Cluster *ClusterSet::find_index(std::size_t index) const
    {
        for (const auto &c : clusters)
            if (c.index == index)
                return &c;
        return nullptr;
    }

    double array_survival(double step, const EvolutionConfig &evo)
    {
        return std::exp(-evo.death_rate * step / evo.array_decorrelation);
    }

    double time_survival(double dt, const EvolutionConfig &evo)
    {
        return std::exp(-evo.death_rate * time_motion(evo) * dt);
    }

    double array_birth_mean(double step, const EvolutionConfig &evo)
    {
        return birth_mean(evo.death_rate * step / evo.array_decorrelation, evo.birth_rate, evo.death_rate,
                          step / evo.array_decorrelation);
    }

    double time_birth_mean(double dt, const EvolutionConfig &evo)
    {
        return birth_mean(evo.death_rate * time_motion(evo) * dt, evo.birth_rate, evo.death_rate, time_motion(evo) * dt);
    }

    ClusterSet initial_clusters(const SimulationConfig &config, std::uint64_t rng_seed)
    {
        Rng rng(rng_seed);
        return initial_clusters(config, rng);
    }

    ClusterSet initial_clusters(const SimulationConfig &config, Rng &rng)
    {
        config.validate();

        ClusterSet set;
        const double mean_count = config.evolution.mean_cluster_count();
        std::uint64_t count = 0;
        while (count == 0)
            count = poisson(rng, mean_count);

        const double step = semi_major_step(config);
        for (std::uint64_t n = 0; n < count; ++n)
        {
            const double a = config.ellipse.semi_major + double(n) * step;
            const double mean_aoa = n == 0 ? config.mean_aoa : uniform_angle(rng);
            set.clusters.push_back(make_cluster(set, config, rng, a, mean_aoa, 0.0));
        }

        evolve_array(set, config, rng);
        set.next_birth = exponential(rng, time_birth_rate(config.evolution));
        refresh_clusters(set);
        return set;
    }

    void evolve_array(ClusterSet &set, const SimulationConfig &config, Rng &rng)
    {
        for (auto &c : set.clusters)
            draw_spans(c, config.evolution, rng);

        array_births(set, config, rng, true);
        array_births(set, config, rng, false);
        refresh_clusters(set);
    }

    void evolve_time(ClusterSet &set, double dt, const SimulationConfig &config, Rng &rng)
    {
        if (!(dt >= 0.0))
            throw std::invalid_argument("evolve_time: dt must be >= 0");
        advance_to(set, set.time + dt, config, rng);
    }

    void advance_to(ClusterSet &set, double time, const SimulationConfig &config, Rng &rng)
    {
        if (!(time >= set.time))
            throw std::invalid_argument("advance_to: cannot evolve backwards in time");

        if (config.evolution.enabled)
        {
            const double rate = time_birth_rate(config.evolution);
            while (set.next_birth <= time)
            {
                Cluster c = make_cluster(set, config, rng, fresh_semi_major(config, rng), uniform_angle(rng), set.next_birth);
                draw_spans(c, config.evolution, rng);
                if (c.death_time > time)
                    set.clusters.push_back(std::move(c));
                set.next_birth += exponential(rng, rate);
            }

            std::erase_if(set.clusters, [time](const Cluster &c) { return c.death_time <= time; });
        }

        set.time = time;
        refresh_clusters(set);
    }

    void refresh_clusters(ClusterSet &set)
    {
        std::sort(set.clusters.begin(), set.clusters.end(), [](const Cluster &x, const Cluster &y)
                  { return x.semi_major < y.semi_major || (x.semi_major == y.semi_major && x.id < y.id); });

        double seen = 0.0, total = 0.0;
        for (std::size_t i = 0; i < set.clusters.size(); ++i)
        {
            Cluster &c = set.clusters[i];
            c.index = i + 1;
            total += c.pdp_weight;
            if (c.tx_span.contains(0.0) && c.rx_span.contains(0.0))
                seen += c.pdp_weight;
        }

        const double norm = seen > 0.0 ? seen : total;
        for (auto &c : set.clusters)
            c.power = norm > 0.0 ? c.pdp_weight / norm : 0.0;
    }
}
