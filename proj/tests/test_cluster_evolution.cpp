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

#include <catch2/catch_amalgamated.hpp>

#include "bdcm/cluster.hpp"

#include <cmath>
#include <set>

using namespace bdcm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    double visible_power(const ClusterSet &set)
    {
        double p = 0.0;
        for (const auto &c : set.clusters)
            if (c.visible(1, 1, ArrayConfig{}))
                p += c.power;
        return p;
    }
}

TEST_CASE("Cluster evolution - survival and birth formulas")
{
    EvolutionConfig fig4 = fig4_config().evolution;
    CHECK_THAT(array_survival(0.075, fig4), WithinAbs(0.98019867330675530, 1e-15));
    CHECK_THAT(time_survival(1.0, fig4), WithinAbs(0.98807171286193054, 1e-15));
    CHECK(time_survival(0.0, fig4) == 1.0);
    CHECK(fig4.mean_cluster_count() == 20.0);

    // (lambda_G / lambda_R) (1 - survival)
    CHECK_THAT(array_birth_mean(0.075, fig4), WithinRel(20.0 * (1.0 - 0.98019867330675530), 1e-12));
    CHECK_THAT(time_birth_mean(1.0, fig4), WithinRel(20.0 * (1.0 - 0.98807171286193054), 1e-12));

    // Markov consistency
    for (double d : {0.01, 0.075, 0.3})
    {
        CHECK_THAT(array_survival(2 * d, fig4), WithinRel(array_survival(d, fig4) * array_survival(d, fig4), 1e-14));
        CHECK_THAT(time_survival(2 * d, fig4), WithinRel(time_survival(d, fig4) * time_survival(d, fig4), 1e-14));
    }
}

TEST_CASE("Cluster evolution - initial set")
{
    const SimulationConfig cfg = fig3_config();
    ClusterSet set = initial_clusters(cfg, 99);
    REQUIRE(!set.clusters.empty());

    for (std::size_t i = 0; i < set.clusters.size(); ++i)
    {
        const Cluster &c = set.clusters[i];
        CHECK(c.index == i + 1);
        CHECK_THAT(c.delay, WithinRel(2.0 * c.semi_major / speed_of_light, 1e-15));
        CHECK(c.ray_aoas.size() == cfg.rays_per_cluster);
        CHECK(c.path_phases.size() == std::max(cfg.rays_per_cluster, cfg.num_beams));
        CHECK(c.power >= 0.0);
        if (i > 0)
            CHECK(c.semi_major >= set.clusters[i - 1].semi_major);
    }
    CHECK(set.clusters[0].semi_major == cfg.ellipse.semi_major);
    CHECK(set.clusters[0].mean_aoa == cfg.mean_aoa);
    CHECK_THAT(visible_power(set), WithinAbs(1.0, 1e-12));

    auto tx = set.clusters[0].visible_tx_set(cfg.array);
    REQUIRE(!tx.empty());
    CHECK(tx.front() == 1);
    for (std::size_t j = 1; j < tx.size(); ++j)
        CHECK(tx[j] == tx[j - 1] + 1); // contiguous visibility

    // Same seed, same set
    ClusterSet again = initial_clusters(cfg, 99);
    REQUIRE(again.clusters.size() == set.clusters.size());
    for (std::size_t i = 0; i < set.clusters.size(); ++i)
    {
        CHECK(again.clusters[i].semi_major == set.clusters[i].semi_major);
        CHECK(again.clusters[i].ray_aoas == set.clusters[i].ray_aoas);
        CHECK(again.clusters[i].path_phases == set.clusters[i].path_phases);
        CHECK(again.clusters[i].tx_span.end == set.clusters[i].tx_span.end);
    }

    // Mean initial count
    double total = 0.0;
    const int n = 4000;
    for (int s = 0; s < n; ++s)
    {
        std::size_t seen = 0;
        for (const auto &c : initial_clusters(cfg, 1000 + s).clusters)
            seen += c.visible(1, 1, cfg.array) ? 1 : 0;
        total += double(seen);
    }
    CHECK_THAT(total / n, WithinRel(20.0, 0.02));
}

TEST_CASE("Cluster evolution - infinite concentration and zero death rate")
{
    SimulationConfig cfg = fig3_config();
    cfg.von_mises_kappa = std::numeric_limits<double>::infinity();
    ClusterSet set = initial_clusters(cfg, 5);
    for (const auto &c : set.clusters)
        for (double th : c.ray_aoas)
            CHECK_THAT(th, WithinAbs(c.mean_aoa, 1e-15));

    SimulationConfig frozen = fig3_config();
    frozen.evolution.death_rate = 0.0; // only evolve_array tolerates this
    Rng rng(3);
    ClusterSet s2 = initial_clusters(fig3_config(), rng);
    evolve_array(s2, frozen, rng);
    for (const auto &c : s2.clusters)
        if (c.tx_span.begin == 0.0 && c.rx_span.begin == 0.0)
            CHECK(c.visible_tx_set(frozen.array).size() == frozen.array.num_tx);
}

TEST_CASE("Cluster evolution - array axis statistics")
{
    SimulationConfig cfg = fig4_config();
    const double d = cfg.array.spacing_rx;
    double survived = 0.0, alive = 0.0, births = 0.0;
    const int n = 20000;
    for (int s = 0; s < n; ++s)
    {
        const ClusterSet set = initial_clusters(cfg, 7000 + s);
        for (const auto &c : set.clusters)
        {
            if (c.visible_rx(1, d))
            {
                alive += 1.0;
                survived += c.visible_rx(2, d) ? 1.0 : 0.0;
            }
            else if (c.visible_rx(2, d))
                births += 1.0;
        }
    }
    CHECK_THAT(survived / alive, WithinAbs(array_survival(d, cfg.evolution), 0.002));
    CHECK_THAT(births / n, WithinRel(array_birth_mean(d, cfg.evolution), 0.05));
}

TEST_CASE("Cluster evolution - time axis")
{
    const SimulationConfig cfg = fig4_config();

    SECTION("zero step is the identity")
    {
        Rng rng(8);
        ClusterSet set = initial_clusters(cfg, rng);
        const ClusterSet before = set;
        evolve_time(set, 0.0, cfg, rng);
        REQUIRE(set.clusters.size() == before.clusters.size());
        for (std::size_t i = 0; i < set.clusters.size(); ++i)
            CHECK(set.clusters[i].id == before.clusters[i].id);
        CHECK_THROWS_AS(evolve_time(set, -1.0, cfg, rng), std::invalid_argument);
    }

    SECTION("partition independence")
    {
        Rng r1 = make_stream(4, 0), r2 = make_stream(4, 0);
        ClusterSet a = initial_clusters(cfg, r1), b = initial_clusters(cfg, r2);
        advance_to(a, 50.0, cfg, r1);
        for (int i = 0; i < 100; ++i)
            evolve_time(b, 0.5, cfg, r2);
        REQUIRE(a.clusters.size() == b.clusters.size());
        for (std::size_t i = 0; i < a.clusters.size(); ++i)
        {
            CHECK(a.clusters[i].id == b.clusters[i].id);
            CHECK(a.clusters[i].power == b.clusters[i].power);
        }
    }

    SECTION("per-step survival and steady state")
    {
        Rng rng(21);
        ClusterSet set = initial_clusters(cfg, rng);
        double count = 0.0, kept = 0.0, prior = 0.0;
        const int steps = 10000;
        const double dt = 10.0;
        for (int s = 0; s < steps; ++s)
        {
            std::set<std::uint64_t> ids;
            for (const auto &c : set.clusters)
                ids.insert(c.id);
            evolve_time(set, dt, cfg, rng);
            for (const auto &c : set.clusters)
                kept += ids.contains(c.id) ? 1.0 : 0.0;
            prior += double(ids.size());
            count += double(set.clusters.size());
        }
        CHECK_THAT(kept / prior, WithinAbs(time_survival(dt, cfg.evolution), 0.005));
        CHECK_THAT(count / steps, WithinRel(cfg.evolution.mean_cluster_count(), 0.05));
        CHECK_THAT(visible_power(set), WithinAbs(1.0, 1e-12));
    }

    SECTION("disabled evolution freezes the set")
    {
        SimulationConfig off = cfg;
        off.evolution.enabled = false;
        Rng rng(2);
        ClusterSet set = initial_clusters(off, rng);
        const auto n = set.clusters.size();
        advance_to(set, 1e6, off, rng);
        CHECK(set.clusters.size() == n);
    }
}
