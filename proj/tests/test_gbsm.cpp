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

#include "bdcm/gbsm.hpp"
#include "bdcm/random.hpp"

#include <cmath>

using namespace bdcm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    struct Point
    {
        double x, y;
    };

    double dist(Point a, Point b)
    {
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    Point tx_element(std::size_t l, const ArrayConfig &arr, double f)
    {
        const double r = (double(arr.num_tx) - 2.0 * double(l) + 1.0) / 2.0 * arr.spacing_tx;
        return {-f + r * std::cos(arr.tilt_tx), r * std::sin(arr.tilt_tx)};
    }

    Point rx_element(std::size_t k, const ArrayConfig &arr, double f)
    {
        const double r = (double(arr.num_rx) - 2.0 * double(k) + 1.0) / 2.0 * arr.spacing_rx;
        return {f + r * std::cos(arr.tilt_rx), r * std::sin(arr.tilt_rx)};
    }

    // Scatterer on the ellipse at polar angle theta from the Rx focus
    Point scatterer(double a, double f, double theta)
    {
        const double r = (a * a - f * f) / (a + f * std::cos(theta));
        return {f + r * std::cos(theta), r * std::sin(theta)};
    }

    Cluster single_ray_cluster(double a, double theta, double phase, std::size_t index = 2)
    {
        Cluster c;
        c.id = 1;
        c.index = index;
        c.semi_major = a;
        c.delay = 2.0 * a / speed_of_light;
        c.power = 0.5;
        c.mean_aoa = theta;
        c.ray_aoas = {theta};
        c.path_phases = {phase};
        c.los_phase = 0.4;
        return c;
    }
}

TEST_CASE("GBSM - single ray against Cartesian oracle")
{
    SimulationConfig cfg;
    cfg.array.num_tx = 8;
    cfg.array.num_rx = 6;
    cfg.array.tilt_tx = 1.1;
    cfg.array.tilt_rx = 2.0;
    const double k0 = 2.0 * pi / cfg.wavelength;

    for (double theta : {0.4, 1.9, -2.5})
    {
        const Cluster c = single_ray_cluster(110.0, theta, 0.7);
        const Point s = scatterer(110.0, 80.0, theta);
        for (std::size_t k = 1; k <= 6; ++k)
            for (std::size_t l = 1; l <= 8; ++l)
            {
                const double d = dist(tx_element(l, cfg.array, 80.0), s) + dist(s, rx_element(k, cfg.array, 80.0));
                const double t = 0.37;
                const double fd = cfg.max_doppler * std::cos(theta - cfg.velocity_angle);
                const cdouble expected = std::sqrt(0.5) * std::polar(1.0, 0.7 + k0 * d + 2.0 * pi * fd * t);
                const cdouble h = gbsm_coefficient(k, l, c, t, cfg);
                CHECK_THAT(h.real(), WithinAbs(expected.real(), 1e-9));
                CHECK_THAT(h.imag(), WithinAbs(expected.imag(), 1e-9));
            }
    }
}

TEST_CASE("GBSM - LOS term")
{
    SimulationConfig cfg;
    cfg.array.num_tx = 4;
    cfg.array.num_rx = 4;
    cfg.rician_k = 3.0;
    const double k0 = 2.0 * pi / cfg.wavelength;

    Cluster first = single_ray_cluster(100.0, 1.0, 0.0, 1);
    Cluster second = single_ray_cluster(100.0, 1.0, 0.0, 2);
    for (std::size_t k = 1; k <= 4; ++k)
        for (std::size_t l = 1; l <= 4; ++l)
        {
            const Link link = make_link(k, l, cfg.array);
            const ClusterResponse r1 = gbsm_response(link, first, cfg);
            REQUIRE(r1.los.size() == 1);
            CHECK_THAT(std::abs(r1.los.amplitude[0]), WithinAbs(std::sqrt(0.75), 1e-15));
            const double d = dist(tx_element(l, cfg.array, 80.0), rx_element(k, cfg.array, 80.0));
            const cdouble expected = std::sqrt(0.75) * std::polar(1.0, first.los_phase + k0 * d);
            CHECK_THAT(r1.los.amplitude[0].real(), WithinAbs(expected.real(), 1e-9));
            CHECK_THAT(r1.los.amplitude[0].imag(), WithinAbs(expected.imag(), 1e-9));
            CHECK(std::abs(r1.los.doppler[0]) <= cfg.max_doppler);

            CHECK(gbsm_response(link, second, cfg).los.empty());
            // NLOS share is 1/(K+1) for every cluster
            CHECK_THAT(std::abs(gbsm_response(link, second, cfg).nlos.amplitude[0]), WithinAbs(std::sqrt(0.5 / 4.0), 1e-15));
        }

    cfg.rician_k = 0.0;
    CHECK(gbsm_response(make_link(1, 1, cfg.array), first, cfg).los.empty());
}

TEST_CASE("GBSM - magnitude bound and aligned rays")
{
    SimulationConfig cfg;
    cfg.rays_per_cluster = 20;
    Rng rng(4);
    const ClusterSet set = initial_clusters(cfg, rng);
    for (const auto &c : set.clusters)
    {
        const ClusterResponse r = gbsm_response(make_link(3, 7, cfg.array), c, cfg);
        for (double t : {0.0, 0.5, 1.3})
            CHECK(std::abs(r.nlos.at(t)) <= std::sqrt(c.power * double(c.ray_aoas.size())) + 1e-12);
        for (double f : r.nlos.doppler)
            CHECK(std::abs(f) <= cfg.max_doppler);
    }

    // All rays identical: phasors align and the bound sqrt(S P) is attained
    Cluster aligned = single_ray_cluster(120.0, 0.8, 0.2);
    aligned.ray_aoas.assign(20, 0.8);
    aligned.path_phases.assign(20, 0.2);
    CHECK_THAT(std::abs(gbsm_coefficient(2, 2, aligned, 0.3, cfg)), WithinRel(std::sqrt(0.5 * 20.0), 1e-12));
}

TEST_CASE("GBSM - visibility gating")
{
    SimulationConfig cfg;
    cfg.array.num_tx = 6;
    cfg.array.num_rx = 6;
    Cluster c = single_ray_cluster(100.0, 1.0, 0.0, 1);
    cfg.rician_k = 2.0;
    c.tx_span = {0.1, 0.2}; // elements 3 and 4 at spacing 0.06 (positions 0.12, 0.18)
    c.rx_span = {0.0, 0.1}; // elements 1 and 2

    const ClusterSet set{{c}, 0.0, 0.0, 2};
    const ChannelRealization H = gbsm_matrix(0.2, set, cfg);
    for (std::size_t k = 1; k <= 6; ++k)
        for (std::size_t l = 1; l <= 6; ++l)
        {
            const bool seen = (k <= 2) && (l == 3 || l == 4);
            CHECK(c.visible(k, l, cfg.array) == seen);
            const cdouble h = H(k - 1, l - 1, 0, 0);
            if (seen)
            {
                CHECK(std::abs(h) > 0.0);
                CHECK(h == gbsm_coefficient(k, l, c, 0.2, cfg));
            }
            else
                CHECK(h == cdouble(0.0, 0.0));
        }
}

TEST_CASE("GBSM - ensemble power normalization")
{
    SimulationConfig cfg;
    cfg.rician_k = 3.0;
    const Link link = make_link(1, 1, cfg.array);
    double nlos = 0.0, los = 0.0;
    const int n = 4000;
    for (int m = 0; m < n; ++m)
    {
        Rng rng = make_stream(77, std::uint64_t(m));
        const ClusterSet set = initial_clusters(cfg, rng);
        for (const auto &c : set.clusters)
        {
            const ClusterResponse r = gbsm_response(link, c, cfg);
            nlos += std::norm(r.nlos.at(1.0));
            los += std::norm(r.los.at(1.0));
        }
    }
    CHECK_THAT(nlos / n, WithinRel(1.0 / 4.0, 0.02));
    CHECK_THAT(los / n, WithinRel(3.0 / 4.0, 1e-12));
}

TEST_CASE("GBSM - spherical wavefront departs from the plane-wave phase")
{
    SimulationConfig cfg; // 32 x 32, spacing 0.06
    const double k0 = 2.0 * pi / cfg.wavelength;
    const double theta = pi / 3, a = 100.0;
    const EllipseConfig e{a, cfg.ellipse.focal_half};
    const auto d = center_distances(theta, e);
    const double r = element_offset(1, cfg.array.num_rx, cfg.array.spacing_rx);
    const double spherical = k0 * element_distance(d.rx, theta, r, cfg.array.tilt_rx);
    const double planar = k0 * (d.rx - r * std::cos(theta - cfg.array.tilt_rx));
    CHECK(std::abs(spherical - planar) > 0.01);
}

TEST_CASE("GBSM - phasor structure under time reversal")
{
    SimulationConfig cfg;
    Cluster c = single_ray_cluster(130.0, -0.6, 0.9);
    const ClusterResponse r = gbsm_response(make_link(2, 5, cfg.array), c, cfg);
    PathSum reversed = r.nlos;
    for (auto &amp : reversed.amplitude)
        amp = std::conj(amp);
    for (double t : {0.1, 0.7})
    {
        const cdouble a = r.nlos.at(t), b = reversed.at(-t);
        CHECK_THAT(a.real(), WithinAbs(b.real(), 1e-12));
        CHECK_THAT(a.imag(), WithinAbs(-b.imag(), 1e-12));
    }
}

TEST_CASE("GBSM - path sum evaluation on grids")
{
    PathSum p;
    p.add({0.3, -0.2}, 12.5);
    p.add({-0.1, 0.7}, -30.0);
    p.add({0.5, 0.5}, 0.0);
    std::vector<double> uniform(61), irregular{0.0, 0.013, 0.2, 0.21};
    for (std::size_t j = 0; j < uniform.size(); ++j)
        uniform[j] = 1.0 + 0.005 * double(j);
    std::vector<cdouble> out(uniform.size()), out2(irregular.size());
    p.evaluate(uniform, out);
    CHECK(out[0] == p.at(uniform[0]));
    for (std::size_t j = 0; j < uniform.size(); ++j)
        CHECK(std::abs(out[j] - p.at(uniform[j])) < 1e-12);
    p.evaluate(irregular, out2);
    for (std::size_t j = 0; j < irregular.size(); ++j)
        CHECK(out2[j] == p.at(irregular[j]));
}
