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

#include "bdcm/geometry.hpp"

#include <cmath>
#include <random>

using namespace bdcm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Geometry - virtual angles")
{
    auto a4 = virtual_angles(4);
    REQUIRE(a4.size() == 4);
    CHECK_THAT(a4[0], WithinAbs(-pi / 2, 1e-15));
    CHECK_THAT(a4[1], WithinAbs(0.0, 1e-15));
    CHECK_THAT(a4[2], WithinAbs(pi / 2, 1e-15));
    CHECK(a4[3] == pi);

    auto a1 = virtual_angles(1);
    REQUIRE(a1.size() == 1);
    CHECK(a1[0] == pi);

    auto a8 = virtual_angles(8);
    for (std::size_t m = 1; m < 8; ++m)
        CHECK_THAT(a8[m] - a8[m - 1], WithinAbs(pi / 4, 1e-14));

    auto a256 = virtual_angles(256);
    for (std::size_t m = 1; m < a256.size(); ++m)
        CHECK(a256[m] > a256[m - 1]);
    CHECK(a256.back() == pi);

    CHECK_THROWS_AS(virtual_angles(0), std::invalid_argument);
}

TEST_CASE("Geometry - AoA to AoD")
{
    const EllipseConfig e{100.0, 80.0};

    CHECK_THAT(aod_from_aoa(0.0, e), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(aod_from_aoa(pi, e)), WithinAbs(pi, 1e-12));

    // Scatterer at (80, 36), Tx focus at (-80, 0): atan2(36, 160)
    CHECK_THAT(aod_from_aoa(pi / 2, e), WithinAbs(0.22131444234779129, 1e-15));
    CHECK_THAT(aod_from_aoa(-pi / 2, e), WithinAbs(-0.22131444234779129, 1e-15));

    auto grid = make_angle_grid(16, e);
    REQUIRE(grid.aod.size() == 16);
    for (std::size_t m = 0; m < 16; ++m)
        CHECK(grid.aod[m] == aod_from_aoa(grid.aoa[m], e));
}

TEST_CASE("Geometry - center distances")
{
    const EllipseConfig e{100.0, 80.0};

    auto d = center_distances(pi / 2, e);
    CHECK_THAT(d.tx, WithinAbs(164.0, 1e-12));
    CHECK_THAT(d.rx, WithinAbs(36.0, 1e-12));

    auto c0 = center_distances(0.0, 0.0, e);
    CHECK(c0.tx == 180.0);
    CHECK(c0.rx == 20.0);
    auto cpi = center_distances(pi, pi, e);
    CHECK(cpi.tx == 20.0);
    CHECK(cpi.rx == 180.0);

    // Law-of-sines form agrees with the polar placement
    auto ls = center_distances(pi / 2, aod_from_aoa(pi / 2, e), e);
    CHECK_THAT(ls.tx, WithinAbs(164.0, 1e-9));
    CHECK_THAT(ls.rx, WithinAbs(36.0, 1e-9));
}

TEST_CASE("Geometry - ellipse sum and law of sines, random triples")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uf(1.0, 200.0), ur(1.001, 5.0), ut(-pi, pi);
    for (int i = 0; i < 2000; ++i)
    {
        const double f = uf(rng);
        const EllipseConfig e{f * ur(rng), f};
        const double theta = ut(rng);
        const double phi = aod_from_aoa(theta, e);
        auto d = center_distances(theta, e);
        CHECK_THAT(d.tx + d.rx, WithinRel(2.0 * e.semi_major, 1e-9));
        CHECK(d.tx >= e.semi_major - f - 1e-9);
        CHECK(d.rx >= e.semi_major - f - 1e-9);

        // Cartesian placement
        const double x = f + d.rx * std::cos(theta), y = d.rx * std::sin(theta);
        CHECK_THAT(std::hypot(x + f, y), WithinRel(d.tx, 1e-9));

        auto ls = center_distances(theta, phi, e);
        CHECK_THAT(ls.tx, WithinRel(d.tx, 1e-9));
        CHECK_THAT(ls.rx, WithinRel(d.rx, 1e-9));
    }
}

TEST_CASE("Geometry - per-antenna distances")
{
    ArrayConfig arr;
    arr.num_tx = 2;
    arr.num_rx = 2;
    arr.spacing_tx = 0.06;
    arr.spacing_rx = 0.06;

    CHECK_THAT(antenna_distance_tx(164.0, 0.2214, 1, arr), WithinAbs(163.99341474173420, 1e-11));
    CHECK_THAT(antenna_distance_tx(164.0, 0.22131444234779129, 1, arr), WithinAbs(163.99341724593704, 1e-11));

    // Aligned receive element: sqrt(36^2 + 0.03^2 - 36 * 0.06) = 35.97
    CHECK_THAT(antenna_distance_rx(36.0, pi / 2, 1, arr), WithinAbs(35.97, 1e-12));

    // Broadside: cross term vanishes
    CHECK_THAT(antenna_distance_tx(50.0, 0.0, 1, arr), WithinAbs(std::sqrt(2500.0 + 0.0009), 1e-12));

    ArrayConfig single;
    single.num_tx = 1;
    single.num_rx = 1;
    CHECK(antenna_distance_tx(123.4, 0.7, 1, single) == 123.4);
    CHECK(antenna_distance_rx(12.5, -2.0, 1, single) == 12.5);

    CHECK_THROWS_AS(antenna_distance_tx(10.0, 0.0, 0, arr), std::invalid_argument);
    CHECK_THROWS_AS(antenna_distance_rx(10.0, 0.0, 3, arr), std::invalid_argument);
}

TEST_CASE("Geometry - antenna index symmetry")
{
    ArrayConfig arr;
    arr.num_tx = 9;
    arr.num_rx = 9;
    for (std::size_t l = 1; l <= 9; ++l)
    {
        CHECK_THAT(element_offset(l, 9, 0.06), WithinAbs(-element_offset(10 - l, 9, 0.06), 1e-15));
        // theta - beta = pi/2: mirror elements are equidistant
        CHECK_THAT(antenna_distance_rx(40.0, pi, l, arr), WithinAbs(antenna_distance_rx(40.0, pi, 10 - l, arr), 1e-12));
    }
}

TEST_CASE("Geometry - far-field limit")
{
    const double delta = 0.06;
    ArrayConfig arr;
    arr.num_tx = 8;
    arr.spacing_tx = delta;
    const double D = 1e6 * delta;
    for (double phi : {0.3, 1.1, -0.7, 2.5})
        for (std::size_t l = 1; l <= 4; ++l)
        {
            const std::size_t lp = 9 - l; // mirror pair, second-order terms cancel
            const double diff = antenna_distance_tx(D, phi, l, arr) - antenna_distance_tx(D, phi, lp, arr);
            const double plane = (double(l) - double(lp)) * delta * std::cos(arr.tilt_tx - phi);
            CHECK_THAT(diff, WithinRel(plane, 1e-6));
        }
}

TEST_CASE("Geometry - LOS geometry")
{
    const EllipseConfig e{100.0, 80.0};

    ArrayConfig single;
    single.num_tx = 1;
    single.num_rx = 1;
    auto s = los_geometry(1, 1, e, single);
    CHECK(s.tx_element_to_rx_center == 160.0);
    CHECK(s.aoa == 0.0);
    CHECK(s.tx_element_to_rx_element == 160.0);

    ArrayConfig arr;
    arr.num_tx = 2;
    arr.num_rx = 2;
    auto g = los_geometry(1, 1, e, arr);
    CHECK_THAT(g.tx_element_to_rx_center, WithinAbs(160.00000281249998, 1e-11));
    CHECK_THAT(g.aoa, WithinAbs(std::asin(0.03 / g.tx_element_to_rx_center), 1e-15));

    // Broadside right triangle
    for (std::size_t l = 1; l <= 2; ++l)
    {
        const double r = element_offset(l, 2, 0.06);
        auto q = los_geometry(l, 1, e, arr);
        CHECK_THAT(q.tx_element_to_rx_center, WithinAbs(std::hypot(160.0, r), 1e-12));
    }

    CHECK_THROWS_AS(los_geometry(3, 1, e, arr), std::invalid_argument);
    CHECK(los_arrival_angle(e) == pi);

    // LOS Doppler stays within +-f_max
    ArrayConfig big;
    for (std::size_t l = 1; l <= big.num_tx; l += 7)
        for (std::size_t k = 1; k <= big.num_rx; k += 5)
        {
            const double fd = los_doppler(los_geometry(l, k, e, big), 33.33, pi / 6, big.tilt_rx);
            CHECK(std::abs(fd) <= 33.33);
        }
}

TEST_CASE("Geometry - config validation")
{
    EllipseConfig bad{80.0, 80.0};
    CHECK_THROWS_WITH(bad.validate(), Catch::Matchers::ContainsSubstring("ellipse"));
    ArrayConfig arr;
    arr.spacing_rx = 0.0;
    CHECK_THROWS_AS(arr.validate(), std::invalid_argument);
    CHECK_THAT(wrap_angle(3.0 * pi / 2), WithinAbs(-pi / 2, 1e-15));
    CHECK(wrap_angle(pi) == -pi);
}

TEST_CASE("Geometry - LOS against Cartesian placement")
{
    const EllipseConfig e{100.0, 80.0};
    for (double bt : {0.3, pi / 2, 2.4})
        for (double br : {0.2, pi / 2, 2.9})
            for (double rt : {-3.0, -0.5, 0.0, 1.2, 4.0})
                for (double rr : {-4.0, -1.0, 0.0, 0.7, 3.0})
                {
                    const auto los = los_geometry_at(rt, rr, e, bt, br);
                    const double tx = -80.0 + rt * std::cos(bt), ty = rt * std::sin(bt);
                    const double rx = 80.0 + rr * std::cos(br), ry = rr * std::sin(br);
                    CHECK_THAT(los.tx_element_to_rx_center, WithinAbs(std::hypot(tx - 80.0, ty), 1e-11));
                    CHECK_THAT(los.tx_element_to_rx_element, WithinAbs(std::hypot(tx - rx, ty - ry), 1e-11));

                    const double arrival = std::atan2(ty - ry, tx - rx);
                    for (double av : {pi / 6, 2.0, -1.0})
                    {
                        const double fd = los_doppler(los, 33.33, av, br);
                        CHECK_THAT(fd, WithinAbs(33.33 * std::cos(arrival - av), 1e-9));

                        // Printed arcsin form, receive angles measured from the Tx direction; valid on the principal branch
                        const double beta = pi - br, psi = pi - arrival;
                        if (std::abs(wrap_angle(psi - beta)) < pi / 2 - 0.05)
                        {
                            const double arg = los.tx_element_to_rx_center / los.tx_element_to_rx_element * std::sin(los.aoa - beta);
                            CHECK_THAT(fd, WithinAbs(33.33 * std::cos(beta - (pi - av) + std::asin(arg)), 1e-9));
                        }
                    }
                }
}
