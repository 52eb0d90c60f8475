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

#ifndef BDCM_GEOMETRY_H
#define BDCM_GEOMETRY_H

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdcm
{
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0; // m/s

    // Raised when a configuration produces an impossible triangle (e.g. an arcsin argument outside [-1, 1])
    class GeometryError : public std::domain_error
    {
    public:
        explicit GeometryError(const std::string &what) : std::domain_error(what) {}
    };

    // Wraps an angle to [-pi, pi)
    double wrap_angle(double angle);

    // Uniform linear arrays at both link ends.
    // Element l = 1 sits at the "+r" end, i.e. at offset (count - 1) / 2 * spacing along the array axis.
    struct ArrayConfig
    {
        std::size_t num_tx = 32;  // M_T
        std::size_t num_rx = 32;  // M_R
        double spacing_tx = 0.06; // delta_T [m]
        double spacing_rx = 0.06; // delta_R [m]
        double tilt_tx = pi / 2;  // beta_T [rad], array axis w.r.t. the Tx->Rx line
        double tilt_rx = pi / 2;  // beta_R [rad]

        // Throws std::invalid_argument naming the offending field
        void validate() const;

        bool operator==(const ArrayConfig &) const = default;
    };

    // Confocal ellipse with the Tx center at (-f, 0) and the Rx center at (+f, 0)
    struct EllipseConfig
    {
        double semi_major = 100.0; // a [m]
        double focal_half = 80.0;  // f [m], half the Tx-Rx separation

        double semi_minor_squared() const { return semi_major * semi_major - focal_half * focal_half; }
        void validate() const;

        bool operator==(const EllipseConfig &) const = default;
    };

    // Beam directions theta_m = -pi + 2*pi*m/M (m = 1..M) and the matching departure angles on one ellipse.
    // Vectors are stored zero-based: aoa[m-1] is theta_m.
    struct VirtualAngleGrid
    {
        std::size_t num_beams = 0;
        std::vector<double> aoa;
        std::vector<double> aod;
    };

    std::vector<double> virtual_angles(std::size_t num_beams);
    VirtualAngleGrid make_angle_grid(std::size_t num_beams, const EllipseConfig &ellipse);

    // Places the scatterer on the ellipse at polar angle `aoa` seen from the Rx focus and returns the angle
    // at which the Tx focus sees it. Result lies in (-pi, pi].
    double aod_from_aoa(double aoa, const EllipseConfig &ellipse);

    struct CenterDistances
    {
        double tx = 0.0; // Tx center -> scatterer [m]
        double rx = 0.0; // Rx center -> scatterer [m]
    };

    // Distances from both array centers to the scatterer at `aoa`, from the focal polar equation.
    // tx + rx equals 2a by construction.
    CenterDistances center_distances(double aoa, const EllipseConfig &ellipse);

    // Same distances through the law-of-sines ratio 2a*sin(theta)/(sin(phi)+sin(theta)) for the Tx side
    // (interior-angle convention). Collinear pairs fall back to a +/- f.
    CenterDistances center_distances(double aoa, double aod, const EllipseConfig &ellipse);

    // Signed position of element `index` (1-based) along the array axis, relative to the array center
    double element_offset(std::size_t index, std::size_t count, double spacing);

    // Law of cosines: distance from an element at `offset` along an axis with orientation `tilt` to a point at
    // `center_dist` in direction `angle` from the array center
    double element_distance(double center_dist, double angle, double offset, double tilt);

    // D^T_{l m}: transmit element l (1-based) to the scatterer
    double antenna_distance_tx(double center_dist, double aod, std::size_t antenna_index, const ArrayConfig &array);

    // D^R_{k m}: receive element k (1-based) to the scatterer
    double antenna_distance_rx(double center_dist, double aoa, std::size_t antenna_index, const ArrayConfig &array);

    struct LosGeometry
    {
        double tx_element_to_rx_center = 0.0; // D_l^BL [m]
        double aoa = 0.0;                     // alpha_l^BL [rad]
        double tx_element_to_rx_element = 0.0; // D_kl^BL [m]
        double rx_offset = 0.0;                // receive element offset the distances refer to [m]
    };

    LosGeometry los_geometry(std::size_t antenna_l, std::size_t antenna_k, const EllipseConfig &ellipse, const ArrayConfig &array);

    // Offset-based variant; offsets may be zero (array centers) or refer to arrays with arbitrary spacing
    LosGeometry los_geometry_at(double tx_offset, double rx_offset, const EllipseConfig &ellipse, double tilt_tx, double tilt_rx);

    // LOS Doppler frequency f_kl for the given LOS geometry. The arrival angle at element k is taken with atan2, which
    // equals beta' + asin(D_l / D_kl * sin(alpha - beta')) wherever that arcsin is on its principal branch.
    double los_doppler(const LosGeometry &los, double max_doppler, double velocity_angle, double tilt_rx);

    // Arrival angle of the direct path at the Rx center (Tx center direction)
    double los_arrival_angle(const EllipseConfig &ellipse);
}

#endif
