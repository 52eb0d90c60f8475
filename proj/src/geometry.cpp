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

#include "bdcm/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace bdcm
{
    namespace
    {
        double checked_asin(double arg, const char *what)
        {
            constexpr double slack = 1e-9;
            if (!(std::abs(arg) <= 1.0 + slack))
                throw GeometryError(std::string(what) + ": arcsin argument " + std::to_string(arg) + " outside [-1, 1]");
            return std::asin(std::clamp(arg, -1.0, 1.0));
        }
    }

    double wrap_angle(double angle)
    {
        double wrapped = angle - 2.0 * pi * std::floor((angle + pi) / (2.0 * pi));
        if (wrapped >= pi) // guards against rounding right at the upper edge
            wrapped -= 2.0 * pi;
        return wrapped;
    }

    void ArrayConfig::validate() const
    {
        if (num_tx < 1)
            throw std::invalid_argument("array.num_tx must be >= 1");
        if (num_rx < 1)
            throw std::invalid_argument("array.num_rx must be >= 1");
        if (!(spacing_tx > 0.0))
            throw std::invalid_argument("array.spacing_tx must be > 0");
        if (!(spacing_rx > 0.0))
            throw std::invalid_argument("array.spacing_rx must be > 0");
        if (!(tilt_tx >= 0.0 && tilt_tx < pi))
            throw std::invalid_argument("array.tilt_tx must lie in [0, pi)");
        if (!(tilt_rx >= 0.0 && tilt_rx < pi))
            throw std::invalid_argument("array.tilt_rx must lie in [0, pi)");
    }

    void EllipseConfig::validate() const
    {
        if (!(focal_half > 0.0))
            throw std::invalid_argument("ellipse.focal_half must be > 0");
        if (!(semi_major > focal_half))
            throw std::invalid_argument("ellipse.semi_major must exceed ellipse.focal_half");
    }

    std::vector<double> virtual_angles(std::size_t num_beams)
    {
        if (num_beams == 0)
            throw std::invalid_argument("virtual_angles: num_beams must be >= 1");

        std::vector<double> angles(num_beams);
        const double M = double(num_beams);
        for (std::size_t m = 1; m <= num_beams; ++m)
            angles[m - 1] = -pi + 2.0 * pi * (double(m) / M);
        return angles;
    }

    VirtualAngleGrid make_angle_grid(std::size_t num_beams, const EllipseConfig &ellipse)
    {
        VirtualAngleGrid grid;
        grid.num_beams = num_beams;
        grid.aoa = virtual_angles(num_beams);
        grid.aod.reserve(num_beams);
        for (double theta : grid.aoa)
            grid.aod.push_back(aod_from_aoa(theta, ellipse));
        return grid;
    }

    double aod_from_aoa(double aoa, const EllipseConfig &ellipse)
    {
        const double a = ellipse.semi_major, f = ellipse.focal_half;
        const double r = ellipse.semi_minor_squared() / (a + f * std::cos(aoa));

        // Scatterer relative to the Rx focus at (+f, 0), then seen from the Tx focus at (-f, 0)
        const double x = f + r * std::cos(aoa);
        const double y = r * std::sin(aoa);
        return std::atan2(y, x + f);
    }

    CenterDistances center_distances(double aoa, const EllipseConfig &ellipse)
    {
        const double a = ellipse.semi_major, f = ellipse.focal_half;
        const double rx = ellipse.semi_minor_squared() / (a + f * std::cos(aoa));
        return {2.0 * a - rx, rx};
    }

    CenterDistances center_distances(double aoa, double aod, const EllipseConfig &ellipse)
    {
        const double a = ellipse.semi_major, f = ellipse.focal_half;
        const double s_rx = std::sin(aoa), s_tx = std::sin(aod);
        const double denom = s_rx + s_tx;

        if (std::abs(denom) < 1e-12)
        {
            // Collinear scatterer: beyond the Rx (aoa = 0) or behind the Tx (aoa = pi)
            if (std::cos(aoa) > 0.0)
                return {a + f, a - f};
            return {a - f, a + f};
        }
        return {2.0 * a * s_rx / denom, 2.0 * a * s_tx / denom};
    }

    double element_offset(std::size_t index, std::size_t count, double spacing)
    {
        return (double(count) - 2.0 * double(index) + 1.0) / 2.0 * spacing;
    }

    double element_distance(double center_dist, double angle, double offset, double tilt)
    {
        const double sq = center_dist * center_dist + offset * offset - 2.0 * center_dist * offset * std::cos(angle - tilt);
        return std::sqrt(std::max(sq, 0.0));
    }

    double antenna_distance_tx(double center_dist, double aod, std::size_t antenna_index, const ArrayConfig &array)
    {
        if (antenna_index < 1 || antenna_index > array.num_tx)
            throw std::invalid_argument("antenna_distance_tx: index " + std::to_string(antenna_index) + " out of range");
        const double r = element_offset(antenna_index, array.num_tx, array.spacing_tx);
        return element_distance(center_dist, aod, r, array.tilt_tx);
    }

    double antenna_distance_rx(double center_dist, double aoa, std::size_t antenna_index, const ArrayConfig &array)
    {
        if (antenna_index < 1 || antenna_index > array.num_rx)
            throw std::invalid_argument("antenna_distance_rx: index " + std::to_string(antenna_index) + " out of range");
        const double r = element_offset(antenna_index, array.num_rx, array.spacing_rx);
        return element_distance(center_dist, aoa, r, array.tilt_rx);
    }

    LosGeometry los_geometry_at(double tx_offset, double rx_offset, const EllipseConfig &ellipse, double tilt_tx, double tilt_rx)
    {
        const double sep = 2.0 * ellipse.focal_half;

        LosGeometry los;
        los.tx_element_to_rx_center = std::sqrt(sep * sep + tx_offset * tx_offset - 2.0 * sep * tx_offset * std::cos(tilt_tx));
        if (!(los.tx_element_to_rx_center > 0.0))
            throw GeometryError("los_geometry: transmit element coincides with the receive array center");

        los.aoa = checked_asin(tx_offset * std::sin(tilt_tx) / los.tx_element_to_rx_center, "los_geometry");

        // Receive-side LOS angles are measured from the direction of the Tx: beta' = pi - beta_R
        const double d = los.tx_element_to_rx_center;
        const double sq = d * d + rx_offset * rx_offset - 2.0 * rx_offset * d * std::cos(los.aoa - (pi - tilt_rx));
        los.tx_element_to_rx_element = std::sqrt(std::max(sq, 0.0));
        los.rx_offset = rx_offset;
        return los;
    }

    LosGeometry los_geometry(std::size_t antenna_l, std::size_t antenna_k, const EllipseConfig &ellipse, const ArrayConfig &array)
    {
        if (antenna_l < 1 || antenna_l > array.num_tx)
            throw std::invalid_argument("los_geometry: transmit index out of range");
        if (antenna_k < 1 || antenna_k > array.num_rx)
            throw std::invalid_argument("los_geometry: receive index out of range");

        return los_geometry_at(element_offset(antenna_l, array.num_tx, array.spacing_tx),
                               element_offset(antenna_k, array.num_rx, array.spacing_rx),
                               ellipse, array.tilt_tx, array.tilt_rx);
    }

    double los_doppler(const LosGeometry &los, double max_doppler, double velocity_angle, double tilt_rx)
    {
        if (!(los.tx_element_to_rx_element > 0.0))
            throw GeometryError("los_doppler: zero LOS distance");
        const double beta = pi - tilt_rx, alpha_v = pi - velocity_angle;
        const double d = los.tx_element_to_rx_center, r = los.rx_offset;
        const double arrival = std::atan2(d * std::sin(los.aoa) - r * std::sin(beta), d * std::cos(los.aoa) - r * std::cos(beta));
        return max_doppler * std::cos(arrival - alpha_v);
    }

    double los_arrival_angle(const EllipseConfig &ellipse)
    {
        return std::atan2(0.0, -2.0 * ellipse.focal_half);
    }
}
