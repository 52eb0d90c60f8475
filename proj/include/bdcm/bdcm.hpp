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

#ifndef BDCM_BDCM_H
#define BDCM_BDCM_H

#include "bdcm/channel.hpp"
#include "bdcm/config.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace bdcm
{
    enum class Side
    {
        tx,
        rx
    };

    // Near-field array response on a virtual angle grid, one column per beam
    struct ResponseMatrix
    {
        Side side = Side::tx;
        Eigen::MatrixXcd entries; // (antennas x beams)
    };

    // [U_T]_{l,m} = exp(j k0 (D^T_m - D^T_{lm})), [U_R]_{k,m} = exp(j k0 (D^R_{km} - D^R_m)); beam and antenna are 1-based
    cdouble response_entry_tx(std::size_t l, std::size_t beam, const VirtualAngleGrid &grid, const EllipseConfig &ellipse,
                              const ArrayConfig &array, double wavelength);
    cdouble response_entry_rx(std::size_t k, std::size_t beam, const VirtualAngleGrid &grid, const EllipseConfig &ellipse,
                              const ArrayConfig &array, double wavelength);
    ResponseMatrix response_matrix(Side side, const VirtualAngleGrid &grid, const EllipseConfig &ellipse,
                                   const ArrayConfig &array, double wavelength);

    // f_m = f_max cos(theta_m - alpha_v)
    double beam_doppler(std::size_t beam, const VirtualAngleGrid &grid, double max_doppler, double velocity_angle);

    // Beam closest to the LOS arrival angle, ties broken toward the smaller index (1-based)
    std::size_t los_beam_index(const VirtualAngleGrid &grid, double los_angle);
    std::size_t los_beam_index(const VirtualAngleGrid &grid, const EllipseConfig &ellipse);

    // Per-beam power share of a cluster, sums to one. Von Mises density of the cluster AoA on the grid or 1/M.
    std::vector<double> beam_weights(const VirtualAngleGrid &grid, double mean_aoa, double kappa, BeamWeighting weighting);

    // Time-invariant per-cluster quantities of the beam domain
    struct BeamLayout
    {
        VirtualAngleGrid grid;
        EllipseConfig ellipse;
        std::vector<double> tx_center; // D^T_m
        std::vector<double> rx_center; // D^R_m
        std::vector<double> doppler;   // f_m
        std::vector<double> weight;    // w_m
        std::size_t los_beam = 0;      // m_0 (1-based)
        double los_doppler = 0.0;      // beam-center LOS Doppler
    };

    BeamLayout make_beam_layout(const Cluster &cluster, const SimulationConfig &config);

    // Diagonals of the LOS and NLOS beam-domain matrices of one cluster
    struct BeamDomainChannel
    {
        Eigen::VectorXcd los_diag;
        Eigen::VectorXcd nlos_diag;
        double delay = 0.0;
        std::size_t los_beam = 0;
    };

    BeamDomainChannel beam_domain_entries(const Cluster &cluster, const BeamLayout &layout, double t, const SimulationConfig &config);
    std::vector<BeamDomainChannel> beam_domain_entries(const ClusterSet &set, double t, const SimulationConfig &config);

    // U_R (H_BL + H_BN) U_T^H
    Eigen::MatrixXcd assemble_antenna_domain(const BeamDomainChannel &beam, const ResponseMatrix &U_T, const ResponseMatrix &U_R);

    // Scalar per-link form of the assembled channel, used for long lag grids
    ClusterResponse bdcm_response(const Link &link, const Cluster &cluster, const BeamLayout &layout, const SimulationConfig &config);
    cdouble bdcm_coefficient(std::size_t k, std::size_t l, const Cluster &cluster, double t, const SimulationConfig &config);

    // Full tensor through matrix assembly; clusters not visible to an element pair give exact zeros
    ChannelRealization bdcm_channel(std::span<const double> times, const ClusterSet &set, const SimulationConfig &config);
    ChannelRealization bdcm_matrix(double t, const ClusterSet &set, const SimulationConfig &config);
}

#endif
