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

#include "bdcm/bdcm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bdcm
{
    namespace
    {
        void check_beam(std::size_t beam, const VirtualAngleGrid &grid)
        {
            if (beam < 1 || beam > grid.num_beams || grid.aoa.size() != grid.num_beams || grid.aod.size() != grid.num_beams)
                throw std::invalid_argument("beam index " + std::to_string(beam) + " out of range");
        }

        double tx_center_distance(std::size_t beam, const VirtualAngleGrid &grid, const EllipseConfig &ellipse)
        {
            return center_distances(grid.aoa[beam - 1], ellipse).tx;
        }

        double rx_center_distance(std::size_t beam, const VirtualAngleGrid &grid, const EllipseConfig &ellipse)
        {
            return center_distances(grid.aoa[beam - 1], ellipse).rx;
        }

        // exp(j k0 (D^T_m - D^T_{lm}))
        cdouble tx_phasor(double k0, double center, double aod, double offset, double tilt)
        {
            return std::polar(1.0, k0 * (center - element_distance(center, aod, offset, tilt)));
        }

        // exp(j k0 (D^R_{km} - D^R_m))
        cdouble rx_phasor(double k0, double center, double aoa, double offset, double tilt)
        {
            return std::polar(1.0, k0 * (element_distance(center, aoa, offset, tilt) - center));
        }
    }

    cdouble response_entry_tx(std::size_t l, std::size_t beam, const VirtualAngleGrid &grid, const EllipseConfig &ellipse,
                              const ArrayConfig &array, double wavelength)
    {
        check_beam(beam, grid);
        if (l < 1 || l > array.num_tx)
            throw std::invalid_argument("response_entry_tx: antenna index out of range");
        const double k0 = 2.0 * pi / wavelength;
        return tx_phasor(k0, tx_center_distance(beam, grid, ellipse), grid.aod[beam - 1],
                         element_offset(l, array.num_tx, array.spacing_tx), array.tilt_tx);
    }

    cdouble response_entry_rx(std::size_t k, std::size_t beam, const VirtualAngleGrid &grid, const EllipseConfig &ellipse,
                              const ArrayConfig &array, double wavelength)
    {
        check_beam(beam, grid);
        if (k < 1 || k > array.num_rx)
            throw std::invalid_argument("response_entry_rx: antenna index out of range");
        const double k0 = 2.0 * pi / wavelength;
        return rx_phasor(k0, rx_center_distance(beam, grid, ellipse), grid.aoa[beam - 1],
                         element_offset(k, array.num_rx, array.spacing_rx), array.tilt_rx);
    }

    ResponseMatrix response_matrix(Side side, const VirtualAngleGrid &grid, const EllipseConfig &ellipse,
                                   const ArrayConfig &array, double wavelength)
    {
        if (!(wavelength > 0.0))
            throw std::invalid_argument("response_matrix: wavelength must be positive");
        if (grid.num_beams == 0)
            throw std::invalid_argument("response_matrix: empty angle grid");
        const double k0 = 2.0 * pi / wavelength;
        const std::size_t M = grid.num_beams;
        const std::size_t A = side == Side::tx ? array.num_tx : array.num_rx;

        ResponseMatrix U;
        U.side = side;
        U.entries.resize(Eigen::Index(A), Eigen::Index(M));
        for (std::size_t m = 1; m <= M; ++m)
        {
            const CenterDistances d = center_distances(grid.aoa[m - 1], ellipse);
            for (std::size_t a = 1; a <= A; ++a)
            {
                if (side == Side::tx)
                    U.entries(Eigen::Index(a - 1), Eigen::Index(m - 1)) =
                        tx_phasor(k0, d.tx, grid.aod[m - 1], element_offset(a, A, array.spacing_tx), array.tilt_tx);
                else
                    U.entries(Eigen::Index(a - 1), Eigen::Index(m - 1)) =
                        rx_phasor(k0, d.rx, grid.aoa[m - 1], element_offset(a, A, array.spacing_rx), array.tilt_rx);
            }
        }
        return U;
    }

    double beam_doppler(std::size_t beam, const VirtualAngleGrid &grid, double max_doppler, double velocity_angle)
    {
        check_beam(beam, grid);
        return max_doppler * std::cos(grid.aoa[beam - 1] - velocity_angle);
    }

    std::size_t los_beam_index(const VirtualAngleGrid &grid, double los_angle)
    {
        if (grid.num_beams == 0 || grid.aoa.size() != grid.num_beams)
            throw std::invalid_argument("los_beam_index: empty angle grid");
        std::size_t best = 1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t m = 1; m <= grid.num_beams; ++m)
        {
            const double dist = std::abs(wrap_angle(grid.aoa[m - 1] - los_angle));
            if (dist < best_dist - 1e-12) // ties keep the earlier beam
            {
                best = m;
                best_dist = dist;
            }
        }
        return best;
    }

    std::size_t los_beam_index(const VirtualAngleGrid &grid, const EllipseConfig &ellipse)
    {
        return los_beam_index(grid, los_arrival_angle(ellipse));
    }

    std::vector<double> beam_weights(const VirtualAngleGrid &grid, double mean_aoa, double kappa, BeamWeighting weighting)
    {
        const std::size_t M = grid.num_beams;
        if (M == 0)
            throw std::invalid_argument("beam_weights: empty angle grid");
        if (std::isnan(kappa) || kappa < 0.0)
            throw std::invalid_argument("beam_weights: kappa must be non-negative");

        std::vector<double> w(M, 1.0 / double(M));
        if (weighting == BeamWeighting::uniform || kappa == 0.0)
            return w;

        if (std::isinf(kappa))
        {
            std::fill(w.begin(), w.end(), 0.0);
            w[los_beam_index(grid, mean_aoa) - 1] = 1.0;
            return w;
        }

        double total = 0.0;
        for (std::size_t m = 0; m < M; ++m)
        {
            w[m] = std::exp(kappa * (std::cos(grid.aoa[m] - mean_aoa) - 1.0));
            total += w[m];
        }
        for (double &v : w)
            v /= total;
        return w;
    }

    BeamLayout make_beam_layout(const Cluster &cluster, const SimulationConfig &config)
    {
        const std::size_t M = config.num_beams;
        BeamLayout b;
        b.ellipse = cluster.ellipse(config.ellipse.focal_half);
        b.grid = make_angle_grid(M, b.ellipse);
        b.tx_center.resize(M);
        b.rx_center.resize(M);
        b.doppler.resize(M);
        for (std::size_t m = 0; m < M; ++m)
        {
            const CenterDistances d = center_distances(b.grid.aoa[m], b.ellipse);
            b.tx_center[m] = d.tx;
            b.rx_center[m] = d.rx;
            b.doppler[m] = config.max_doppler * std::cos(b.grid.aoa[m] - config.velocity_angle);
        }
        b.weight = beam_weights(b.grid, cluster.mean_aoa, config.von_mises_kappa, config.beam_weighting);
        b.los_beam = los_beam_index(b.grid, b.ellipse);
        const LosGeometry center = los_geometry_at(0.0, 0.0, b.ellipse, config.array.tilt_tx, config.array.tilt_rx);
        b.los_doppler = los_doppler(center, config.max_doppler, config.velocity_angle, config.array.tilt_rx);
        return b;
    }

    BeamDomainChannel beam_domain_entries(const Cluster &cluster, const BeamLayout &layout, double t, const SimulationConfig &config)
    {
        const std::size_t M = layout.grid.num_beams;
        if (cluster.path_phases.size() < M)
            throw std::invalid_argument("beam_domain_entries: cluster carries fewer phases than beams");
        const double K = config.rician_k;
        const double k0 = 2.0 * pi / config.wavelength;

        BeamDomainChannel out;
        out.delay = cluster.delay;
        out.los_beam = layout.los_beam;
        out.los_diag = Eigen::VectorXcd::Zero(Eigen::Index(M));
        out.nlos_diag.resize(Eigen::Index(M));
        for (std::size_t m = 0; m < M; ++m)
        {
            const double amp = std::sqrt(cluster.power * layout.weight[m] / (K + 1.0));
            const double phase = cluster.path_phases[m] + k0 * (layout.rx_center[m] + layout.tx_center[m]);
            out.nlos_diag[Eigen::Index(m)] = std::polar(amp, phase) * doppler_phasor(layout.doppler[m], t);
        }
        if (K > 0.0 && cluster.index == 1)
        {
            const std::size_t m0 = layout.los_beam - 1;
            const double phase = cluster.los_phase + k0 * (layout.rx_center[m0] - layout.tx_center[m0]);
            out.los_diag[Eigen::Index(m0)] = std::polar(std::sqrt(K / (K + 1.0)), phase) * doppler_phasor(layout.los_doppler, t);
        }
        return out;
    }

    std::vector<BeamDomainChannel> beam_domain_entries(const ClusterSet &set, double t, const SimulationConfig &config)
    {
        std::vector<BeamDomainChannel> out;
        out.reserve(set.clusters.size());
        for (const Cluster &c : set.clusters)
            out.push_back(beam_domain_entries(c, make_beam_layout(c, config), t, config));
        return out;
    }

    Eigen::MatrixXcd assemble_antenna_domain(const BeamDomainChannel &beam, const ResponseMatrix &U_T, const ResponseMatrix &U_R)
    {
        const Eigen::Index M = beam.nlos_diag.size();
        if (U_T.side != Side::tx || U_R.side != Side::rx)
            throw std::invalid_argument("assemble_antenna_domain: response matrices passed in the wrong order");
        if (beam.los_diag.size() != M || U_T.entries.cols() != M || U_R.entries.cols() != M)
            throw std::invalid_argument("assemble_antenna_domain: beam count mismatch (diag " + std::to_string(M) +
                                        ", U_T " + std::to_string(U_T.entries.cols()) + ", U_R " +
                                        std::to_string(U_R.entries.cols()) + ")");
        const Eigen::VectorXcd d = beam.los_diag + beam.nlos_diag;
        return U_R.entries * d.asDiagonal() * U_T.entries.adjoint();
    }

    ClusterResponse bdcm_response(const Link &link, const Cluster &cluster, const BeamLayout &layout, const SimulationConfig &config)
    {
        ClusterResponse out;
        if (!link.sees(cluster))
            return out;

        const std::size_t M = layout.grid.num_beams;
        const double k0 = 2.0 * pi / config.wavelength;
        const BeamDomainChannel entries = beam_domain_entries(cluster, layout, 0.0, config);

        auto steering = [&](std::size_t m)
        {
            const cdouble eT = tx_phasor(k0, layout.tx_center[m], layout.grid.aod[m], link.tx_offset, link.tilt_tx);
            const cdouble eR = rx_phasor(k0, layout.rx_center[m], layout.grid.aoa[m], link.rx_offset, link.tilt_rx);
            return eR * std::conj(eT);
        };

        const std::size_t m0 = layout.los_beam - 1;
        if (entries.los_diag[Eigen::Index(m0)] != cdouble(0.0, 0.0))
            out.los.add(entries.los_diag[Eigen::Index(m0)] * steering(m0), layout.los_doppler);

        out.nlos.amplitude.reserve(M);
        out.nlos.doppler.reserve(M);
        for (std::size_t m = 0; m < M; ++m)
            out.nlos.add(entries.nlos_diag[Eigen::Index(m)] * steering(m), layout.doppler[m]);
        return out;
    }

    cdouble bdcm_coefficient(std::size_t k, std::size_t l, const Cluster &cluster, double t, const SimulationConfig &config)
    {
        return bdcm_response(make_link(k, l, config.array), cluster, make_beam_layout(cluster, config), config).at(t);
    }

    ChannelRealization bdcm_channel(std::span<const double> times, const ClusterSet &set, const SimulationConfig &config)
    {
        const auto &array = config.array;
        ChannelRealization H(array.num_rx, array.num_tx, set.clusters.size(), std::vector<double>(times.begin(), times.end()));
        for (std::size_t n = 0; n < set.clusters.size(); ++n)
        {
            const Cluster &c = set.clusters[n];
            H.delays[n] = c.delay;
            H.cluster_ids[n] = c.id;
            const BeamLayout layout = make_beam_layout(c, config);
            const ResponseMatrix U_T = response_matrix(Side::tx, layout.grid, layout.ellipse, array, config.wavelength);
            const ResponseMatrix U_R = response_matrix(Side::rx, layout.grid, layout.ellipse, array, config.wavelength);
            for (std::size_t ti = 0; ti < times.size(); ++ti)
            {
                const Eigen::MatrixXcd Hn = assemble_antenna_domain(beam_domain_entries(c, layout, times[ti], config), U_T, U_R);
                for (std::size_t k = 1; k <= array.num_rx; ++k)
                    for (std::size_t l = 1; l <= array.num_tx; ++l)
                        H(k - 1, l - 1, n, ti) = c.visible(k, l, array) ? Hn(Eigen::Index(k - 1), Eigen::Index(l - 1)) : cdouble(0.0, 0.0);
            }
        }
        return H;
    }

    ChannelRealization bdcm_matrix(double t, const ClusterSet &set, const SimulationConfig &config)
    {
        const double times[1] = {t};
        return bdcm_channel(times, set, config);
    }
}
