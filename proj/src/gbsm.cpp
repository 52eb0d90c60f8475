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

#include "bdcm/gbsm.hpp"

#include <cmath>
#include <vector>

namespace bdcm
{
    ClusterResponse gbsm_response(const Link &link, const Cluster &cluster, const SimulationConfig &config)
    {
        ClusterResponse out;
        if (!link.sees(cluster))
            return out;

        const double K = config.rician_k;
        const double k0 = 2.0 * pi / config.wavelength;
        const EllipseConfig ellipse = cluster.ellipse(config.ellipse.focal_half);

        if (K > 0.0 && cluster.index == 1)
        {
            const LosGeometry los = los_geometry_at(link.tx_offset, link.rx_offset, ellipse, link.tilt_tx, link.tilt_rx);
            const double f = los_doppler(los, config.max_doppler, config.velocity_angle, link.tilt_rx);
            const double phase = cluster.los_phase + k0 * los.tx_element_to_rx_element;
            out.los.add(std::polar(std::sqrt(K / (K + 1.0)), phase), f);
        }

        const std::size_t S = cluster.ray_aoas.size();
        if (S == 0)
            return out;
        const double amp = std::sqrt(cluster.power / (K + 1.0)) / std::sqrt(double(S));
        out.nlos.amplitude.reserve(S);
        out.nlos.doppler.reserve(S);
        for (std::size_t i = 0; i < S; ++i)
        {
            const double aoa = cluster.ray_aoas[i];
            const double aod = aod_from_aoa(aoa, ellipse);
            const CenterDistances d = center_distances(aoa, ellipse);
            const double dt = element_distance(d.tx, aod, link.tx_offset, link.tilt_tx);
            const double dr = element_distance(d.rx, aoa, link.rx_offset, link.tilt_rx);
            const double phase = cluster.path_phases[i] + k0 * (dt + dr);
            out.nlos.add(std::polar(amp, phase), config.max_doppler * std::cos(aoa - config.velocity_angle));
        }
        return out;
    }

    cdouble gbsm_coefficient(std::size_t k, std::size_t l, const Cluster &cluster, double t, const SimulationConfig &config)
    {
        return gbsm_response(make_link(k, l, config.array), cluster, config).at(t);
    }

    ChannelRealization gbsm_channel(std::span<const double> times, const ClusterSet &set, const SimulationConfig &config)
    {
        const auto &array = config.array;
        ChannelRealization H(array.num_rx, array.num_tx, set.clusters.size(), std::vector<double>(times.begin(), times.end()));
        std::vector<cdouble> buf(times.size());
        for (std::size_t n = 0; n < set.clusters.size(); ++n)
        {
            const Cluster &c = set.clusters[n];
            H.delays[n] = c.delay;
            H.cluster_ids[n] = c.id;
            for (std::size_t k = 1; k <= array.num_rx; ++k)
                for (std::size_t l = 1; l <= array.num_tx; ++l)
                {
                    const ClusterResponse r = gbsm_response(make_link(k, l, array), c, config);
                    for (std::size_t ti = 0; ti < times.size(); ++ti)
                        H(k - 1, l - 1, n, ti) = r.at(times[ti]);
                }
        }
        return H;
    }

    ChannelRealization gbsm_matrix(double t, const ClusterSet &set, const SimulationConfig &config)
    {
        const double times[1] = {t};
        return gbsm_channel(times, set, config);
    }
}
