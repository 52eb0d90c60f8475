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

#include "bdcm/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bdcm
{
    Link make_link(std::size_t k, std::size_t l, const ArrayConfig &array)
    {
        if (k < 1 || k > array.num_rx)
            throw std::invalid_argument("make_link: receive index " + std::to_string(k) + " out of range");
        if (l < 1 || l > array.num_tx)
            throw std::invalid_argument("make_link: transmit index " + std::to_string(l) + " out of range");

        Link link;
        link.k = k;
        link.l = l;
        link.rx_offset = element_offset(k, array.num_rx, array.spacing_rx);
        link.tx_offset = element_offset(l, array.num_tx, array.spacing_tx);
        link.rx_position = double(k - 1) * array.spacing_rx;
        link.tx_position = double(l - 1) * array.spacing_tx;
        link.tilt_rx = array.tilt_rx;
        link.tilt_tx = array.tilt_tx;
        return link;
    }

    cdouble PathSum::at(double t) const
    {
        cdouble sum{0.0, 0.0};
        for (std::size_t p = 0; p < amplitude.size(); ++p)
            sum += amplitude[p] * doppler_phasor(doppler[p], t);
        return sum;
    }

    void PathSum::evaluate(std::span<const double> times, std::span<cdouble> out) const
    {
        if (out.size() != times.size())
            throw std::invalid_argument("PathSum::evaluate: output size mismatch");
        for (auto &v : out)
            v = {0.0, 0.0};
        if (times.empty())
            return;

        const std::size_t n = times.size();
        bool uniform = n > 2;
        const double step = n > 1 ? (times[n - 1] - times[0]) / double(n - 1) : 0.0;
        for (std::size_t j = 0; uniform && j < n; ++j)
            uniform = std::abs(times[j] - (times[0] + double(j) * step)) <= 1e-12 * (1.0 + std::abs(times[j]));

        for (std::size_t p = 0; p < amplitude.size(); ++p)
        {
            if (uniform)
            {
                cdouble v = amplitude[p] * doppler_phasor(doppler[p], times[0]);
                const cdouble rot = doppler_phasor(doppler[p], step);
                for (std::size_t j = 0; j < n; ++j)
                {
                    out[j] += v;
                    v *= rot;
                }
            }
            else
            {
                for (std::size_t j = 0; j < n; ++j)
                    out[j] += amplitude[p] * doppler_phasor(doppler[p], times[j]);
            }
        }
    }

    ChannelRealization::ChannelRealization(std::size_t rx, std::size_t tx, std::size_t clusters, std::vector<double> time_samples)
        : num_rx(rx), num_tx(tx), num_clusters(clusters), times(std::move(time_samples)),
          delays(clusters, 0.0), cluster_ids(clusters, 0), coefficients(rx * tx * clusters * times.size())
    {
    }
}
