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

#ifndef BDCM_CHANNEL_H
#define BDCM_CHANNEL_H

#include "bdcm/cluster.hpp"
#include "bdcm/geometry.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bdcm
{
    using cdouble = std::complex<double>;

    // exp(j 2 pi f t)
    inline cdouble doppler_phasor(double frequency, double t)
    {
        return std::polar(1.0, 2.0 * pi * frequency * t);
    }

    // One antenna pair (k, l). Offsets are measured from the array centers along the array axes; positions are
    // measured from element 1 and drive the visibility gating.
    struct Link
    {
        std::size_t k = 1;
        std::size_t l = 1;
        double rx_offset = 0.0;
        double tx_offset = 0.0;
        double rx_position = 0.0;
        double tx_position = 0.0;
        double tilt_rx = 0.0;
        double tilt_tx = 0.0;

        bool sees(const Cluster &cluster) const
        {
            return cluster.rx_span.contains(rx_position) && cluster.tx_span.contains(tx_position);
        }
    };

    Link make_link(std::size_t k, std::size_t l, const ArrayConfig &array);

    // Sum of Doppler-shifted phasors: h(t) = sum_p amplitude_p * exp(j 2 pi doppler_p t)
    struct PathSum
    {
        std::vector<cdouble> amplitude;
        std::vector<double> doppler;

        void add(cdouble a, double f)
        {
            amplitude.push_back(a);
            doppler.push_back(f);
        }
        std::size_t size() const { return amplitude.size(); }
        bool empty() const { return amplitude.empty(); }

        cdouble at(double t) const;

        // out[j] = h(times[j]). Equally spaced times use a phasor recurrence, anything else is evaluated directly.
        void evaluate(std::span<const double> times, std::span<cdouble> out) const;
    };

    // Channel of one cluster on one link, split so the NLOS part can be rescaled when cluster powers are renormalized
    struct ClusterResponse
    {
        PathSum los;
        PathSum nlos;

        cdouble at(double t, double nlos_scale = 1.0) const { return los.at(t) + nlos_scale * nlos.at(t); }
    };

    // Coefficient tensor indexed (k, l, n, time), all zero-based here
    struct ChannelRealization
    {
        std::size_t num_rx = 0;
        std::size_t num_tx = 0;
        std::size_t num_clusters = 0;
        std::vector<double> times;
        std::vector<double> delays; // tau_n
        std::vector<std::uint64_t> cluster_ids;
        std::vector<cdouble> coefficients;

        ChannelRealization() = default;
        ChannelRealization(std::size_t rx, std::size_t tx, std::size_t clusters, std::vector<double> time_samples);

        cdouble &operator()(std::size_t k, std::size_t l, std::size_t n, std::size_t ti)
        {
            return coefficients[((ti * num_clusters + n) * num_rx + k) * num_tx + l];
        }
        cdouble operator()(std::size_t k, std::size_t l, std::size_t n, std::size_t ti) const
        {
            return coefficients[((ti * num_clusters + n) * num_rx + k) * num_tx + l];
        }
    };
}

#endif
