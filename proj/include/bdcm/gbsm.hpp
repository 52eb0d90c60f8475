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

#ifndef BDCM_GBSM_H
#define BDCM_GBSM_H

#include "bdcm/channel.hpp"
#include "bdcm/config.hpp"

#include <span>

namespace bdcm
{
    // Antenna-domain cluster channel: LOS term on the first cluster only, plus S NLOS rays whose phases use the
    // exact element-to-scatterer distances. Empty when the cluster is not visible to the link.
    ClusterResponse gbsm_response(const Link &link, const Cluster &cluster, const SimulationConfig &config);

    // h^G_{kl,n}(t); exactly zero when the cluster is outside C_l^T and C_k^R
    cdouble gbsm_coefficient(std::size_t k, std::size_t l, const Cluster &cluster, double t, const SimulationConfig &config);

    ChannelRealization gbsm_matrix(double t, const ClusterSet &set, const SimulationConfig &config);
    ChannelRealization gbsm_channel(std::span<const double> times, const ClusterSet &set, const SimulationConfig &config);
}

#endif
