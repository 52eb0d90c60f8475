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

#include "bdcm/complexity.hpp"

#include <stdexcept>
#include <string>

namespace bdcm
{
    namespace
    {
        void require_positive(std::uint64_t v, const char *name)
        {
            if (v == 0)
                throw std::invalid_argument(std::string("complexity: ") + name + " must be at least 1");
        }
    }

    RoSplit ro_gbsm_split(std::uint64_t num_rx, std::uint64_t num_tx, std::uint64_t rays, std::uint64_t clusters)
    {
        require_positive(num_rx, "M_R");
        require_positive(num_tx, "M_T");
        require_positive(rays, "S");
        require_positive(clusters, "N_total");

        const RoCount pairs = RoCount(num_rx) * num_tx;
        RoSplit r;
        r.los = 174 * pairs + 3;
        r.nlos = RoCount(clusters) * ((RoCount(rays) - 1) * (208 * pairs + 19) + 4);
        r.total = r.los + r.nlos + 1;
        return r;
    }

    RoCount ro_gbsm(std::uint64_t num_rx, std::uint64_t num_tx, std::uint64_t rays, std::uint64_t clusters)
    {
        return ro_gbsm_split(num_rx, num_tx, rays, clusters).total;
    }

    RoSplit ro_bdcm_split(std::uint64_t num_rx, std::uint64_t num_tx, std::uint64_t beams)
    {
        require_positive(num_rx, "M_R");
        require_positive(num_tx, "M_T");
        require_positive(beams, "M");

        const RoCount sum = RoCount(num_rx) + num_tx;
        RoSplit r;
        r.los = 3 + (122 * sum + 181) * beams;
        r.nlos = 3 + (122 * sum + 77) * beams;
        r.total = r.los + r.nlos;
        return r;
    }

    RoCount ro_bdcm(std::uint64_t num_rx, std::uint64_t num_tx, std::uint64_t beams)
    {
        const RoCount sum = RoCount(num_rx) + num_tx;
        require_positive(num_rx, "M_R");
        require_positive(num_tx, "M_T");
        require_positive(beams, "M");
        return 6 + (244 * sum + 258) * beams;
    }

    std::vector<ComplexityRow> complexity_sweep(std::span<const std::uint64_t> antennas, std::uint64_t rays,
                                                std::uint64_t clusters, std::span<const std::uint64_t> beams)
    {
        if (antennas.empty() || beams.empty())
            throw std::invalid_argument("complexity_sweep: empty parameter range");
        std::vector<ComplexityRow> rows;
        for (std::uint64_t M : beams)
            for (std::uint64_t a : antennas)
            {
                ComplexityRow row;
                row.antennas = a;
                row.antenna_pairs = a * a;
                row.beams = M;
                row.gbsm = ro_gbsm(a, a, rays, clusters);
                row.bdcm = ro_bdcm(a, a, M);
                rows.push_back(std::move(row));
            }
        return rows;
    }
}
