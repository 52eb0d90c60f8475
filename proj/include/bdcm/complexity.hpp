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

#ifndef BDCM_COMPLEXITY_H
#define BDCM_COMPLEXITY_H

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace bdcm
{
    using RoCount = boost::multiprecision::cpp_int;

    struct RoSplit
    {
        RoCount los;
        RoCount nlos;
        RoCount total;
    };

    // Real-operation count of the antenna-domain model:
    // 174 M_R M_T + 3 + N [(S - 1)(208 M_R M_T + 19) + 4] + 1, the trailing 1 combining LOS and NLOS
    RoCount ro_gbsm(std::uint64_t num_rx, std::uint64_t num_tx, std::uint64_t rays, std::uint64_t clusters);
    RoSplit ro_gbsm_split(std::uint64_t num_rx, std::uint64_t num_tx, std::uint64_t rays, std::uint64_t clusters);

    // Real-operation count of the beam-domain model: 6 + [244 (M_R + M_T) + 258] M.
    // LOS part 3 + [122 (M_R + M_T) + 181] M, NLOS part 3 + [122 (M_R + M_T) + 77] M; they add up to the total.
    RoCount ro_bdcm(std::uint64_t num_rx, std::uint64_t num_tx, std::uint64_t beams);
    RoSplit ro_bdcm_split(std::uint64_t num_rx, std::uint64_t num_tx, std::uint64_t beams);

    struct ComplexityRow
    {
        std::uint64_t antennas = 0;      // M_R = M_T
        std::uint64_t antenna_pairs = 0; // M_R M_T
        std::uint64_t beams = 0;         // M
        RoCount gbsm;
        RoCount bdcm;
    };

    // Cross product of square array sizes and beam counts
    std::vector<ComplexityRow> complexity_sweep(std::span<const std::uint64_t> antennas, std::uint64_t rays,
                                                std::uint64_t clusters, std::span<const std::uint64_t> beams);
}

#endif
