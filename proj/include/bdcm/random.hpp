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

#ifndef BDCM_RANDOM_H
#define BDCM_RANDOM_H

#include <cstdint>
#include <random>

namespace bdcm
{
    using Rng = std::mt19937_64;

    // Stream tags for the per-realization generators
    enum class Stream : std::uint64_t
    {
        clusters = 1,  // cluster set, ray angles, phases, array and time evolution
        replicate = 2, // independent replicate ensembles (error-scaling checks)
    };

    std::uint64_t splitmix64(std::uint64_t x);

    // Seed of ensemble member `member` derived from the root seed. Depends only on (root, member, stream),
    // so changing the ensemble size never perturbs earlier members.
    std::uint64_t derive_seed(std::uint64_t root, std::uint64_t member, Stream stream = Stream::clusters);

    Rng make_stream(std::uint64_t root, std::uint64_t member, Stream stream = Stream::clusters);

    double uniform01(Rng &rng);                  // [0, 1), 53 random bits
    double uniform_phase(Rng &rng);              // [0, 2*pi)
    double uniform_angle(Rng &rng);              // [-pi, pi)
    double exponential(Rng &rng, double rate);   // +inf when rate == 0
    std::uint64_t poisson(Rng &rng, double mean);

    // Von Mises angle with mean `mu` and concentration `kappa` (Best-Fisher rejection sampler), wrapped to [-pi, pi).
    // kappa = 0 gives a uniform angle, kappa = +inf returns mu.
    double von_mises(Rng &rng, double mu, double kappa);
}

#endif
