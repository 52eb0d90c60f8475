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

#include "bdcm/random.hpp"
#include "bdcm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bdcm
{
    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t derive_seed(std::uint64_t root, std::uint64_t member, Stream stream)
    {
        return splitmix64(splitmix64(root) ^ splitmix64(member + 0x632be59bd9b4e019ULL * std::uint64_t(stream)));
    }

    Rng make_stream(std::uint64_t root, std::uint64_t member, Stream stream)
    {
        return Rng(derive_seed(root, member, stream));
    }

    double uniform01(Rng &rng)
    {
        return double(rng() >> 11) * 0x1.0p-53;
    }

    double uniform_phase(Rng &rng)
    {
        return 2.0 * pi * uniform01(rng);
    }

    double uniform_angle(Rng &rng)
    {
        return -pi + 2.0 * pi * uniform01(rng);
    }

    double exponential(Rng &rng, double rate)
    {
        if (rate <= 0.0)
            return std::numeric_limits<double>::infinity();
        return -std::log1p(-uniform01(rng)) / rate;
    }

    std::uint64_t poisson(Rng &rng, double mean)
    {
        if (!(mean > 0.0))
            return 0;
        std::poisson_distribution<std::uint64_t> dist(mean);
        return dist(rng);
    }

    double von_mises(Rng &rng, double mu, double kappa)
    {
        if (std::isinf(kappa))
            return wrap_angle(mu);
        if (kappa < 1e-8)
            return uniform_angle(rng);
        if (kappa > 1e7)
        {
            // Wrapped normal limit; the rejection constants below lose precision here
            std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(kappa));
            return wrap_angle(mu + normal(rng));
        }

        const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
        const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
        const double r = (1.0 + rho * rho) / (2.0 * rho);

        double f = 0.0;
        while (true)
        {
            const double u1 = uniform01(rng), u2 = uniform01(rng);
            const double z = std::cos(pi * u1);
            f = (1.0 + r * z) / (r + z);
            const double c = kappa * (r - f);
            if (c * (2.0 - c) - u2 > 0.0)
                break;
            if (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0)
                break;
        }
        const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
        return wrap_angle(mu + sign * std::acos(std::clamp(f, -1.0, 1.0)));
    }
}
