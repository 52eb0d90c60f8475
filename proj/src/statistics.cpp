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

#include "bdcm/statistics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bdcm
{
    namespace
    {
        constexpr std::size_t block_size = 64;

        constexpr std::size_t tri(std::size_t i, std::size_t j) // i <= j < 4
        {
            return i * 4 - i * (i + 1) / 2 + j;
        }

        // Conjugate product with the self-correlation case kept exactly real
        cdouble cross_product(cdouble a, cdouble b) // conj(a) * b
        {
            if (a == b)
                return {std::norm(a), 0.0};
            return std::conj(a) * b;
        }

        void per_realization(std::span<cdouble> X, std::span<double> A, std::span<double> B)
        {
            for (std::size_t j = 0; j < X.size(); ++j)
            {
                const double d = std::sqrt(A[j] * B[j]);
                if (d > 0.0)
                {
                    X[j] = X[j].real() == A[j] && X[j].imag() == 0.0 && A[j] == B[j] ? cdouble(1.0, 0.0) : X[j] / d;
                    A[j] = 1.0;
                    B[j] = 1.0;
                }
                else
                {
                    X[j] = 0.0;
                    A[j] = 0.0;
                    B[j] = 0.0;
                }
            }
        }

        // Wraps an estimator kernel with the configured normalization convention
        LagMoments estimate(std::size_t lags, const SimulationConfig &config, const MemberKernel &kernel)
        {
            if (config.ensemble == 0)
                throw std::invalid_argument("correlation estimator: ensemble must be at least 1");
            if (config.normalization == Normalization::ensemble)
                return run_ensemble(lags, config.ensemble, kernel);
            return run_ensemble(lags, config.ensemble,
                                [&](std::size_t m, std::span<cdouble> X, std::span<double> A, std::span<double> B)
                                {
                                    kernel(m, X, A, B);
                                    per_realization(X, A, B);
                                });
        }

        CorrelationSeries make_series(const LagMoments &mom, std::span<const double> lag, Model model, CorrelationKind kind,
                                      double t, std::size_t cluster_index)
        {
            CorrelationSeries s;
            s.lag.assign(lag.begin(), lag.end());
            s.ensemble = mom.count();
            s.model = model;
            s.kind = kind;
            s.eval_time = t;
            s.cluster_index = cluster_index;
            for (std::size_t j = 0; j < lag.size(); ++j)
            {
                s.values.push_back(mom.value(j));
                s.magnitude.push_back(mom.magnitude(j));
                s.std_error.push_back(mom.std_error(j));
            }
            return s;
        }

        // Per-member layout cache for the beam-domain model
        class ResponseCache
        {
          public:
            ResponseCache(Model model, const SimulationConfig &config) : model_(model), config_(config) {}

            ClusterResponse operator()(const Link &link, const Cluster &cluster)
            {
                if (!link.sees(cluster))
                    return {};
                if (model_ == Model::gbsm)
                    return gbsm_response(link, cluster, config_);
                for (const auto &[id, layout] : layouts_)
                    if (id == cluster.id)
                        return bdcm_response(link, cluster, layout, config_);
                layouts_.emplace_back(cluster.id, make_beam_layout(cluster, config_));
                return bdcm_response(link, cluster, layouts_.back().second, config_);
            }

          private:
            Model model_;
            const SimulationConfig &config_;
            std::vector<std::pair<std::uint64_t, BeamLayout>> layouts_;
        };

        void zero(std::span<cdouble> X, std::span<double> A, std::span<double> B)
        {
            std::fill(X.begin(), X.end(), cdouble(0.0, 0.0));
            std::fill(A.begin(), A.end(), 0.0);
            std::fill(B.begin(), B.end(), 0.0);
        }
    }

    std::string to_string(CorrelationKind kind)
    {
        switch (kind)
        {
        case CorrelationKind::space_ccf:
            return "space_ccf";
        case CorrelationKind::time_acf:
            return "time_acf";
        case CorrelationKind::fcf:
            return "fcf";
        case CorrelationKind::stfcf:
            return "stfcf";
        }
        return "unknown";
    }

    CorrelationKind correlation_kind_from_string(const std::string &name)
    {
        for (auto k : {CorrelationKind::space_ccf, CorrelationKind::time_acf, CorrelationKind::fcf, CorrelationKind::stfcf})
            if (to_string(k) == name)
                return k;
        throw std::invalid_argument("unknown correlation kind '" + name + "'");
    }

    // ---- LagMoments ----

    LagMoments::LagMoments(std::size_t lags) : sum_(lags, {0.0, 0.0, 0.0, 0.0}), cross_(lags)
    {
        for (auto &c : cross_)
            c.fill(0.0);
    }

    void LagMoments::add(std::span<const cdouble> X, std::span<const double> A, std::span<const double> B)
    {
        if (X.size() != sum_.size() || A.size() != sum_.size() || B.size() != sum_.size())
            throw std::invalid_argument("LagMoments::add: lag count mismatch");
        for (std::size_t j = 0; j < sum_.size(); ++j)
        {
            const double v[4] = {X[j].real(), X[j].imag(), A[j], B[j]};
            for (std::size_t a = 0; a < 4; ++a)
            {
                sum_[j][a] += v[a];
                for (std::size_t b = a; b < 4; ++b)
                    cross_[j][tri(a, b)] += v[a] * v[b];
            }
        }
        ++count_;
    }

    void LagMoments::merge(const LagMoments &other)
    {
        if (other.sum_.size() != sum_.size())
            throw std::invalid_argument("LagMoments::merge: lag count mismatch");
        for (std::size_t j = 0; j < sum_.size(); ++j)
        {
            for (std::size_t a = 0; a < 4; ++a)
                sum_[j][a] += other.sum_[j][a];
            for (std::size_t a = 0; a < 10; ++a)
                cross_[j][a] += other.cross_[j][a];
        }
        count_ += other.count_;
    }

    cdouble LagMoments::value(std::size_t lag) const
    {
        const auto &s = sum_.at(lag);
        const double d = std::sqrt(s[2] * s[3]);
        if (!(d > 0.0))
            return {0.0, 0.0};
        if (s[0] == s[2] && s[1] == 0.0 && s[2] == s[3])
            return {1.0, 0.0};
        return cdouble(s[0], s[1]) / d;
    }

    double LagMoments::magnitude(std::size_t lag) const
    {
        return std::abs(value(lag));
    }

    double LagMoments::std_error(std::size_t lag) const
    {
        if (count_ < 2)
            return 0.0;
        const double N = double(count_);
        const auto &s = sum_.at(lag);
        const auto &c = cross_.at(lag);
        double mu[4], cov[4][4];
        for (std::size_t a = 0; a < 4; ++a)
            mu[a] = s[a] / N;
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a; b < 4; ++b)
                cov[a][b] = cov[b][a] = (c[tri(a, b)] - N * mu[a] * mu[b]) / (N - 1.0);

        const double den = std::sqrt(mu[2] * mu[3]);
        if (!(den > 0.0))
            return 0.0;
        const double r = std::hypot(mu[0], mu[1]);
        if (r == 0.0)
            return std::sqrt(std::max(0.0, 0.5 * (cov[0][0] + cov[1][1])) / N) / den;

        const double g = r / den;
        const double grad[4] = {mu[0] / (r * den), mu[1] / (r * den), -0.5 * g / mu[2], -0.5 * g / mu[3]};
        double var = 0.0;
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b)
                var += grad[a] * cov[a][b] * grad[b];
        return std::sqrt(std::max(0.0, var) / N);
    }

    // ---- ensemble engine ----

    std::size_t worker_threads()
    {
        if (const char *env = std::getenv("BDCM_THREADS"); env && *env)
        {
            char *end = nullptr;
            const unsigned long n = std::strtoul(env, &end, 10);
            if (*end != '\0' || n == 0)
                throw std::invalid_argument(std::string("BDCM_THREADS must be a positive integer, got '") + env + "'");
            return std::size_t(n);
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    LagMoments run_ensemble(std::size_t lags, std::size_t ensemble, const MemberKernel &kernel)
    {
        if (ensemble == 0)
            throw std::invalid_argument("run_ensemble: ensemble must be at least 1");

        const std::size_t blocks = (ensemble + block_size - 1) / block_size;
        std::vector<LagMoments> partial(blocks, LagMoments(lags));
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_lock;

        auto worker = [&]()
        {
            std::vector<cdouble> X(lags);
            std::vector<double> A(lags), B(lags);
            for (std::size_t b = next++; b < blocks; b = next++)
            {
                try
                {
                    const std::size_t end = std::min(ensemble, (b + 1) * block_size);
                    for (std::size_t m = b * block_size; m < end; ++m)
                    {
                        zero(X, A, B);
                        kernel(m, X, A, B);
                        partial[b].add(X, A, B);
                    }
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(failure_lock);
                    if (!failure)
                        failure = std::current_exception();
                    next = blocks;
                }
            }
        };

        const std::size_t threads = std::min(worker_threads(), blocks);
        if (threads <= 1)
            worker();
        else
        {
            std::vector<std::thread> pool;
            for (std::size_t i = 0; i < threads; ++i)
                pool.emplace_back(worker);
            for (auto &th : pool)
                th.join();
        }
        if (failure)
            std::rethrow_exception(failure);

        LagMoments total(lags);
        for (const auto &p : partial)
            total.merge(p);
        return total;
    }

    ClusterSet member_clusters(const SimulationConfig &config, std::size_t member, double t, Rng &rng)
    {
        if (!(t >= 0.0))
            throw std::invalid_argument("evaluation time must be >= 0");
        rng = make_stream(config.seed, member);
        ClusterSet set = initial_clusters(config, rng);
        advance_to(set, t, config, rng);
        return set;
    }

    ClusterResponse cluster_response(Model model, const Link &link, const Cluster &cluster, const SimulationConfig &config)
    {
        if (!link.sees(cluster))
            return {};
        if (model == Model::gbsm)
            return gbsm_response(link, cluster, config);
        return bdcm_response(link, cluster, make_beam_layout(cluster, config), config);
    }

    cdouble transfer_function(const ChannelRealization &H, std::size_t k, std::size_t l, double freq, std::size_t time_index)
    {
        if (k < 1 || k > H.num_rx || l < 1 || l > H.num_tx || time_index >= H.times.size())
            throw std::invalid_argument("transfer_function: index out of range");
        cdouble T{0.0, 0.0};
        for (std::size_t n = 0; n < H.num_clusters; ++n)
            T += H(k - 1, l - 1, n, time_index) * doppler_phasor(-freq, H.delays[n]);
        return T;
    }

    // ---- estimators ----

    CorrelationSeries space_ccf(Model model, std::size_t cluster_index, std::span<const double> spacings, double t,
                                const SimulationConfig &config)
    {
        config.validate();
        for (double d : spacings)
            if (!(d >= 0.0) || !std::isfinite(d))
                throw std::invalid_argument("space_ccf: spacings must be finite and >= 0");
        if (config.array.num_rx < 2 && std::any_of(spacings.begin(), spacings.end(), [](double d) { return d > 0.0; }))
            throw std::invalid_argument("space_ccf: needs at least two receive elements");

        const auto kernel = [&](std::size_t m, std::span<cdouble> X, std::span<double> A, std::span<double> B)
        {
            Rng rng;
            const ClusterSet set = member_clusters(config, m, t, rng);
            const Cluster *c = set.find_index(cluster_index);
            if (!c)
                return;
            ResponseCache response(model, config);
            for (std::size_t j = 0; j < spacings.size(); ++j)
            {
                cdouble h1, h2;
                if (spacings[j] == 0.0)
                    h1 = h2 = response(make_link(1, 1, config.array), *c).at(t);
                else
                {
                    ArrayConfig arr = config.array;
                    arr.spacing_rx = spacings[j];
                    h1 = response(make_link(1, 1, arr), *c).at(t);
                    h2 = response(make_link(2, 1, arr), *c).at(t);
                }
                X[j] = std::conj(cross_product(h1, h2));
                A[j] = std::norm(h1);
                B[j] = std::norm(h2);
            }
        };
        return make_series(estimate(spacings.size(), config, kernel), spacings, model, CorrelationKind::space_ccf, t, cluster_index);
    }

    CorrelationSeries time_acf(Model model, std::size_t cluster_index, std::span<const double> lags, double t,
                               const SimulationConfig &config)
    {
        config.validate();
        const bool evolving = config.evolution.enabled;
        for (std::size_t j = 0; j < lags.size(); ++j)
        {
            if (!std::isfinite(lags[j]))
                throw std::invalid_argument("time_acf: lags must be finite");
            if (evolving && (lags[j] < 0.0 || (j > 0 && lags[j] < lags[j - 1])))
                throw std::invalid_argument("time_acf: with cluster evolution the lags must be non-negative and non-decreasing");
        }

        std::vector<double> times(lags.size());
        for (std::size_t j = 0; j < lags.size(); ++j)
            times[j] = t + lags[j];

        const auto kernel = [&](std::size_t m, std::span<cdouble> X, std::span<double> A, std::span<double> B)
        {
            Rng rng;
            ClusterSet set = member_clusters(config, m, t, rng);
            const Cluster *c = set.find_index(cluster_index);
            if (!c)
                return;
            const std::uint64_t id = c->id;
            const double power = c->power;
            const ClusterResponse R = cluster_response(model, make_link(1, 1, config.array), *c, config);
            if (R.los.empty() && R.nlos.empty())
                return;

            const cdouble h_t = R.at(t);
            std::vector<cdouble> los(times.size()), nlos(times.size());
            R.los.evaluate(times, los);
            R.nlos.evaluate(times, nlos);

            for (std::size_t j = 0; j < times.size(); ++j)
            {
                double scale = 1.0;
                if (evolving)
                {
                    advance_to(set, times[j], config, rng);
                    const Cluster *now = set.find_id(id);
                    if (!now)
                    {
                        // dead clusters stay dead for all later lags
                        for (std::size_t i = j; i < times.size(); ++i)
                        {
                            X[i] = 0.0;
                            A[i] = std::norm(h_t);
                            B[i] = 0.0;
                        }
                        return;
                    }
                    scale = power > 0.0 ? std::sqrt(now->power / power) : 0.0;
                }
                const cdouble h = los[j] + scale * nlos[j];
                X[j] = cross_product(h_t, h);
                A[j] = std::norm(h_t);
                B[j] = std::norm(h);
            }
        };
        return make_series(estimate(lags.size(), config, kernel), lags, model, CorrelationKind::time_acf, t, cluster_index);
    }

    CorrelationSeries fcf(Model model, std::span<const double> freq_lags, double t, const SimulationConfig &config)
    {
        config.validate();
        const auto kernel = [&](std::size_t m, std::span<cdouble> X, std::span<double> A, std::span<double> B)
        {
            Rng rng;
            const ClusterSet set = member_clusters(config, m, t, rng);
            const Link link = make_link(1, 1, config.array);
            double total = 0.0;
            for (const Cluster &c : set.clusters)
            {
                const cdouble h = cluster_response(model, link, c, config).at(t);
                const double w = std::norm(h);
                total += w;
                for (std::size_t j = 0; j < freq_lags.size(); ++j)
                    X[j] += cdouble(w, 0.0) * doppler_phasor(freq_lags[j], c.delay);
            }
            std::fill(A.begin(), A.end(), total);
            std::fill(B.begin(), B.end(), total);
        };
        return make_series(estimate(freq_lags.size(), config, kernel), freq_lags, model, CorrelationKind::fcf, t, 0);
    }

    CorrelationPoint stfcf(Model model, const StfcfLags &lags, double t, std::size_t cluster_index, const SimulationConfig &config)
    {
        config.validate();
        if (!(lags.spacing_tx >= 0.0) || !(lags.spacing_rx >= 0.0))
            throw std::invalid_argument("stfcf: spacings must be >= 0");
        if (config.evolution.enabled && lags.time < 0.0)
            throw std::invalid_argument("stfcf: negative time lag needs evolution disabled");

        ArrayConfig arr = config.array;
        std::size_t k2 = 1, l2 = 1;
        if (lags.spacing_tx > 0.0)
        {
            arr.spacing_tx = lags.spacing_tx;
            l2 = 2;
        }
        if (lags.spacing_rx > 0.0)
        {
            arr.spacing_rx = lags.spacing_rx;
            k2 = 2;
        }
        const Link link1 = make_link(1, 1, arr);
        const Link link2 = make_link(k2, l2, arr);
        const double t2 = t + lags.time;

        const auto kernel = [&](std::size_t m, std::span<cdouble> X, std::span<double> A, std::span<double> B)
        {
            Rng rng;
            ClusterSet set = member_clusters(config, m, t, rng);
            ResponseCache response(model, config);

            struct Term
            {
                std::uint64_t id;
                double power;
                double delay;
                cdouble h1;
                ClusterResponse R2;
            };
            std::vector<Term> terms;
            for (const Cluster &c : set.clusters)
                if (cluster_index == 0 || c.index == cluster_index)
                    terms.push_back({c.id, c.power, c.delay, response(link1, c).at(t), response(link2, c)});

            if (config.evolution.enabled && lags.time > 0.0)
                advance_to(set, t2, config, rng);

            for (const Term &term : terms)
            {
                cdouble h2{0.0, 0.0};
                if (const Cluster *now = set.find_id(term.id))
                {
                    const double scale = term.power > 0.0 ? std::sqrt(now->power / term.power) : 0.0;
                    h2 = term.R2.los.at(t2) + scale * term.R2.nlos.at(t2);
                }
                X[0] += cross_product(term.h1, h2) * doppler_phasor(lags.freq, term.delay);
                A[0] += std::norm(term.h1);
                B[0] += std::norm(h2);
            }
        };

        const LagMoments mom = estimate(1, config, kernel);
        return {mom.value(0), mom.magnitude(0), mom.std_error(0)};
    }
}
