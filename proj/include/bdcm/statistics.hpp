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

#ifndef BDCM_STATISTICS_H
#define BDCM_STATISTICS_H

#include "bdcm/bdcm.hpp"
#include "bdcm/channel.hpp"
#include "bdcm/config.hpp"
#include "bdcm/gbsm.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bdcm
{
    enum class CorrelationKind
    {
        space_ccf,
        time_acf,
        fcf,
        stfcf
    };

    std::string to_string(CorrelationKind kind);
    CorrelationKind correlation_kind_from_string(const std::string &name);

    struct CorrelationSeries
    {
        std::vector<double> lag; // meters, seconds or Hz
        std::vector<cdouble> values;
        std::vector<double> magnitude;
        std::vector<double> std_error; // delta-method standard error of the magnitude
        std::size_t ensemble = 0;
        Model model = Model::gbsm;
        CorrelationKind kind = CorrelationKind::time_acf;
        double eval_time = 0.0;
        std::size_t cluster_index = 0; // 0 = all clusters
    };

    struct CorrelationPoint
    {
        cdouble value;
        double magnitude = 0.0;
        double std_error = 0.0;
    };

    // Running first and second moments of v = (Re X, Im X, A, B) per lag, where the correlation estimate is
    // E[X] / sqrt(E[A] E[B])
    class LagMoments
    {
      public:
        explicit LagMoments(std::size_t lags = 0);

        std::size_t lags() const { return sum_.size(); }
        std::size_t count() const { return count_; }

        // One ensemble member, all lags at once
        void add(std::span<const cdouble> X, std::span<const double> A, std::span<const double> B);
        void merge(const LagMoments &other);

        cdouble value(std::size_t lag) const;
        double magnitude(std::size_t lag) const;
        double std_error(std::size_t lag) const;

      private:
        std::size_t count_ = 0;
        std::vector<std::array<double, 4>> sum_;
        std::vector<std::array<double, 10>> cross_; // upper triangle of v v^T
    };

    // Members are evaluated in blocks of fixed size whose moments are merged in block order, so results do not
    // depend on the thread count. Threads: BDCM_THREADS, else the hardware concurrency.
    using MemberKernel = std::function<void(std::size_t member, std::span<cdouble> X, std::span<double> A, std::span<double> B)>;
    LagMoments run_ensemble(std::size_t lags, std::size_t ensemble, const MemberKernel &kernel);
    std::size_t worker_threads();

    // Cluster set of one ensemble member evolved to time t; rng continues the member stream
    ClusterSet member_clusters(const SimulationConfig &config, std::size_t member, double t, Rng &rng);

    // Channel of one cluster on one link for either model
    ClusterResponse cluster_response(Model model, const Link &link, const Cluster &cluster, const SimulationConfig &config);

    // T(freq) = sum_n h_{kl,n} exp(-j 2 pi freq tau_n); k, l are 1-based, time_index zero-based
    cdouble transfer_function(const ChannelRealization &H, std::size_t k, std::size_t l, double freq, std::size_t time_index);

    // Receive-side spacing correlation of cluster `cluster_index` between elements 1 and 2 of an array with spacing
    // delta_R. delta_R = 0 correlates element 1 with itself.
    CorrelationSeries space_ccf(Model model, std::size_t cluster_index, std::span<const double> spacings, double t,
                                const SimulationConfig &config);

    // E[h*(t) h(t + lag)] of cluster `cluster_index` on link (1, 1). The cluster is followed by identity through the
    // time evolution; lags must be non-decreasing and non-negative unless evolution is disabled.
    CorrelationSeries time_acf(Model model, std::size_t cluster_index, std::span<const double> lags, double t,
                               const SimulationConfig &config);

    // sum_n |h_n|^2 exp(j 2 pi df tau_n) over all clusters on link (1, 1)
    CorrelationSeries fcf(Model model, std::span<const double> freq_lags, double t, const SimulationConfig &config);

    struct StfcfLags
    {
        double spacing_tx = 0.0; // delta_T
        double spacing_rx = 0.0; // delta_R
        double freq = 0.0;       // delta omega
        double time = 0.0;       // delta t
    };

    // Joint correlation E[sum_n h*_{n}(t) h'_{n}(t + dt) exp(j 2 pi df tau_n)], where h' sits on the displaced pair.
    // cluster_index 0 sums over all clusters.
    CorrelationPoint stfcf(Model model, const StfcfLags &lags, double t, std::size_t cluster_index, const SimulationConfig &config);
}

#endif
