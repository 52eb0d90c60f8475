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

#ifndef BDCM_EXPERIMENT_H
#define BDCM_EXPERIMENT_H

#include "bdcm/complexity.hpp"
#include "bdcm/config.hpp"
#include "bdcm/statistics.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace bdcm
{
    enum class Experiment
    {
        fig3_ccf,
        fig4_acf,
        fig5_fcf,
        fig6_complexity,
        custom
    };

    std::string to_string(Experiment experiment);
    Experiment experiment_from_string(const std::string &name); // also accepts fig3..fig6

    // One CSV file worth of output
    struct ExperimentOutput
    {
        std::string filename;
        std::string content;
        std::size_t rows = 0;
    };

    // Settings of the custom experiment (the `stats` subcommand)
    struct CustomRequest
    {
        CorrelationKind kind = CorrelationKind::time_acf;
        std::size_t cluster_index = 1;
        StfcfLags stfcf_lags; // fixed lags; the time-lag grid is swept
    };

    // Models to run; empty means both
    std::vector<ExperimentOutput> run_experiment(const SimulationConfig &config, Experiment experiment,
                                                 const std::vector<Model> &models = {}, const CustomRequest &custom = {});

    // Commented provenance header followed by "lag,magnitude,std_error"
    ExperimentOutput series_csv(const CorrelationSeries &series, const SimulationConfig &config, Experiment experiment,
                                const std::string &curve, const std::string &filename);

    // antenna_pairs,num_beams,gbsm_ro,bdcm_ro
    ExperimentOutput complexity_csv(const std::vector<ComplexityRow> &rows, const SimulationConfig &config,
                                    std::uint64_t rays, std::uint64_t clusters);

    // Coefficient tensors of one ensemble member, one per time sample (the cluster set evolves in between)
    std::vector<ChannelRealization> simulate_member(Model model, const SimulationConfig &config, std::size_t member);

    // time,cluster,cluster_id,delay,rx,tx,real,imag
    ExperimentOutput realization_csv(const std::vector<ChannelRealization> &snapshots, Model model,
                                     const SimulationConfig &config, std::size_t member);

    // %.12g
    std::string format_number(double value);

    void write_outputs(const std::vector<ExperimentOutput> &outputs, const std::filesystem::path &dir);
}

#endif
