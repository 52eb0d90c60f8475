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

#include "bdcm/experiment.hpp"
#include "bdcm/io.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <optional>

using namespace bdcm;

namespace
{
    struct Common
    {
        std::string config_path;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> ensemble;
        std::string out_dir = ".";
        std::string model = "both";
    };

    void add_common(CLI::App *cmd, Common &c)
    {
        cmd->add_option("--config", c.config_path, "JSON configuration file (omitted keys take the defaults)");
        cmd->add_option("--seed", c.seed, "Root seed, overrides the config");
        cmd->add_option("--ensemble", c.ensemble, "Ensemble size, overrides the config")->check(CLI::PositiveNumber);
        cmd->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
        cmd->add_option("--model", c.model, "Model to run")->check(CLI::IsMember({"gbsm", "bdcm", "both"}))->capture_default_str();
    }

    SimulationConfig effective_config(const Common &c, SimulationConfig base)
    {
        SimulationConfig cfg = c.config_path.empty() ? base : load_config(c.config_path);
        if (c.seed)
            cfg.seed = *c.seed;
        if (c.ensemble)
            cfg.ensemble = *c.ensemble;
        cfg.validate();
        return cfg;
    }

    std::vector<Model> models(const Common &c)
    {
        if (c.model == "both")
            return {Model::gbsm, Model::bdcm};
        return {model_from_string(c.model)};
    }

    void emit(const std::vector<ExperimentOutput> &outputs, const std::string &dir)
    {
        write_outputs(outputs, dir);
        for (const auto &o : outputs)
            std::cout << (std::filesystem::path(dir) / o.filename).string() << " (" << o.rows << " rows)\n";
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"bdcm: near-field beam domain and geometry-based channel simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("bdcm ") + version_string);

    Common common;

    auto *simulate = app.add_subcommand("simulate", "Write the coefficient tensor of one ensemble member");
    std::size_t member = 0;
    add_common(simulate, common);
    simulate->add_option("--member", member, "Ensemble member index")->capture_default_str();

    auto *stats = app.add_subcommand("stats", "Estimate a correlation function over the configured lag grid");
    std::string kind = "time_acf";
    CustomRequest request;
    add_common(stats, common);
    stats->add_option("--kind", kind, "Correlation function")
        ->check(CLI::IsMember({"space_ccf", "time_acf", "fcf", "stfcf"}))
        ->capture_default_str();
    stats->add_option("--cluster", request.cluster_index, "1-based cluster index, 0 = all clusters (stfcf only)")->capture_default_str();
    stats->add_option("--delta-tx", request.stfcf_lags.spacing_tx, "stfcf: transmit spacing [m]");
    stats->add_option("--delta-rx", request.stfcf_lags.spacing_rx, "stfcf: receive spacing [m]");
    stats->add_option("--delta-f", request.stfcf_lags.freq, "stfcf: frequency lag [Hz]");

    auto *complexity = app.add_subcommand("complexity", "Real-operation counts of both models");
    std::uint64_t rays = 20, clusters = 20, max_antennas = 10;
    std::vector<std::uint64_t> beams{20, 200, 400};
    std::string complexity_out = ".";
    complexity->add_option("--rays", rays, "S")->check(CLI::PositiveNumber)->capture_default_str();
    complexity->add_option("--clusters", clusters, "N_total")->check(CLI::PositiveNumber)->capture_default_str();
    complexity->add_option("--max-antennas", max_antennas, "M_R = M_T = 1..n")->check(CLI::PositiveNumber)->capture_default_str();
    complexity->add_option("--beams", beams, "Beam counts M")->delimiter(',')->capture_default_str();
    complexity->add_option("--out", complexity_out, "Output directory")->capture_default_str();

    auto *reproduce = app.add_subcommand("reproduce", "Regenerate the data behind one figure");
    std::string figure;
    reproduce->add_option("figure", figure, "Figure")->required()->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6"}));
    add_common(reproduce, common);

    auto *config = app.add_subcommand("config", "Print the effective configuration as JSON");
    std::string preset_name = "fig3";
    add_common(config, common);
    config->add_option("--preset", preset_name, "Defaults to start from when no --config is given")
        ->check(CLI::IsMember({"fig3", "fig4", "fig5"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*simulate)
        {
            const SimulationConfig cfg = effective_config(common, fig3_config());
            std::vector<ExperimentOutput> outputs;
            for (Model m : models(common))
                outputs.push_back(realization_csv(simulate_member(m, cfg, member), m, cfg, member));
            emit(outputs, common.out_dir);
        }
        else if (*stats)
        {
            request.kind = correlation_kind_from_string(kind);
            const SimulationConfig cfg = effective_config(common, fig3_config());
            emit(run_experiment(cfg, Experiment::custom, models(common), request), common.out_dir);
        }
        else if (*complexity)
        {
            std::vector<std::uint64_t> antennas;
            for (std::uint64_t a = 1; a <= max_antennas; ++a)
                antennas.push_back(a);
            SimulationConfig cfg = fig3_config();
            cfg.rays_per_cluster = rays;
            emit({complexity_csv(complexity_sweep(antennas, rays, clusters, beams), cfg, rays, clusters)}, complexity_out);
        }
        else if (*reproduce)
        {
            const Experiment e = experiment_from_string(figure);
            const SimulationConfig base = e == Experiment::fig4_acf ? fig4_config() : e == Experiment::fig5_fcf ? fig5_config() : fig3_config();
            emit(run_experiment(effective_config(common, base), e, models(common)), common.out_dir);
        }
        else if (*config)
        {
            const SimulationConfig base = preset_name == "fig4" ? fig4_config() : preset_name == "fig5" ? fig5_config() : fig3_config();
            std::cout << emit_config(effective_config(common, base));
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
