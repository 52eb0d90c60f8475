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
#include "bdcm/gbsm.hpp"
#include "bdcm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bdcm
{
    namespace
    {
        std::string header(const SimulationConfig &config, Experiment experiment, const std::vector<std::pair<std::string, std::string>> &fields)
        {
            std::string h = std::string("# bdcm ") + version_string + "\n";
            h += "# experiment: " + to_string(experiment) + "\n";
            for (const auto &[key, value] : fields)
                h += "# " + key + ": " + value + "\n";
            h += "# seed: " + std::to_string(config.seed) + "\n";
            h += "# ensemble: " + std::to_string(config.ensemble) + "\n";
            h += "# config_hash: " + config_hash_hex(config) + "\n";
            h += "# config: " + config_to_json(config).dump() + "\n";
            return h;
        }

        std::vector<Model> selected(const std::vector<Model> &models)
        {
            if (models.empty())
                return {Model::gbsm, Model::bdcm};
            return models;
        }

        std::string time_tag(double t)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "t%g", t);
            return buf;
        }
    }

    std::string to_string(Experiment experiment)
    {
        switch (experiment)
        {
        case Experiment::fig3_ccf:
            return "fig3_ccf";
        case Experiment::fig4_acf:
            return "fig4_acf";
        case Experiment::fig5_fcf:
            return "fig5_fcf";
        case Experiment::fig6_complexity:
            return "fig6_complexity";
        case Experiment::custom:
            return "custom";
        }
        return "unknown";
    }

    Experiment experiment_from_string(const std::string &name)
    {
        for (auto e : {Experiment::fig3_ccf, Experiment::fig4_acf, Experiment::fig5_fcf, Experiment::fig6_complexity, Experiment::custom})
        {
            const std::string full = to_string(e);
            if (name == full || name == full.substr(0, 4))
                return e;
        }
        throw std::invalid_argument("unknown experiment '" + name + "' (expected fig3, fig4, fig5, fig6 or custom)");
    }

    std::string format_number(double value)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", value);
        return buf;
    }

    ExperimentOutput series_csv(const CorrelationSeries &series, const SimulationConfig &config, Experiment experiment,
                                const std::string &curve, const std::string &filename)
    {
        ExperimentOutput out;
        out.filename = filename;
        out.content = header(config, experiment,
                             {{"curve", curve},
                              {"model", to_string(series.model)},
                              {"kind", to_string(series.kind)},
                              {"eval_time", format_number(series.eval_time)},
                              {"cluster_index", std::to_string(series.cluster_index)}});
        out.content += "lag,magnitude,std_error\n";
        for (std::size_t j = 0; j < series.lag.size(); ++j)
            out.content += format_number(series.lag[j]) + "," + format_number(series.magnitude[j]) + "," +
                           format_number(series.std_error[j]) + "\n";
        out.rows = series.lag.size();
        return out;
    }

    ExperimentOutput complexity_csv(const std::vector<ComplexityRow> &rows, const SimulationConfig &config,
                                    std::uint64_t rays, std::uint64_t clusters)
    {
        ExperimentOutput out;
        out.filename = "fig6_complexity.csv";
        out.content = header(config, Experiment::fig6_complexity,
                             {{"rays", std::to_string(rays)}, {"clusters", std::to_string(clusters)}});
        out.content += "antenna_pairs,num_beams,gbsm_ro,bdcm_ro\n";
        for (const auto &r : rows)
            out.content += std::to_string(r.antenna_pairs) + "," + std::to_string(r.beams) + "," + r.gbsm.str() + "," +
                           r.bdcm.str() + "\n";
        out.rows = rows.size();
        return out;
    }

    std::vector<ChannelRealization> simulate_member(Model model, const SimulationConfig &config, std::size_t member)
    {
        config.validate();
        std::vector<double> times = config.time_samples;
        std::sort(times.begin(), times.end());

        Rng rng = make_stream(config.seed, member);
        ClusterSet set = initial_clusters(config, rng);
        std::vector<ChannelRealization> out;
        for (double t : times)
        {
            advance_to(set, t, config, rng);
            out.push_back(model == Model::gbsm ? gbsm_matrix(t, set, config) : bdcm_matrix(t, set, config));
        }
        return out;
    }

    ExperimentOutput realization_csv(const std::vector<ChannelRealization> &snapshots, Model model,
                                     const SimulationConfig &config, std::size_t member)
    {
        ExperimentOutput out;
        out.filename = "simulate_" + to_string(model) + ".csv";
        out.content = header(config, Experiment::custom, {{"model", to_string(model)}, {"member", std::to_string(member)}});
        out.content += "time,cluster,cluster_id,delay,rx,tx,real,imag\n";
        for (const ChannelRealization &H : snapshots)
            for (std::size_t ti = 0; ti < H.times.size(); ++ti)
                for (std::size_t n = 0; n < H.num_clusters; ++n)
                    for (std::size_t k = 0; k < H.num_rx; ++k)
                        for (std::size_t l = 0; l < H.num_tx; ++l)
                        {
                            const cdouble h = H(k, l, n, ti);
                            out.content += format_number(H.times[ti]) + "," + std::to_string(n + 1) + "," +
                                           std::to_string(H.cluster_ids[n]) + "," + format_number(H.delays[n]) + "," +
                                           std::to_string(k + 1) + "," + std::to_string(l + 1) + "," +
                                           format_number(h.real()) + "," + format_number(h.imag()) + "\n";
                            ++out.rows;
                        }
        return out;
    }

    std::vector<ExperimentOutput> run_experiment(const SimulationConfig &config, Experiment experiment,
                                                 const std::vector<Model> &models, const CustomRequest &custom)
    {
        config.validate();
        std::vector<ExperimentOutput> outputs;
        const double t0 = config.time_samples.front();

        switch (experiment)
        {
        case Experiment::fig3_ccf:
        {
            const auto lags = config.space_lags.values();
            for (Model model : selected(models))
            {
                SimulationConfig reference = config;
                reference.rays_per_cluster = 512;
                reference.num_beams = 512;
                const std::string m = to_string(model);
                outputs.push_back(series_csv(space_ccf(model, 1, lags, t0, reference), reference, experiment, "reference",
                                             "fig3_ccf_" + m + "_reference.csv"));
                outputs.push_back(series_csv(space_ccf(model, 1, lags, t0, config), config, experiment, "simulation",
                                             "fig3_ccf_" + m + "_simulation.csv"));
            }
            break;
        }
        case Experiment::fig4_acf:
        {
            const auto lags = config.time_lags.values();
            for (Model model : selected(models))
                for (double t : config.time_samples)
                    outputs.push_back(series_csv(time_acf(model, 1, lags, t, config), config, experiment, time_tag(t),
                                                 "fig4_acf_" + to_string(model) + "_" + time_tag(t) + ".csv"));
            break;
        }
        case Experiment::fig5_fcf:
        {
            const auto lags = config.freq_lags.values();
            for (Model model : selected(models))
            {
                SimulationConfig los = config;
                los.rician_k = config.los_rician_k;
                const std::string m = to_string(model);
                outputs.push_back(series_csv(fcf(model, lags, t0, config), config, experiment, "nlos", "fig5_fcf_" + m + "_nlos.csv"));
                outputs.push_back(series_csv(fcf(model, lags, t0, los), los, experiment, "los", "fig5_fcf_" + m + "_los.csv"));
            }
            break;
        }
        case Experiment::fig6_complexity:
        {
            const std::vector<std::uint64_t> antennas{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
            const std::vector<std::uint64_t> beams{20, 200, 400};
            const std::uint64_t rays = config.rays_per_cluster;
            const auto clusters = std::uint64_t(std::llround(config.evolution.mean_cluster_count()));
            outputs.push_back(complexity_csv(complexity_sweep(antennas, rays, clusters, beams), config, rays, clusters));
            break;
        }
        case Experiment::custom:
        {
            const std::string kind = to_string(custom.kind);
            for (Model model : selected(models))
                for (double t : config.time_samples)
                {
                    CorrelationSeries s;
                    switch (custom.kind)
                    {
                    case CorrelationKind::space_ccf:
                        s = space_ccf(model, custom.cluster_index, config.space_lags.values(), t, config);
                        break;
                    case CorrelationKind::time_acf:
                        s = time_acf(model, custom.cluster_index, config.time_lags.values(), t, config);
                        break;
                    case CorrelationKind::fcf:
                        s = fcf(model, config.freq_lags.values(), t, config);
                        break;
                    case CorrelationKind::stfcf:
                        s.model = model;
                        s.kind = CorrelationKind::stfcf;
                        s.eval_time = t;
                        s.cluster_index = custom.cluster_index;
                        s.ensemble = config.ensemble;
                        for (double dt : config.time_lags.values())
                        {
                            StfcfLags lags = custom.stfcf_lags;
                            lags.time = dt;
                            const CorrelationPoint p = stfcf(model, lags, t, custom.cluster_index, config);
                            s.lag.push_back(dt);
                            s.values.push_back(p.value);
                            s.magnitude.push_back(p.magnitude);
                            s.std_error.push_back(p.std_error);
                        }
                        break;
                    }
                    outputs.push_back(series_csv(s, config, experiment, kind,
                                                 "custom_" + kind + "_" + to_string(model) + "_" + time_tag(t) + ".csv"));
                }
            break;
        }
        }
        return outputs;
    }

    void write_outputs(const std::vector<ExperimentOutput> &outputs, const std::filesystem::path &dir)
    {
        std::filesystem::create_directories(dir);
        for (const auto &o : outputs)
        {
            const auto path = dir / o.filename;
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw std::runtime_error("cannot write " + path.string());
            out << o.content;
            if (!out)
                throw std::runtime_error("write failed: " + path.string());
        }
    }
}
