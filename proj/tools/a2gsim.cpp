// SPDX-License-Identifier: Apache-2.0
//
// a2gsim - spatially consistent air-to-ground channel simulator
// Copyright (C) 2026 The a2gsim authors
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

// a2gsim: command-line front end for the air-to-ground channel simulator.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include "a2g/a2g.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace
{

struct Options
{
    std::string config_file;
    std::string out;
    std::optional<std::string> preset;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    std::optional<std::string> los_source;
    std::vector<double> eirp;
    std::size_t index = 0;
    std::size_t workers = 1;
};

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Precedence: flags > file > defaults.
a2g::ScenarioConfig resolve(const Options &opt)
{
    a2g::ScenarioConfig cfg;
    if (!opt.config_file.empty())
    {
        std::ifstream in(opt.config_file);
        if (!in)
            throw UsageError("cannot read config file " + opt.config_file);
        try
        {
            cfg = a2g::parse_config(in);
        }
        catch (const a2g::ConfigError &e)
        {
            throw UsageError(opt.config_file + ": " + e.what());
        }
    }
    try
    {
        if (opt.preset)
            a2g::apply_config_value(cfg, "preset", *opt.preset);
        if (opt.los_source)
            a2g::apply_config_value(cfg, "los_source", *opt.los_source);
        if (opt.seed)
            cfg.seed = *opt.seed;
        if (opt.n)
            cfg.n_realizations = *opt.n;
        if (!opt.eirp.empty())
            cfg.eirp = opt.eirp;
        cfg.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw UsageError(e.what());
    }
    return cfg;
}

// Writes to --out when given, stdout otherwise.
class Output
{
  public:
    explicit Output(const std::string &path)
    {
        if (!path.empty())
        {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_)
                throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream &stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

void cmd_layout(const Options &opt)
{
    const auto cfg = resolve(opt);
    auto rng = a2g::make_stream(cfg.seed, opt.index, a2g::StreamRole::Layout);
    const auto layout = a2g::generate_layout(cfg.environment(), rng);
    auto j = a2g::to_json(layout);
    j["config"] = a2g::to_json(cfg);
    j["realization_id"] = opt.index;
    Output out(opt.out);
    out.stream() << j.dump(2) << '\n';
}

void cmd_segments(const Options &opt)
{
    const auto cfg = resolve(opt);
    Output out(opt.out);
    a2g::write_provenance(out.stream(), cfg);
    a2g::write_segments_header(out.stream());
    for (std::size_t i = 0; i < cfg.n_realizations; ++i)
        a2g::write_segments_rows(out.stream(), i, a2g::realization_los_trace(cfg, i));
}

void cmd_channel(const Options &opt)
{
    const auto cfg = resolve(opt);
    Output out(opt.out);
    a2g::write_provenance(out.stream(), cfg);
    a2g::write_channel_header(out.stream());
    for (std::size_t i = 0; i < cfg.n_realizations; ++i)
    {
        const auto r = a2g::run_realization(cfg, i);
        a2g::write_channel_rows(out.stream(), i, r.channel);
    }
}

void cmd_outage(const Options &opt)
{
    const auto cfg = resolve(opt);
    a2g::Json reports = a2g::Json::array();
    for (std::size_t i = 0; i < cfg.n_realizations; ++i)
    {
        const auto r = a2g::run_realization(cfg, i);
        for (std::size_t e = 0; e < cfg.eirp.size(); ++e)
        {
            auto j = a2g::to_json(r.outage[e], {cfg.eirp[e], cfg.sensitivity});
            j["realization_id"] = i;
            reports.push_back(std::move(j));
        }
    }
    Output out(opt.out);
    out.stream() << a2g::Json{{"config", a2g::to_json(cfg)}, {"reports", reports}}.dump(2) << '\n';
}

void cmd_campaign(const Options &opt)
{
    if (opt.out.empty())
        throw UsageError("campaign requires --out <directory>");
    const auto cfg = resolve(opt);
    const auto res = a2g::run_campaign(cfg, opt.workers);
    a2g::write_campaign_dir(opt.out, res);
    std::cerr << "campaign " << cfg.preset << ": " << cfg.n_realizations << " realizations in "
              << a2g::format_number(res.runtime_seconds) << " s\n";
}

void cmd_validate(const Options &opt)
{
    const auto cfg = resolve(opt);
    std::vector<std::string> envs;
    if (opt.preset)
        envs.push_back(*opt.preset);
    else
        envs.assign(a2g::kPresetNames.begin(), a2g::kPresetNames.end());

    Output out(opt.out);
    auto &os = out.stream();
    a2g::write_provenance(os, cfg);
    os << "environment,ks,ks_critical_1pct,n_model,n_oracle,model_median_m,oracle_median_m\n";
    for (const auto &env : envs)
    {
        auto c = cfg;
        c.preset = env;
        const auto v = a2g::validate_model_vs_oracle(c, opt.workers);
        os << env << ',' << a2g::format_number(v.ks) << ',' << a2g::format_number(v.ks_critical_1pct) << ','
           << v.model.size() << ',' << v.oracle.size() << ',' << a2g::format_number(v.model.quantile(0.5)) << ','
           << a2g::format_number(v.oracle.quantile(0.5)) << '\n';
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Spatially consistent air-to-ground channel simulator"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("-c,--config", opt.config_file, "Scenario file (key = value lines)");
        sub->add_option("-o,--out", opt.out, "Output file (directory for campaign)");
        sub->add_option("--preset", opt.preset, "suburban | urban | dense_urban | high_rise");
        sub->add_option("--seed", opt.seed, "Master seed");
        sub->add_option("-n,--n", opt.n, "Number of realizations");
        sub->add_option("--los-source", opt.los_source, "probabilistic | oracle_full | oracle_wall");
        sub->add_option("--eirp", opt.eirp, "EIRP values in dBm");
    };

    auto *layout = app.add_subcommand("layout", "Emit one Manhattan-grid layout as JSON");
    add_common(layout);
    layout->add_option("--index", opt.index, "Realization index whose layout stream is used");
    auto *segments = app.add_subcommand("segments", "Emit LOS/NLOS segments as CSV");
    add_common(segments);
    auto *channel = app.add_subcommand("channel", "Emit per-point channel samples as CSV");
    add_common(channel);
    auto *outage = app.add_subcommand("outage", "Emit outage reports as JSON");
    add_common(outage);
    auto *campaign = app.add_subcommand("campaign", "Run a Monte Carlo campaign into a directory");
    add_common(campaign);
    campaign->add_option("-j,--workers", opt.workers, "Worker threads");
    auto *validate = app.add_subcommand("validate", "KS distance between model and oracle NLOS lengths");
    add_common(validate);
    validate->add_option("-j,--workers", opt.workers, "Worker threads");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try
    {
        if (layout->parsed())
            cmd_layout(opt);
        else if (segments->parsed())
            cmd_segments(opt);
        else if (channel->parsed())
            cmd_channel(opt);
        else if (outage->parsed())
            cmd_outage(opt);
        else if (campaign->parsed())
            cmd_campaign(opt);
        else if (validate->parsed())
            cmd_validate(opt);
    }
    catch (const UsageError &e)
    {
        std::cerr << "a2gsim: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "a2gsim: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
