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

#pragma once

#include "a2g/campaign.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

namespace a2g
{

using Json = nlohmann::ordered_json;

// Six significant digits keeps text output diff-stable.
inline std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline Json to_json(const ScenarioConfig &c)
{
    return Json{
        {"preset", c.preset},
        {"n_realizations", c.n_realizations},
        {"seed", c.seed},
        {"abs_xy_min_m", c.abs_xy_min},
        {"abs_xy_max_m", c.abs_xy_max},
        {"abs_h_min_m", c.abs_h_min},
        {"abs_h_max_m", c.abs_h_max},
        {"path_length_m", c.path_length},
        {"resolution_m", c.resolution},
        {"frequency_hz", c.channel.frequency},
        {"eirp_dbm", c.eirp},
        {"sensitivity_dbm", c.sensitivity},
        {"los_source", to_string(c.los_source)},
        {"rho_los", c.channel.shadow.rho_los},
        {"mu_los", c.channel.shadow.mu_los},
        {"rho_nlos", c.channel.shadow.rho_nlos},
        {"mu_nlos", c.channel.shadow.mu_nlos},
        {"d_decorr_m", c.channel.shadow.decorrelation_distance},
        {"shadow_continuity", to_string(c.channel.continuity)},
        {"nlos_excess", to_string(c.channel.nlos_excess)},
    };
}

inline Json to_json(const GridLayout &layout)
{
    const auto &p = layout.params();
    Json heights = Json::array();
    for (std::size_t i = 0; i < layout.rows(); ++i)
    {
        Json row = Json::array();
        for (std::size_t j = 0; j < layout.cols(); ++j)
            row.push_back(layout.height(i, j));
        heights.push_back(std::move(row));
    }
    return Json{
        {"alpha", p.alpha()},
        {"beta", p.beta()},
        {"gamma", p.gamma()},
        {"W", p.building_width()},
        {"S", p.street_width()},
        {"I", layout.rows()},
        {"J", layout.cols()},
        {"heights", std::move(heights)}, // heights[i][j], i along x
    };
}

// CSV files start with a comment line carrying the resolved configuration.
inline void write_provenance(std::ostream &os, const ScenarioConfig &cfg)
{
    os << "# config: " << to_json(cfg).dump() << '\n';
}

inline void write_segments_header(std::ostream &os)
{
    os << "realization_id,segment_index,state,start_m,length_m\n";
}

inline void write_segments_rows(std::ostream &os, std::size_t realization, const LosTrace &trace)
{
    std::size_t k = 0;
    for (const auto &seg : trace.segments())
        os << realization << ',' << k++ << ',' << to_string(seg.state) << ',' << format_number(seg.start) << ','
           << format_number(seg.length) << '\n';
}

inline void write_channel_header(std::ostream &os)
{
    os << "realization_id,y_m,state,theta_deg,lambda0_db,lambda_ex_db,xi_db,lambda_total_db\n";
}

inline void write_channel_rows(std::ostream &os, std::size_t realization, std::span<const ChannelSample> samples)
{
    for (const auto &s : samples)
        os << realization << ',' << format_number(s.y) << ',' << to_string(s.state) << ',' << format_number(s.theta)
           << ',' << format_number(s.lambda0) << ',' << format_number(s.lambda_ex) << ',' << format_number(s.xi)
           << ',' << format_number(s.lambda_total) << '\n';
}

inline Json to_json(const OutageReport &r, const LinkBudget &budget)
{
    return Json{
        {"eirp_dbm", budget.eirp},
        {"sensitivity_dbm", budget.sensitivity},
        {"lambda_outage_db", budget.lambda_outage()},
        {"outage_probability", r.outage_probability},
        {"points_in_outage", r.points_in_outage},
        {"total_points", r.total_points},
        {"outage_runs_m", r.outage_runs},
    };
}

inline constexpr std::size_t kMaxCdfRows = 5000;

/// Plot-ready CDF rows. Small samples are written step by step; larger ones
/// on an evenly spaced grid of probability levels.
inline void write_cdf_rows(std::ostream &os, const EmpiricalCdf &cdf, const std::string &prefix = {})
{
    if (cdf.empty())
        return;
    const auto steps = cdf.steps();
    if (steps.size() <= kMaxCdfRows)
    {
        for (const auto &s : steps)
            os << prefix << format_number(s.x) << ',' << format_number(s.y) << '\n';
        return;
    }
    double last = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= kMaxCdfRows; ++k)
    {
        const double x = cdf.quantile(static_cast<double>(k) / static_cast<double>(kMaxCdfRows));
        if (x == last)
            continue;
        last = x;
        os << prefix << format_number(x) << ',' << format_number(cdf(x)) << '\n';
    }
}

inline Json percentile_json(const EmpiricalCdf &cdf)
{
    if (cdf.empty())
        return nullptr;
    return Json{{"50", cdf.quantile(0.50)}, {"90", cdf.quantile(0.90)}, {"95", cdf.quantile(0.95)},
                {"99", cdf.quantile(0.99)}};
}

inline Json outage_summary_json(const CampaignResult &res)
{
    Json out = Json::array();
    for (const auto &o : res.outage)
    {
        out.push_back(Json{
            {"environment", res.config.preset},
            {"eirp_dbm", o.eirp},
            {"lambda_outage_db", o.lambda_outage},
            {"outage_probability_mean", o.probability_mean},
            {"outage_probability_ci95", o.probability_ci95},
            {"outage_runs", o.run_lengths.size()},
            {"run_length_percentiles", percentile_json(o.run_lengths)},
        });
    }
    return out;
}

inline Json summary_json(const CampaignResult &res)
{
    Json j{
        {"environment", res.config.preset},
        {"config", to_json(res.config)},
        {"mean_nlos_fraction", res.mean_nlos_fraction},
        {"nlos_segments", res.nlos_lengths.size()},
        {"nlos_length_percentiles", percentile_json(res.nlos_lengths)},
        {"outage", outage_summary_json(res)},
    };
    if (res.ks_model_vs_oracle)
        j["ks_model_vs_oracle"] = *res.ks_model_vs_oracle;
    return j;
}

/// Writes config.json, nlos_cdf.csv, attenuation_cdf.csv,
/// outage_distance_cdf.csv and summary.json into `dir`. Runtime is not
/// written so that repeated runs are byte-identical.
inline void write_campaign_dir(const std::filesystem::path &dir, const CampaignResult &res)
{
    std::filesystem::create_directories(dir);
    auto open = [&](const char *name) {
        std::ofstream os(dir / name, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open " + (dir / name).string());
        return os;
    };
    {
        auto os = open("config.json");
        os << to_json(res.config).dump(2) << '\n';
    }
    {
        auto os = open("nlos_cdf.csv");
        write_provenance(os, res.config);
        os << "x_m,y\n";
        write_cdf_rows(os, res.nlos_lengths);
    }
    {
        auto os = open("attenuation_cdf.csv");
        write_provenance(os, res.config);
        os << "x_db,y\n";
        write_cdf_rows(os, res.attenuation);
    }
    {
        auto os = open("outage_distance_cdf.csv");
        write_provenance(os, res.config);
        os << "eirp_dbm,x_m,y\n";
        for (const auto &o : res.outage)
            write_cdf_rows(os, o.run_lengths, format_number(o.eirp) + ",");
    }
    {
        auto os = open("summary.json");
        os << summary_json(res).dump(2) << '\n';
    }
}

} // namespace a2g
