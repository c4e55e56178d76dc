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

#include "a2g/channel.hpp"
#include "a2g/ecdf.hpp"
#include "a2g/geometry.hpp"
#include "a2g/outage.hpp"
#include "a2g/ray_oracle.hpp"
#include "a2g/rng.hpp"
#include "a2g/segmenter.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace a2g
{

inline constexpr std::array<std::string_view, 4> kPresetNames{"suburban", "urban", "dense_urban", "high_rise"};

/// ITU built-up parameters of the four reference environments.
inline EnvironmentParams preset(std::string_view name)
{
    if (name == "suburban")
        return {0.1, 750.0, 8.0};
    if (name == "urban")
        return {0.3, 500.0, 15.0};
    if (name == "dense_urban")
        return {0.5, 300.0, 20.0};
    if (name == "high_rise")
        return {0.5, 300.0, 50.0};
    throw std::invalid_argument("unknown environment preset '" + std::string(name) + "'");
}

enum class LosSource
{
    Probabilistic,
    OracleFull,
    OracleWall,
};

inline std::string_view to_string(LosSource s)
{
    switch (s)
    {
    case LosSource::Probabilistic:
        return "probabilistic";
    case LosSource::OracleFull:
        return "oracle_full";
    case LosSource::OracleWall:
        return "oracle_wall";
    }
    return "?";
}

inline LosSource parse_los_source(std::string_view s)
{
    if (s == "probabilistic")
        return LosSource::Probabilistic;
    if (s == "oracle_full")
        return LosSource::OracleFull;
    if (s == "oracle_wall")
        return LosSource::OracleWall;
    throw std::invalid_argument("unknown LOS source '" + std::string(s) + "'");
}

inline std::string_view to_string(ShadowContinuity c)
{
    return c == ShadowContinuity::CarryOver ? "carry_over" : "restart";
}

inline std::string_view to_string(NlosExcessModel m)
{
    return m == NlosExcessModel::SignCorrected ? "sign_corrected" : "as_printed";
}

inline NlosExcessModel parse_nlos_excess(std::string_view s)
{
    if (s == "sign_corrected")
        return NlosExcessModel::SignCorrected;
    if (s == "as_printed")
        return NlosExcessModel::AsPrinted;
    throw std::invalid_argument("unknown NLOS excess model '" + std::string(s) + "'");
}

inline ShadowContinuity parse_shadow_continuity(std::string_view s)
{
    if (s == "carry_over")
        return ShadowContinuity::CarryOver;
    if (s == "restart")
        return ShadowContinuity::Restart;
    throw std::invalid_argument("unknown shadow continuity '" + std::string(s) + "'");
}

// Monte Carlo scenario. Defaults reproduce the reference simulation setup.
struct ScenarioConfig
{
    std::string preset = "urban";
    std::size_t n_realizations = 1000;
    std::uint64_t seed = 0;

    double abs_xy_min = 0.0; // ABS ground coordinates ~ U(min, max) [m]
    double abs_xy_max = 1000.0;
    double abs_h_min = 30.0; // ABS altitude ~ U(min, max) [m]
    double abs_h_max = 300.0;

    double path_length = 1000.0; // [m]
    double resolution = 0.3;     // [m]
    std::vector<double> eirp = {13.0, 18.0, 23.0}; // [dBm]
    double sensitivity = -84.7;  // [dBm]

    LosSource los_source = LosSource::Probabilistic;
    ChannelConfig channel;

    EnvironmentParams environment() const { return a2g::preset(preset); }

    void validate() const
    {
        (void)environment();
        if (n_realizations < 1)
            throw std::invalid_argument("n_realizations must be at least 1");
        if (!(abs_xy_max >= abs_xy_min))
            throw std::invalid_argument("abs_xy_max must not be below abs_xy_min");
        if (!(abs_h_min > 0.0) || !(abs_h_max >= abs_h_min))
            throw std::invalid_argument("ABS altitude range must be positive and ordered");
        if (!(path_length > 0.0) || !(resolution > 0.0))
            throw std::invalid_argument("path length and resolution must be positive");
        if (!(channel.frequency > 0.0))
            throw std::invalid_argument("frequency must be positive");
        if (eirp.empty())
            throw std::invalid_argument("at least one EIRP value is required");
        if (!(channel.shadow.decorrelation_distance >= 0.0))
            throw std::invalid_argument("decorrelation distance must be non-negative");
    }
};

template <class URBG>
AbsPlacement sample_abs_placement(const ScenarioConfig &cfg, URBG &rng)
{
    const double x = cfg.abs_xy_min + (cfg.abs_xy_max - cfg.abs_xy_min) * uniform01(rng);
    const double y = cfg.abs_xy_min + (cfg.abs_xy_max - cfg.abs_xy_min) * uniform01(rng);
    const double h = cfg.abs_h_min + (cfg.abs_h_max - cfg.abs_h_min) * uniform01(rng);
    return {x, y, h};
}

struct RealizationResult
{
    std::size_t index = 0;
    AbsPlacement abs{};
    LosTrace trace; // merged
    std::vector<ChannelSample> channel;
    std::vector<OutageReport> outage; // one per configured EIRP, same order
};

namespace detail
{

inline void check_index(const ScenarioConfig &cfg, std::size_t index)
{
    if (index >= cfg.n_realizations)
        throw std::out_of_range("realization index " + std::to_string(index) + " >= n_realizations "
                                + std::to_string(cfg.n_realizations));
}

inline LosTrace realization_los_trace(const ScenarioConfig &cfg, std::size_t index, const UePath &path,
                                      const AbsPlacement &abs)
{
    const auto env = cfg.environment();
    if (cfg.los_source == LosSource::Probabilistic)
    {
        auto rng = make_stream(cfg.seed, index, StreamRole::Segments);
        return generate_segments(env, abs, path, rng);
    }
    auto rng = make_stream(cfg.seed, index, StreamRole::Layout);
    const auto layout = generate_layout(env, rng);
    const auto method = cfg.los_source == LosSource::OracleFull ? LosMethod::Full : LosMethod::Wall;
    return trace_path_los(path, abs, layout, method);
}

} // namespace detail

inline UePath scenario_path(const ScenarioConfig &cfg)
{
    return build_path(cfg.path_length, cfg.resolution, cfg.environment().street_width());
}

inline AbsPlacement realization_abs(const ScenarioConfig &cfg, std::size_t index)
{
    detail::check_index(cfg, index);
    auto rng = make_stream(cfg.seed, index, StreamRole::AbsPlacement);
    return sample_abs_placement(cfg, rng);
}

/// Merged LOS trace of one realization without the channel stage.
inline LosTrace realization_los_trace(const ScenarioConfig &cfg, std::size_t index)
{
    const auto abs = realization_abs(cfg, index);
    return detail::realization_los_trace(cfg, index, scenario_path(cfg), abs);
}

/// One Monte Carlo realization. Every stochastic stage draws from its own
/// stream derived from (seed, index, role), so the result depends only on
/// the configuration and the index.
inline RealizationResult run_realization(const ScenarioConfig &cfg, std::size_t index)
{
    cfg.validate();
    RealizationResult out;
    out.index = index;
    out.abs = realization_abs(cfg, index);
    const auto path = scenario_path(cfg);
    out.trace = detail::realization_los_trace(cfg, index, path, out.abs);

    auto shadow_rng = make_stream(cfg.seed, index, StreamRole::Shadow);
    out.channel = channel_trace(path, out.trace, out.abs, cfg.channel, shadow_rng);
    for (double eirp : cfg.eirp)
        out.outage.push_back(detect_outage(out.channel, {eirp, cfg.sensitivity}));
    return out;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads. The first
/// exception thrown by any call is rethrown after all threads join.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn &&fn)
{
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

struct OutageSummary
{
    double eirp = 0.0;
    double lambda_outage = 0.0;
    double probability_mean = 0.0; // pooled over all path points
    double probability_ci95 = 0.0; // half-width over realizations
    EmpiricalCdf run_lengths;
    std::vector<double> per_realization;
};

struct CampaignResult
{
    ScenarioConfig config;
    EmpiricalCdf nlos_lengths;
    EmpiricalCdf attenuation;
    double mean_nlos_fraction = 0.0;
    std::vector<OutageSummary> outage; // per EIRP, config order
    std::optional<double> ks_model_vs_oracle;
    double runtime_seconds = 0.0;
};

/// All realizations of a scenario, aggregated in index order so the result is
/// independent of the worker count.
inline CampaignResult run_campaign(const ScenarioConfig &cfg, std::size_t workers = 1)
{
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = cfg.n_realizations;

    struct Partial
    {
        std::vector<double> nlos;
        std::vector<double> attenuation;
        double nlos_fraction = 0.0;
        std::vector<OutageReport> outage;
    };
    std::vector<Partial> parts(n);
    parallel_for(n, workers, [&](std::size_t i) {
        auto r = run_realization(cfg, i);
        Partial p;
        for (const auto &seg : r.trace.segments())
            if (seg.state == LinkState::Nlos)
                p.nlos.push_back(seg.length);
        p.nlos_fraction = r.trace.nlos_length() / r.trace.path_length();
        p.attenuation.reserve(r.channel.size());
        for (const auto &s : r.channel)
            p.attenuation.push_back(s.lambda_total);
        p.outage = std::move(r.outage);
        parts[i] = std::move(p);
    });

    CampaignResult res;
    res.config = cfg;
    std::vector<double> nlos;
    std::vector<double> attenuation;
    double fraction_sum = 0.0;
    for (const auto &p : parts)
    {
        nlos.insert(nlos.end(), p.nlos.begin(), p.nlos.end());
        attenuation.insert(attenuation.end(), p.attenuation.begin(), p.attenuation.end());
        fraction_sum += p.nlos_fraction;
    }
    res.nlos_lengths = EmpiricalCdf(std::move(nlos));
    res.attenuation = EmpiricalCdf(std::move(attenuation));
    res.mean_nlos_fraction = fraction_sum / static_cast<double>(n);

    for (std::size_t e = 0; e < cfg.eirp.size(); ++e)
    {
        OutageSummary sum;
        sum.eirp = cfg.eirp[e];
        sum.lambda_outage = outage_threshold(cfg.eirp[e], cfg.sensitivity);
        std::size_t hit = 0;
        std::size_t total = 0;
        std::vector<double> runs;
        for (const auto &p : parts)
        {
            const auto &r = p.outage[e];
            hit += r.points_in_outage;
            total += r.total_points;
            sum.per_realization.push_back(r.outage_probability);
            runs.insert(runs.end(), r.outage_runs.begin(), r.outage_runs.end());
        }
        sum.probability_mean = static_cast<double>(hit) / static_cast<double>(total);
        if (n > 1)
        {
            double m = 0.0;
            for (double v : sum.per_realization)
                m += v;
            m /= static_cast<double>(n);
            double ss = 0.0;
            for (double v : sum.per_realization)
                ss += (v - m) * (v - m);
            const double sd = std::sqrt(ss / static_cast<double>(n - 1));
            sum.probability_ci95 = 1.96 * sd / std::sqrt(static_cast<double>(n));
        }
        sum.run_lengths = EmpiricalCdf(std::move(runs));
        res.outage.push_back(std::move(sum));
    }
    res.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

/// Pooled merged NLOS lengths of a scenario (LOS stage only).
inline EmpiricalCdf campaign_nlos_lengths(const ScenarioConfig &cfg, std::size_t workers = 1)
{
    cfg.validate();
    std::vector<std::vector<double>> parts(cfg.n_realizations);
    parallel_for(cfg.n_realizations, workers, [&](std::size_t i) {
        const auto trace = realization_los_trace(cfg, i);
        for (const auto &seg : trace.segments())
            if (seg.state == LinkState::Nlos)
                parts[i].push_back(seg.length);
    });
    std::vector<double> pooled;
    for (const auto &p : parts)
        pooled.insert(pooled.end(), p.begin(), p.end());
    return EmpiricalCdf(std::move(pooled));
}

struct ValidationResult
{
    std::string environment;
    EmpiricalCdf model;
    EmpiricalCdf oracle;
    double ks = 0.0;
    double ks_critical_1pct = 0.0;
};

/// Probabilistic segmentation against the single-wall oracle on paired ABS
/// placements (same seed, so realization i shares its ABS position).
inline ValidationResult validate_model_vs_oracle(const ScenarioConfig &cfg, std::size_t workers = 1)
{
    ScenarioConfig model_cfg = cfg;
    model_cfg.los_source = LosSource::Probabilistic;
    ScenarioConfig oracle_cfg = cfg;
    oracle_cfg.los_source = LosSource::OracleWall;

    ValidationResult out;
    out.environment = cfg.preset;
    out.model = campaign_nlos_lengths(model_cfg, workers);
    out.oracle = campaign_nlos_lengths(oracle_cfg, workers);
    if (out.model.empty() || out.oracle.empty())
        throw std::runtime_error("no NLOS segments generated for environment '" + cfg.preset + "'");
    out.ks = ks_distance(out.model, out.oracle);
    out.ks_critical_1pct = ks_critical_value(out.model.size(), out.oracle.size(), 0.01);
    return out;
}

} // namespace a2g
