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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace a2g
{

inline double outage_threshold(double eirp_dbm, double sensitivity_dbm) { return eirp_dbm - sensitivity_dbm; }

struct LinkBudget
{
    double eirp;        // [dBm]
    double sensitivity; // [dBm]

    // Largest attenuation the link tolerates [dB].
    double lambda_outage() const { return outage_threshold(eirp, sensitivity); }
};

struct OutageReport
{
    double outage_probability = 0.0;
    std::size_t points_in_outage = 0;
    std::size_t total_points = 0;
    std::vector<double> outage_runs; // contiguous outage lengths [m]
};

/// Marks points whose attenuation strictly exceeds the budget and measures
/// contiguous outage runs. Run boundaries are the midpoints between a point in
/// outage and its neighbour, clamped to the path ends.
inline OutageReport detect_outage(std::span<const double> offsets, std::span<const double> attenuation,
                                  const LinkBudget &budget)
{
    if (offsets.empty())
        throw std::invalid_argument("no channel samples");
    if (offsets.size() != attenuation.size())
        throw std::invalid_argument("offsets and attenuation must align");
    const double limit = budget.lambda_outage();
    const std::size_t n = offsets.size();

    OutageReport report;
    report.total_points = n;
    std::size_t k = 0;
    while (k < n)
    {
        if (!(attenuation[k] > limit))
        {
            ++k;
            continue;
        }
        const std::size_t first = k;
        while (k < n && attenuation[k] > limit)
            ++k;
        const std::size_t last = k - 1;
        const double lo = first == 0 ? offsets[0] : 0.5 * (offsets[first - 1] + offsets[first]);
        const double hi = last + 1 == n ? offsets[n - 1] : 0.5 * (offsets[last] + offsets[last + 1]);
        report.points_in_outage += last - first + 1;
        report.outage_runs.push_back(hi - lo);
    }
    report.outage_probability = static_cast<double>(report.points_in_outage) / static_cast<double>(n);
    return report;
}

inline OutageReport detect_outage(std::span<const ChannelSample> samples, const LinkBudget &budget)
{
    std::vector<double> offsets;
    std::vector<double> attenuation;
    offsets.reserve(samples.size());
    attenuation.reserve(samples.size());
    for (const auto &s : samples)
    {
        offsets.push_back(s.y);
        attenuation.push_back(s.lambda_total);
    }
    return detect_outage(offsets, attenuation, budget);
}

// Pooled outage-run lengths. An empty distribution is a legitimate result.
inline EmpiricalCdf outage_distance_cdf(std::span<const OutageReport> reports)
{
    if (reports.empty())
        throw std::invalid_argument("at least one outage report is required");
    std::vector<double> runs;
    for (const auto &r : reports)
        runs.insert(runs.end(), r.outage_runs.begin(), r.outage_runs.end());
    return EmpiricalCdf(std::move(runs));
}

} // namespace a2g
