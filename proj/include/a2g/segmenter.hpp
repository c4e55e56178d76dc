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

#include "a2g/ecdf.hpp"
#include "a2g/geometry.hpp"
#include "a2g/los_model.hpp"
#include "a2g/rng.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace a2g
{

enum class LinkState
{
    Los,
    Nlos,
};

inline std::string_view to_string(LinkState s) { return s == LinkState::Los ? "LOS" : "NLOS"; }

struct LosSegment
{
    LinkState state;
    double start; // offset along the path [m]
    double length; // [m]

    double end() const { return start + length; }
};

/// Ordered LOS/NLOS segments that tile a path of the given length.
class LosTrace
{
  public:
    LosTrace() = default;
    LosTrace(std::vector<LosSegment> segments, double path_length)
        : segments_(std::move(segments)), path_length_(path_length)
    {
    }

    std::span<const LosSegment> segments() const { return segments_; }
    double path_length() const { return path_length_; }
    std::size_t size() const { return segments_.size(); }

    double total_length() const
    {
        double s = 0.0;
        for (const auto &seg : segments_)
            s += seg.length;
        return s;
    }

    double nlos_length() const
    {
        double s = 0.0;
        for (const auto &seg : segments_)
            if (seg.state == LinkState::Nlos)
                s += seg.length;
        return s;
    }

  private:
    std::vector<LosSegment> segments_;
    double path_length_ = 0.0;
};

/// Joins adjacent segments that share a state.
inline LosTrace merge_segments(const LosTrace &trace)
{
    std::vector<LosSegment> out;
    for (const auto &seg : trace.segments())
    {
        if (!out.empty() && out.back().state == seg.state)
            out.back().length += seg.length;
        else
            out.push_back(seg);
    }
    return LosTrace(std::move(out), trace.path_length());
}

struct SegmenterOptions
{
    // Merge consecutive same-state segments into contiguous runs.
    bool merge = true;
};

/// Probabilistic LOS/NLOS segmentation of a straight path along a street.
///
/// The path is walked block by block (one building plus one street). At the
/// start of each block the state is drawn with the nearest-building
/// probability; an NLOS draw covers the building width W. The rest of the
/// block is filled with segments whose state uses the second-building
/// probability at the current UE position, with lengths U(0, S] for LOS and
/// U(0, W] for NLOS. Segments are clipped at block ends and at the path end,
/// and a trailing partial block is processed like a full one.
template <class URBG>
LosTrace generate_segments(const EnvironmentParams &env, const AbsPlacement &abs, const UePath &path, URBG &rng,
                           const SegmenterOptions &opts = {})
{
    const double length = path.length();
    const double block = env.block_length();
    const double street = env.street_width();
    const double building = env.building_width();
    const Vec2 origin = path.start();
    const Vec2 dir{(path.end().x - origin.x) / length, (path.end().y - origin.y) / length};
    // Paths run along a street, so the street axis is the path direction.
    const StreetAxis axis = std::abs(dir.x) > std::abs(dir.y) ? StreetAxis::X : StreetAxis::Y;

    auto angles_at = [&](double s) {
        return link_angles({origin.x + dir.x * s, origin.y + dir.y * s}, abs, axis);
    };
    auto draw_state = [&](double s, int kappa) {
        return uniform01(rng) < p_nlos_link(angles_at(s), env, kappa) ? LinkState::Nlos : LinkState::Los;
    };

    std::vector<LosSegment> segments;
    auto append = [&](LinkState state, double start, double len) {
        if (len > 0.0)
            segments.push_back({state, start, len});
    };

    const auto full_blocks = static_cast<std::size_t>(std::floor(length / block));
    const bool tail = length - static_cast<double>(full_blocks) * block > 1e-9;
    const std::size_t blocks = full_blocks + (tail ? 1 : 0);

    for (std::size_t k = 0; k < blocks; ++k)
    {
        const double block_start = static_cast<double>(k) * block;
        const double block_end = k + 1 == blocks ? length : static_cast<double>(k + 1) * block;
        double pos = block_start;

        if (draw_state(pos, 1) == LinkState::Nlos)
        {
            const double next = std::min(pos + building, block_end);
            append(LinkState::Nlos, pos, next - pos);
            pos = next;
        }
        while (pos < block_end)
        {
            const LinkState state = draw_state(pos, 2);
            const double span = state == LinkState::Los ? street : building;
            // (0, span] avoids zero-length segments.
            const double len = span * (1.0 - uniform01(rng));
            const double next = std::min(pos + len, block_end);
            append(state, pos, next - pos);
            pos = next;
        }
    }

    LosTrace raw(std::move(segments), length);
    return opts.merge ? merge_segments(raw) : raw;
}

/// State of every path point. A point on a boundary belongs to the later
/// segment; the final point belongs to the last segment.
inline std::vector<LinkState> pointwise_states(const LosTrace &trace, const UePath &path)
{
    const auto segs = trace.segments();
    if (segs.empty())
        throw std::invalid_argument("trace has no segments");
    std::vector<LinkState> out;
    out.reserve(path.size());
    std::size_t k = 0;
    for (double s : path.offsets())
    {
        while (k + 1 < segs.size() && s >= segs[k + 1].start)
            ++k;
        out.push_back(segs[k].state);
    }
    return out;
}

/// Lengths of the merged NLOS runs of each trace, pooled.
inline std::vector<double> nlos_lengths(std::span<const LosTrace> traces)
{
    std::vector<double> out;
    for (const auto &t : traces)
    {
        const auto merged = merge_segments(t);
        for (const auto &seg : merged.segments())
            if (seg.state == LinkState::Nlos)
                out.push_back(seg.length);
    }
    return out;
}

// An empty result signals that no trace contained blockage.
inline EmpiricalCdf nlos_length_cdf(std::span<const LosTrace> traces)
{
    if (traces.empty())
        throw std::invalid_argument("at least one trace is required");
    return EmpiricalCdf(nlos_lengths(traces));
}

} // namespace a2g
