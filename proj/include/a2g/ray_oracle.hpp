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

#include "a2g/geometry.hpp"
#include "a2g/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace a2g
{

// Geometry-based LOS ground truth on explicit layouts.
//
// Two independent routes are provided. The full check intersects the 3-D
// UE->ABS segment with every building box inside the ground bounding box of
// the ray. The wall check walks the grid cells crossed by the ground
// projection and compares the ray altitude at each building's entry face
// with the building height. Grazing contacts count as LOS in both.

enum class LosMethod
{
    Full,
    Wall,
};

namespace detail
{

inline void check_ue_position(Vec2 ue, const GridLayout &layout)
{
    if (layout.building_at(ue))
        throw std::invalid_argument("UE position lies inside a building footprint");
}

// Parametric overlap of p + t*d, t in [t0, t1], with the open slab (lo, hi).
// Returns false when the overlap is empty or degenerate.
inline bool clip_slab(double p, double d, double lo, double hi, double &t0, double &t1)
{
    if (d == 0.0)
        return p > lo && p < hi;
    double ta = (lo - p) / d;
    double tb = (hi - p) / d;
    if (ta > tb)
        std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    return t0 < t1;
}

inline bool segment_hits_box(Vec2 ue, const AbsPlacement &abs, const Footprint &fp, double height)
{
    double t0 = 0.0;
    double t1 = 1.0;
    return clip_slab(ue.x, abs.x - ue.x, fp.x_min, fp.x_max, t0, t1)
           && clip_slab(ue.y, abs.y - ue.y, fp.y_min, fp.y_max, t0, t1)
           && clip_slab(0.0, abs.h, 0.0, height, t0, t1);
}

// Parameter at which the ground projection enters the footprint, if it does.
inline std::optional<double> footprint_entry(Vec2 ue, const AbsPlacement &abs, const Footprint &fp)
{
    double t0 = 0.0;
    double t1 = 1.0;
    if (!clip_slab(ue.x, abs.x - ue.x, fp.x_min, fp.x_max, t0, t1))
        return std::nullopt;
    if (!clip_slab(ue.y, abs.y - ue.y, fp.y_min, fp.y_max, t0, t1))
        return std::nullopt;
    return t0;
}

inline long cell_index(double coord, double block) { return static_cast<long>(std::floor(coord / block)); }

} // namespace detail

/// Exact box intersection over all buildings the ray could reach.
inline LinkState los_check_full(Vec2 ue, const AbsPlacement &abs, const GridLayout &layout)
{
    detail::check_ue_position(ue, layout);
    if (!(abs.h > 0.0))
        throw std::invalid_argument("ABS altitude must be positive");
    const double max_h = layout.max_height();
    if (max_h <= 0.0)
        return LinkState::Los;

    // Above this parameter the ray clears every roof.
    const double reach = std::min(1.0, max_h / abs.h);
    const double xa = ue.x;
    const double xb = ue.x + (abs.x - ue.x) * reach;
    const double ya = ue.y;
    const double yb = ue.y + (abs.y - ue.y) * reach;

    const double block = layout.params().block_length();
    const long rows = static_cast<long>(layout.rows());
    const long cols = static_cast<long>(layout.cols());
    const long i0 = std::max(0L, detail::cell_index(std::min(xa, xb), block));
    const long i1 = std::min(rows - 1, detail::cell_index(std::max(xa, xb), block));
    const long j0 = std::max(0L, detail::cell_index(std::min(ya, yb), block));
    const long j1 = std::min(cols - 1, detail::cell_index(std::max(ya, yb), block));

    for (long i = i0; i <= i1; ++i)
    {
        for (long j = j0; j <= j1; ++j)
        {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            if (detail::segment_hits_box(ue, abs, layout.footprint(ui, uj), layout.height(ui, uj)))
                return LinkState::Nlos;
        }
    }
    return LinkState::Los;
}

/// Single-wall approximation: each crossed building is reduced to the wall at
/// the face where the ground projection enters its footprint.
inline LinkState los_check_wall(Vec2 ue, const AbsPlacement &abs, const GridLayout &layout)
{
    detail::check_ue_position(ue, layout);
    if (!(abs.h > 0.0))
        throw std::invalid_argument("ABS altitude must be positive");
    const double max_h = layout.max_height();
    const double block = layout.params().block_length();
    const long rows = static_cast<long>(layout.rows());
    const long cols = static_cast<long>(layout.cols());

    const double dx = abs.x - ue.x;
    const double dy = abs.y - ue.y;
    long ix = detail::cell_index(ue.x, block);
    long iy = detail::cell_index(ue.y, block);
    const long step_x = dx > 0.0 ? 1 : -1;
    const long step_y = dy > 0.0 ? 1 : -1;
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double delta_x = dx != 0.0 ? block / std::abs(dx) : inf;
    const double delta_y = dy != 0.0 ? block / std::abs(dy) : inf;
    double next_x = dx > 0.0   ? ((static_cast<double>(ix) + 1.0) * block - ue.x) / dx
                    : dx < 0.0 ? (static_cast<double>(ix) * block - ue.x) / dx
                               : inf;
    double next_y = dy > 0.0   ? ((static_cast<double>(iy) + 1.0) * block - ue.y) / dy
                    : dy < 0.0 ? (static_cast<double>(iy) * block - ue.y) / dy
                               : inf;

    double t_cell = 0.0;
    while (t_cell <= 1.0 && abs.h * t_cell < max_h)
    {
        if (ix >= 0 && ix < rows && iy >= 0 && iy < cols)
        {
            const auto ui = static_cast<std::size_t>(ix);
            const auto uj = static_cast<std::size_t>(iy);
            if (const auto entry = detail::footprint_entry(ue, abs, layout.footprint(ui, uj)))
            {
                if (abs.h * *entry < layout.height(ui, uj))
                    return LinkState::Nlos;
            }
        }
        if (next_x < next_y)
        {
            t_cell = next_x;
            next_x += delta_x;
            ix += step_x;
        }
        else
        {
            t_cell = next_y;
            next_y += delta_y;
            iy += step_y;
        }
        if (t_cell == inf)
            break;
    }
    return LinkState::Los;
}

inline LinkState los_check(Vec2 ue, const AbsPlacement &abs, const GridLayout &layout, LosMethod method)
{
    return method == LosMethod::Full ? los_check_full(ue, abs, layout) : los_check_wall(ue, abs, layout);
}

/// Per-point LOS along the path, run-length encoded. Boundaries between runs
/// sit halfway between the differing samples.
inline LosTrace trace_path_los(const UePath &path, const AbsPlacement &abs, const GridLayout &layout,
                               LosMethod method)
{
    const auto pts = path.points();
    const auto off = path.offsets();
    std::vector<LosSegment> segments;
    double run_start = 0.0;
    LinkState current = los_check(pts[0], abs, layout, method);
    for (std::size_t k = 1; k < pts.size(); ++k)
    {
        const LinkState s = los_check(pts[k], abs, layout, method);
        if (s != current)
        {
            const double boundary = 0.5 * (off[k - 1] + off[k]);
            segments.push_back({current, run_start, boundary - run_start});
            run_start = boundary;
            current = s;
        }
    }
    segments.push_back({current, run_start, path.length() - run_start});
    return LosTrace(std::move(segments), path.length());
}

} // namespace a2g
