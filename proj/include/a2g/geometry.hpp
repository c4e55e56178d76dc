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

#include "a2g/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace a2g
{

inline constexpr double kPi = std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

class InvalidEnvironment : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

struct Vec2
{
    double x = 0.0;
    double y = 0.0;
};

struct GridDimensions
{
    double building_width; // W [m]
    double street_width;   // S [m]
};

/// Building and street widths of the ITU Manhattan grid.
///
/// alpha is the built-up area ratio, beta the number of buildings per km^2.
/// Throws InvalidEnvironment when the parameters leave no room for streets.
inline GridDimensions derive_grid_dimensions(double alpha, double beta)
{
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw InvalidEnvironment("alpha and beta must be positive");
    const double width = 1000.0 * std::sqrt(alpha / beta);
    const double street = 1000.0 / std::sqrt(beta) - width;
    if (!(street > 0.0))
        throw InvalidEnvironment("built-up ratio leaves no street width (alpha=" + std::to_string(alpha) + ")");
    return {width, street};
}

// ITU built-up parameters together with the derived grid widths.
class EnvironmentParams
{
  public:
    EnvironmentParams(double alpha, double beta, double gamma)
        : alpha_(alpha), beta_(beta), gamma_(gamma)
    {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw InvalidEnvironment("alpha must lie in (0, 1]");
        if (!(gamma > 0.0))
            throw InvalidEnvironment("gamma must be positive");
        const auto dims = derive_grid_dimensions(alpha, beta);
        building_width_ = dims.building_width;
        street_width_ = dims.street_width;
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    double building_width() const { return building_width_; }
    double street_width() const { return street_width_; }
    // One street plus one building.
    double block_length() const { return street_width_ + building_width_; }

  private:
    double alpha_;
    double beta_;
    double gamma_;
    double building_width_ = 0.0;
    double street_width_ = 0.0;
};

struct Footprint
{
    double x_min, x_max, y_min, y_max;

    bool contains_strictly(Vec2 p) const
    {
        return p.x > x_min && p.x < x_max && p.y > y_min && p.y < y_max;
    }
};

/// Inverse CDF of the Rayleigh distribution with scale gamma, u in [0, 1).
inline double rayleigh_quantile(double gamma, double u)
{
    return gamma * std::sqrt(-2.0 * std::log1p(-u));
}

/// A concrete city: rows x cols square buildings of side W on a regular grid.
///
/// Building (i, j) occupies [i*(S+W)+S, (i+1)*(S+W)] along x and the same
/// interval in j along y. Every block therefore starts with a street of width
/// S, so the lines x = S/2 and y = S/2 are street centerlines.
class GridLayout
{
  public:
    GridLayout(EnvironmentParams params, std::size_t rows, std::size_t cols, std::vector<double> heights)
        : params_(params), rows_(rows), cols_(cols), heights_(std::move(heights))
    {
        if (rows_ == 0 || cols_ == 0)
            throw std::invalid_argument("layout needs at least one building per axis");
        if (heights_.size() != rows_ * cols_)
            throw std::invalid_argument("height matrix does not match layout dimensions");
        for (double h : heights_)
        {
            if (!(h >= 0.0))
                throw std::invalid_argument("building heights must be non-negative");
            max_height_ = std::max(max_height_, h);
        }
    }

    const EnvironmentParams &params() const { return params_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return heights_.size(); }

    // Row-major, i along x.
    std::span<const double> heights() const { return heights_; }
    double height(std::size_t i, std::size_t j) const { return heights_[i * cols_ + j]; }
    double max_height() const { return max_height_; }

    Footprint footprint(std::size_t i, std::size_t j) const
    {
        const double block = params_.block_length();
        const double s = params_.street_width();
        const double x0 = static_cast<double>(i) * block + s;
        const double y0 = static_cast<double>(j) * block + s;
        return {x0, x0 + params_.building_width(), y0, y0 + params_.building_width()};
    }

    // Building whose open footprint contains p, if any.
    std::optional<std::pair<std::size_t, std::size_t>> building_at(Vec2 p) const
    {
        const double block = params_.block_length();
        if (p.x < 0.0 || p.y < 0.0)
            return std::nullopt;
        const auto i = static_cast<std::size_t>(std::floor(p.x / block));
        const auto j = static_cast<std::size_t>(std::floor(p.y / block));
        if (i >= rows_ || j >= cols_)
            return std::nullopt;
        if (!footprint(i, j).contains_strictly(p))
            return std::nullopt;
        return std::pair{i, j};
    }

  private:
    EnvironmentParams params_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> heights_;
    double max_height_ = 0.0;
};

// Buildings per axis so that the grid covers a 1000 m square with one spare block.
inline std::size_t default_grid_size(const EnvironmentParams &params)
{
    return static_cast<std::size_t>(std::ceil(1000.0 / params.block_length())) + 1;
}

template <class URBG>
GridLayout generate_layout(const EnvironmentParams &params, std::size_t rows, std::size_t cols, URBG &rng)
{
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("layout needs at least one building per axis");
    std::vector<double> heights(rows * cols);
    for (auto &h : heights)
        h = rayleigh_quantile(params.gamma(), uniform01(rng));
    return GridLayout(params, rows, cols, std::move(heights));
}

template <class URBG>
GridLayout generate_layout(const EnvironmentParams &params, URBG &rng)
{
    const auto n = default_grid_size(params);
    return generate_layout(params, n, n, rng);
}

/// Straight ground trajectory sampled at a fixed resolution. The final
/// interval may be shorter than the resolution so that the end point is
/// always included.
class UePath
{
  public:
    UePath(Vec2 start, Vec2 end, double resolution)
        : start_(start), end_(end), resolution_(resolution)
    {
        if (!(resolution > 0.0))
            throw std::invalid_argument("path resolution must be positive");
        length_ = std::hypot(end.x - start.x, end.y - start.y);
        if (!(length_ > 0.0))
            throw std::invalid_argument("path length must be positive");

        // Guard the count against representation error when length is a
        // multiple of the resolution (e.g. 3.0 / 0.3).
        const auto steps = static_cast<std::size_t>(std::ceil(length_ / resolution - 1e-9));
        const double ux = (end.x - start.x) / length_;
        const double uy = (end.y - start.y) / length_;
        points_.reserve(steps + 1);
        offsets_.reserve(steps + 1);
        for (std::size_t k = 0; k < steps; ++k)
        {
            const double s = static_cast<double>(k) * resolution;
            offsets_.push_back(s);
            points_.push_back({start.x + ux * s, start.y + uy * s});
        }
        offsets_.push_back(length_);
        points_.push_back(end);
    }

    Vec2 start() const { return start_; }
    Vec2 end() const { return end_; }
    double resolution() const { return resolution_; }
    double length() const { return length_; }
    std::size_t size() const { return points_.size(); }

    std::span<const Vec2> points() const { return points_; }
    // Distance of each point from the start.
    std::span<const double> offsets() const { return offsets_; }

  private:
    Vec2 start_;
    Vec2 end_;
    double resolution_;
    double length_ = 0.0;
    std::vector<Vec2> points_;
    std::vector<double> offsets_;
};

/// Path along the street centerline x = S/2 from y = 0 to y = length.
inline UePath build_path(double length, double resolution, double street_width)
{
    if (!(length > 0.0))
        throw std::invalid_argument("path length must be positive");
    return UePath({street_width / 2.0, 0.0}, {street_width / 2.0, length}, resolution);
}

struct AbsPlacement
{
    double x;
    double y;
    double h; // altitude [m]

    Vec2 ground() const { return {x, y}; }
};

enum class StreetAxis
{
    X,
    Y,
};

struct LinkAngles
{
    double theta;               // elevation [deg], (0, 90]
    double phi;                 // azimuth from the street axis folded into [0, 90] [deg]
    double horizontal_distance; // [m]
};

/// Elevation and folded azimuth of the link from a ground UE to the ABS.
/// Directly overhead returns theta = 90 and phi = 0.
inline LinkAngles link_angles(Vec2 ue, const AbsPlacement &abs, StreetAxis axis)
{
    if (!(abs.h > 0.0))
        throw std::invalid_argument("ABS altitude must be positive");
    const double dx = abs.x - ue.x;
    const double dy = abs.y - ue.y;
    const double dist = std::hypot(dx, dy);
    if (dist == 0.0)
        return {90.0, 0.0, 0.0};

    const double along = axis == StreetAxis::X ? dx : dy;
    const double across = axis == StreetAxis::X ? dy : dx;
    // Reflections across both street axes map every direction into the first quadrant.
    const double phi = rad_to_deg(std::atan2(std::abs(across), std::abs(along)));
    const double theta = rad_to_deg(std::atan2(abs.h, dist));
    return {theta, phi, dist};
}

} // namespace a2g
