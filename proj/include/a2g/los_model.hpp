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

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace a2g
{

// Heights of the kappa-th building along the link that start to obstruct
// the observed street (min) and shadow all of it (max).
struct CriticalHeights
{
    double min_height; // [m]
    double max_height; // [m]
    int kappa;
};

struct EffectiveWidths
{
    double street; // S'(phi) [m]
    double building; // W'(phi) [m]
};

// Azimuth limits applied before evaluating the projected widths. The street
// projection diverges at 0 deg and the building projection at 90 deg.
inline constexpr double kAzimuthFloorDeg = 1.0;
inline constexpr double kAzimuthCeilingDeg = 89.0;

namespace detail
{
inline void check_kappa(int kappa)
{
    if (kappa != 1 && kappa != 2)
        throw std::domain_error("only the two nearest buildings are modelled (kappa in {1, 2})");
}

inline void check_open_elevation(double theta_deg)
{
    if (!(theta_deg > 0.0 && theta_deg < 90.0))
        throw std::domain_error("elevation must lie in (0, 90) degrees");
}
} // namespace detail

inline CriticalHeights critical_heights(double theta_deg, double street, double building, int kappa)
{
    detail::check_open_elevation(theta_deg);
    detail::check_kappa(kappa);
    const double slope = std::tan(deg_to_rad(theta_deg));
    const double offset = (kappa - 1) * (street + building);
    return {offset * slope, (offset + street) * slope, kappa};
}

/// Probability that the kappa-th building on the UE-ABS ground line blocks
/// the link, averaged over UE positions across the street, before clamping.
///
/// Rayleigh(gamma) heights give E[min(h, c)] = gamma*sqrt(pi/2)*erf(c/(sqrt(2)*gamma)),
/// so for kappa = 1 this is the expected shadowed fraction of the street and
/// never exceeds 1. The normalising height is always that of the first building.
inline double p_nlos_building_unclamped(double theta_deg, double street, double building, double gamma, int kappa)
{
    if (!(gamma > 0.0))
        throw std::domain_error("gamma must be positive");
    const auto crit = critical_heights(theta_deg, street, building, kappa);
    const double first_max = street * std::tan(deg_to_rad(theta_deg));
    const double scale = std::sqrt(2.0) * gamma;
    return gamma * std::sqrt(kPi / 2.0) / first_max
           * (std::erf(crit.max_height / scale) - std::erf(crit.min_height / scale));
}

inline double p_nlos_building(double theta_deg, double street, double building, double gamma, int kappa)
{
    const double p = p_nlos_building_unclamped(theta_deg, street, building, gamma, kappa);
    assert(kappa != 1 || p <= 1.0 + 1e-12);
    return std::clamp(p, 0.0, 1.0);
}

inline EffectiveWidths effective_widths(double phi_deg, double street, double building)
{
    if (!(phi_deg >= 0.0 && phi_deg <= 90.0))
        throw std::domain_error("azimuth must lie in [0, 90] degrees");
    const double phi_s = deg_to_rad(std::max(phi_deg, kAzimuthFloorDeg));
    const double phi_w = deg_to_rad(std::min(phi_deg, kAzimuthCeilingDeg));
    return {street + 2.0 * street / std::tan(phi_s), building / std::cos(phi_w)};
}

// Azimuth-adjusted blockage probability. Overhead links are always LOS.
inline double p_nlos_link(const LinkAngles &angles, const EnvironmentParams &env, int kappa)
{
    detail::check_kappa(kappa);
    if (angles.theta >= 90.0)
        return 0.0;
    const auto widths = effective_widths(angles.phi, env.street_width(), env.building_width());
    return p_nlos_building(angles.theta, widths.street, widths.building, env.gamma(), kappa);
}

} // namespace a2g
