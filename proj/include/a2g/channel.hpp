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

#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace a2g
{

inline constexpr double kSpeedOfLight = 299'792'458.0; // [m/s]

/// Elevation-dependent shadow-fading fit, sigma = rho * (90 - theta)^mu [dB],
/// and the decorrelation distance of the spatial field.
struct ShadowParams
{
    double rho_los = 0.0272;
    double mu_los = 0.7475;
    double rho_nlos = 2.3197;
    double mu_nlos = 0.2361;
    double decorrelation_distance = 11.0; // [m]
};

// Sign convention of the NLOS excess-loss fit. AsPrinted evaluates
// -16.16 + 12.0436 exp(-(90 - theta) / 7.52), which is negative everywhere and
// makes NLOS links less lossy than LOS ones. SignCorrected evaluates the
// negation, 16.16 - 12.0436 exp(-(90 - theta) / 7.52).
enum class NlosExcessModel
{
    SignCorrected,
    AsPrinted,
};

// What the normalised field does where the LOS state changes.
enum class ShadowContinuity
{
    CarryOver, // keep the correlated state, only sigma jumps
    Restart,   // redraw the state from N(0, 1)
};

struct ChannelSample
{
    double y;      // offset along the path [m]
    LinkState state;
    double theta;  // [deg]
    double lambda0;
    double lambda_ex;
    double xi;
    double lambda_total; // lambda0 + lambda_ex + xi [dB]
};

/// Free-space loss at the ABS altitude, 20 log10(4 pi h f / c).
inline double reference_path_loss(double abs_height, double frequency)
{
    if (!(abs_height > 0.0) || !(frequency > 0.0))
        throw std::domain_error("height and frequency must be positive");
    return 20.0 * std::log10(4.0 * kPi * abs_height * frequency / kSpeedOfLight);
}

inline double excess_path_loss(double theta_deg, LinkState state,
                               NlosExcessModel nlos = NlosExcessModel::SignCorrected)
{
    if (!(theta_deg > 0.0 && theta_deg <= 90.0))
        throw std::domain_error("elevation must lie in (0, 90] degrees");
    if (state == LinkState::Los)
        return -20.0 * std::log10(std::sin(deg_to_rad(theta_deg)));
    const double printed = -16.16 + 12.0436 * std::exp(-(90.0 - theta_deg) / 7.52);
    return nlos == NlosExcessModel::AsPrinted ? printed : -printed;
}

inline double shadow_sigma(double theta_deg, LinkState state, const ShadowParams &params)
{
    if (!(theta_deg >= 0.0 && theta_deg <= 90.0))
        throw std::domain_error("elevation must lie in [0, 90] degrees");
    const double rho = state == LinkState::Los ? params.rho_los : params.rho_nlos;
    const double mu = state == LinkState::Los ? params.mu_los : params.mu_nlos;
    return rho * std::pow(90.0 - theta_deg, mu);
}

/// Unit-variance AR(1) field sampled at the given path offsets:
/// n_k = a_k n_{k-1} + sqrt(1 - a_k^2) e_k with a_k = exp(-|s_k - s_{k-1}| / d).
///
/// With Restart continuity, `states` marks where a fresh draw is taken.
template <class URBG>
std::vector<double> normalized_shadow_field(std::span<const double> offsets, double decorrelation_distance,
                                            URBG &rng, std::span<const LinkState> states = {},
                                            ShadowContinuity continuity = ShadowContinuity::CarryOver)
{
    if (!(decorrelation_distance >= 0.0))
        throw std::domain_error("decorrelation distance must be non-negative");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> field(offsets.size());
    const bool restart = continuity == ShadowContinuity::Restart && states.size() == offsets.size();
    for (std::size_t k = 0; k < offsets.size(); ++k)
    {
        const double e = normal(rng);
        if (k == 0 || (restart && states[k] != states[k - 1]))
        {
            field[k] = e;
            continue;
        }
        const double a = std::exp(-std::abs(offsets[k] - offsets[k - 1]) / decorrelation_distance);
        field[k] = a * field[k - 1] + std::sqrt(1.0 - a * a) * e;
    }
    return field;
}

/// Shadow fading in dB: the normalised field scaled point by point by
/// sigma(theta, state).
template <class URBG>
std::vector<double> generate_shadow_trace(const UePath &path, std::span<const LinkState> states,
                                          std::span<const double> thetas, const ShadowParams &params, URBG &rng,
                                          ShadowContinuity continuity = ShadowContinuity::CarryOver)
{
    if (states.size() != path.size() || thetas.size() != path.size())
        throw std::invalid_argument("states and elevations must align with the path points");
    auto xi = normalized_shadow_field(path.offsets(), params.decorrelation_distance, rng, states, continuity);
    for (std::size_t k = 0; k < xi.size(); ++k)
        xi[k] *= shadow_sigma(thetas[k], states[k], params);
    return xi;
}

struct ChannelConfig
{
    double frequency = 2.5e9; // [Hz]
    ShadowParams shadow;
    ShadowContinuity continuity = ShadowContinuity::CarryOver;
    NlosExcessModel nlos_excess = NlosExcessModel::SignCorrected;
};

/// Total attenuation at every path point given a LOS trace.
template <class URBG>
std::vector<ChannelSample> channel_trace(const UePath &path, const LosTrace &trace, const AbsPlacement &abs,
                                         const ChannelConfig &cfg, URBG &rng)
{
    const auto states = pointwise_states(trace, path);
    const auto pts = path.points();
    const StreetAxis axis = std::abs(path.end().x - path.start().x) > std::abs(path.end().y - path.start().y)
                                ? StreetAxis::X
                                : StreetAxis::Y;
    std::vector<double> thetas(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k)
        thetas[k] = link_angles(pts[k], abs, axis).theta;

    const auto xi = generate_shadow_trace(path, states, thetas, cfg.shadow, rng, cfg.continuity);
    const double lambda0 = reference_path_loss(abs.h, cfg.frequency);
    const auto off = path.offsets();

    std::vector<ChannelSample> out;
    out.reserve(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k)
    {
        const double ex = excess_path_loss(thetas[k], states[k], cfg.nlos_excess);
        out.push_back({off[k], states[k], thetas[k], lambda0, ex, xi[k], lambda0 + ex + xi[k]});
    }
    return out;
}

} // namespace a2g
