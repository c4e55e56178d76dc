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

#include <catch_amalgamated.hpp>

#include "a2g/campaign.hpp"
#include "a2g/channel.hpp"

#include <cmath>
#include <limits>
#include <random>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using a2g::LinkState;

TEST_CASE("Reference free-space loss")
{
    const double f = 2.5e9;
    CHECK_THAT(a2g::reference_path_loss(a2g::kSpeedOfLight / (4.0 * a2g::kPi * f), f), WithinAbs(0.0, 1e-12));
    CHECK_THAT(a2g::reference_path_loss(100, f), WithinAbs(80.40658339532413, 1e-9));
    CHECK_THAT(a2g::reference_path_loss(300, f) - a2g::reference_path_loss(100, f),
               WithinAbs(9.542425094393248, 1e-9));
    CHECK_THROWS(a2g::reference_path_loss(0, f));
}

TEST_CASE("Excess path loss")
{
    CHECK(a2g::excess_path_loss(90, LinkState::Los) == 0.0);
    CHECK_THAT(a2g::excess_path_loss(30, LinkState::Los), WithinAbs(6.020599913279624, 1e-9));
    CHECK_THAT(a2g::excess_path_loss(90, LinkState::Nlos, a2g::NlosExcessModel::AsPrinted),
               WithinAbs(-4.1164, 1e-12));
    CHECK_THAT(a2g::excess_path_loss(90, LinkState::Nlos, a2g::NlosExcessModel::SignCorrected),
               WithinAbs(4.1164, 1e-12));
    CHECK_THAT(a2g::excess_path_loss(10, LinkState::Nlos), WithinAbs(16.16 - 12.0436 * std::exp(-80.0 / 7.52), 1e-12));
    CHECK_THROWS_AS(a2g::excess_path_loss(0, LinkState::Los), std::domain_error);
    CHECK_THROWS_AS(a2g::excess_path_loss(-5, LinkState::Nlos), std::domain_error);

    double prev = std::numeric_limits<double>::infinity();
    for (double theta = 0.1; theta <= 90.0; theta += 0.1)
    {
        const double l = a2g::excess_path_loss(theta, LinkState::Los);
        REQUIRE(l >= 0.0);
        REQUIRE(l < prev);
        prev = l;
    }
}

TEST_CASE("Shadow-fading standard deviation")
{
    const a2g::ShadowParams p;
    CHECK(a2g::shadow_sigma(90, LinkState::Los, p) == 0.0);
    CHECK(a2g::shadow_sigma(90, LinkState::Nlos, p) == 0.0);
    CHECK_THAT(a2g::shadow_sigma(0, LinkState::Los, p), WithinAbs(0.7858961836801988, 1e-12));
    CHECK_THAT(a2g::shadow_sigma(0, LinkState::Nlos, p), WithinAbs(6.711637299845195, 1e-12));
    CHECK_THROWS(a2g::shadow_sigma(-1, LinkState::Los, p));
}

TEST_CASE("AR field limits")
{
    std::vector<double> offsets(2000);
    for (std::size_t k = 0; k < offsets.size(); ++k)
        offsets[k] = 0.3 * static_cast<double>(k);

    SECTION("infinite decorrelation distance freezes the field")
    {
        std::mt19937_64 rng(1);
        const auto f = a2g::normalized_shadow_field(offsets, std::numeric_limits<double>::infinity(), rng);
        for (double v : f)
            REQUIRE(v == f[0]);
    }
    SECTION("vanishing decorrelation distance gives white noise")
    {
        std::mt19937_64 rng(2);
        std::vector<double> long_offsets(200'000);
        for (std::size_t k = 0; k < long_offsets.size(); ++k)
            long_offsets[k] = 0.3 * static_cast<double>(k);
        const auto f = a2g::normalized_shadow_field(long_offsets, 1e-12, rng);
        double c = 0.0, v = 0.0;
        for (std::size_t k = 1; k < f.size(); ++k)
        {
            c += f[k] * f[k - 1];
            v += f[k] * f[k];
        }
        CHECK(std::abs(c / v) < 0.01);
    }
}

TEST_CASE("AR field autocorrelation follows exp(-d/11)")
{
    const std::size_t n = 1'000'000;
    std::vector<double> offsets(n);
    for (std::size_t k = 0; k < n; ++k)
        offsets[k] = 0.3 * static_cast<double>(k);
    std::mt19937_64 rng(3);
    const auto f = a2g::normalized_shadow_field(offsets, 11.0, rng);

    double mean = 0.0;
    for (double v : f)
        mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : f)
        var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);

    for (std::size_t lag : {1, 5, 10, 37, 50, 100})
    {
        double c = 0.0;
        for (std::size_t k = lag; k < n; ++k)
            c += (f[k] - mean) * (f[k - lag] - mean);
        c /= static_cast<double>(n - lag) * var;
        INFO("lag " << lag);
        CHECK_THAT(c, WithinAbs(std::exp(-0.3 * static_cast<double>(lag) / 11.0), 0.02));
    }
}

TEST_CASE("Shadow trace marginals match sigma(theta)")
{
    // Value at the end of many independent short traces at fixed geometry.
    const a2g::ShadowParams p;
    const auto path = a2g::UePath({0, 0}, {0, 15}, 0.3);
    for (auto [theta, state] : {std::pair{20.0, LinkState::Nlos}, std::pair{35.0, LinkState::Los}})
    {
        const std::vector<LinkState> states(path.size(), state);
        const std::vector<double> thetas(path.size(), theta);
        std::mt19937_64 rng(4);
        const std::size_t n = 100'000;
        double s = 0.0, sq = 0.0;
        for (std::size_t k = 0; k < n; ++k)
        {
            const double x = a2g::generate_shadow_trace(path, states, thetas, p, rng).back();
            s += x;
            sq += x * x;
        }
        const double mean = s / static_cast<double>(n);
        const double sd = std::sqrt(sq / static_cast<double>(n) - mean * mean);
        const double sigma = a2g::shadow_sigma(theta, state, p);
        CHECK_THAT(sd, WithinRel(sigma, 0.02));
        CHECK(std::abs(mean) < 3.0 * sigma / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("Continuity modes only differ at state changes")
{
    const auto path = a2g::UePath({0, 0}, {0, 30}, 0.3);
    const std::vector<double> thetas(path.size(), 30.0);
    std::vector<LinkState> states(path.size(), LinkState::Los);
    const a2g::ShadowParams p;

    std::mt19937_64 r1(5), r2(5);
    auto a = a2g::generate_shadow_trace(path, states, thetas, p, r1, a2g::ShadowContinuity::CarryOver);
    auto b = a2g::generate_shadow_trace(path, states, thetas, p, r2, a2g::ShadowContinuity::Restart);
    CHECK(a == b);

    for (std::size_t k = 50; k < states.size(); ++k)
        states[k] = LinkState::Nlos;
    std::mt19937_64 r3(5), r4(5);
    a = a2g::generate_shadow_trace(path, states, thetas, p, r3, a2g::ShadowContinuity::CarryOver);
    b = a2g::generate_shadow_trace(path, states, thetas, p, r4, a2g::ShadowContinuity::Restart);
    for (std::size_t k = 0; k < 50; ++k)
        REQUIRE(a[k] == b[k]);
    CHECK(a[50] != b[50]);
}

TEST_CASE("Channel trace decomposition")
{
    const auto env = a2g::preset("urban");
    const auto path = a2g::build_path(1000, 0.3, env.street_width());
    const a2g::AbsPlacement abs{path.points()[1000].x, path.points()[1000].y, 120};
    std::mt19937_64 seg_rng(6);
    const auto trace = a2g::generate_segments(env, abs, path, seg_rng);
    const a2g::ChannelConfig cfg;

    std::mt19937_64 r1(7), r2(8);
    const auto a = a2g::channel_trace(path, trace, abs, cfg, r1);
    const auto b = a2g::channel_trace(path, trace, abs, cfg, r2);
    REQUIRE(a.size() == path.size());

    bool xi_differs = false;
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        REQUIRE(std::abs(a[k].lambda_total - (a[k].lambda0 + a[k].lambda_ex + a[k].xi)) < 1e-9);
        REQUIRE(a[k].lambda0 == b[k].lambda0);
        REQUIRE(a[k].lambda_ex == b[k].lambda_ex);
        xi_differs |= a[k].xi != b[k].xi;
    }
    CHECK(xi_differs);

    // Directly under the ABS on a clear path: no excess loss, no shadowing spread.
    const a2g::LosTrace clear({{LinkState::Los, 0.0, 1000.0}}, 1000.0);
    std::mt19937_64 r3(9);
    const auto c = a2g::channel_trace(path, clear, abs, cfg, r3);
    const auto &top = c[1000];
    CHECK(top.theta == 90.0);
    CHECK(top.state == LinkState::Los);
    CHECK(top.xi == 0.0);
    CHECK(top.lambda_total == top.lambda0);
    CHECK_THAT(top.lambda0, WithinAbs(a2g::reference_path_loss(120, 2.5e9), 1e-12));
}
