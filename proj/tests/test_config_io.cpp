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

#include "a2g/config.hpp"
#include "a2g/io.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

namespace fs = std::filesystem;

namespace
{

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir(const std::string &name)
{
    auto p = fs::temp_directory_path() / ("a2g_test_" + name);
    fs::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("Empty config gives defaults")
{
    const auto cfg = a2g::parse_config_string("# nothing here\n\n   \n");
    CHECK(cfg.preset == "urban");
    CHECK(cfg.n_realizations == 1000);
    CHECK(cfg.seed == 0);
    CHECK(cfg.eirp == std::vector<double>{13.0, 18.0, 23.0});
    CHECK(cfg.sensitivity == -84.7);
    CHECK(cfg.channel.frequency == 2.5e9);
    CHECK(cfg.resolution == 0.3);
}

TEST_CASE("Config values are parsed")
{
    const auto cfg = a2g::parse_config_string(R"(
preset = high_rise   # tall city
n_realizations = 25
seed = 18446744073709551615
eirp_dbm = [13]
sensitivity_dbm = -90.5
los_source = oracle_wall
shadow_continuity = restart
nlos_excess = as_printed
d_decorr_m = 0
)");
    CHECK(cfg.preset == "high_rise");
    CHECK(cfg.n_realizations == 25);
    CHECK(cfg.seed == 18446744073709551615ull);
    CHECK(cfg.eirp == std::vector<double>{13.0});
    CHECK(cfg.sensitivity == -90.5);
    CHECK(cfg.los_source == a2g::LosSource::OracleWall);
    CHECK(cfg.channel.continuity == a2g::ShadowContinuity::Restart);
    CHECK(cfg.channel.nlos_excess == a2g::NlosExcessModel::AsPrinted);
    CHECK(cfg.channel.shadow.decorrelation_distance == 0.0);

    CHECK(a2g::parse_config_string("eirp_dbm = [ 1.5 , -2 ,3 ]").eirp == std::vector<double>{1.5, -2.0, 3.0});
}

TEST_CASE("Config errors name the key and line")
{
    try
    {
        (void)a2g::parse_config_string("seed = 3\n\nn_realisations = 10\n");
        FAIL("expected ConfigError");
    }
    catch (const a2g::ConfigError &e)
    {
        CHECK(e.key() == "n_realisations");
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("n_realisations") != std::string::npos);
    }

    CHECK_THROWS_AS(a2g::parse_config_string("n_realizations = ten"), a2g::ConfigError);
    CHECK_THROWS_AS(a2g::parse_config_string("n_realizations = 1.5"), a2g::ConfigError);
    CHECK_THROWS_AS(a2g::parse_config_string("frequency_hz = 2.5GHz"), a2g::ConfigError);
    CHECK_THROWS_AS(a2g::parse_config_string("preset = rural"), a2g::ConfigError);
    CHECK_THROWS_AS(a2g::parse_config_string("los_source = raytrace"), a2g::ConfigError);
    CHECK_THROWS_AS(a2g::parse_config_string("eirp_dbm = 13, 18"), a2g::ConfigError);
    CHECK_THROWS_AS(a2g::parse_config_string("just words"), a2g::ConfigError);

    a2g::ScenarioConfig cfg;
    CHECK_THROWS_AS(a2g::apply_config_value(cfg, "sed", "1"), std::invalid_argument);
}

TEST_CASE("Enum names round-trip")
{
    for (auto s : {a2g::LosSource::Probabilistic, a2g::LosSource::OracleFull, a2g::LosSource::OracleWall})
        CHECK(a2g::parse_los_source(a2g::to_string(s)) == s);
    for (auto c : {a2g::ShadowContinuity::CarryOver, a2g::ShadowContinuity::Restart})
        CHECK(a2g::parse_shadow_continuity(a2g::to_string(c)) == c);
    for (auto m : {a2g::NlosExcessModel::SignCorrected, a2g::NlosExcessModel::AsPrinted})
        CHECK(a2g::parse_nlos_excess(a2g::to_string(m)) == m);
}

TEST_CASE("Layout JSON")
{
    const auto env = a2g::preset("suburban");
    auto rng = a2g::make_stream(1, 0, a2g::StreamRole::Layout);
    const auto layout = a2g::generate_layout(env, rng);
    const auto j = a2g::to_json(layout);
    for (auto key : {"alpha", "beta", "gamma", "W", "S", "I", "J", "heights"})
        CHECK(j.contains(key));
    const auto rows = j["I"].get<std::size_t>();
    const auto cols = j["J"].get<std::size_t>();
    REQUIRE(j["heights"].size() == rows);
    CHECK(j["heights"][0].size() == cols);
    CHECK(j["heights"][1][2].get<double>() == layout.height(1, 2));
}

TEST_CASE("CSV writers")
{
    a2g::ScenarioConfig cfg;
    cfg.n_realizations = 2;
    cfg.seed = 3;
    const auto r = a2g::run_realization(cfg, 1);

    std::ostringstream seg;
    a2g::write_provenance(seg, cfg);
    a2g::write_segments_header(seg);
    a2g::write_segments_rows(seg, 1, r.trace);
    std::istringstream in(seg.str());
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# config: {", 0) == 0);
    std::getline(in, line);
    CHECK(line == "realization_id,segment_index,state,start_m,length_m");
    std::size_t rows = 0;
    while (std::getline(in, line))
    {
        CHECK(line.rfind("1,", 0) == 0);
        ++rows;
    }
    CHECK(rows == r.trace.size());

    std::ostringstream ch;
    a2g::write_channel_header(ch);
    a2g::write_channel_rows(ch, 1, r.channel);
    const auto text = ch.str();
    CHECK(text.rfind("realization_id,y_m,state,theta_deg,lambda0_db,lambda_ex_db,xi_db,lambda_total_db\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == r.channel.size() + 1);
}

TEST_CASE("Campaign directory output is byte-identical across runs")
{
    a2g::ScenarioConfig cfg;
    cfg.preset = "suburban";
    cfg.seed = 42;
    cfg.n_realizations = 20;

    const auto a = scratch_dir("run_a");
    const auto b = scratch_dir("run_b");
    a2g::write_campaign_dir(a, a2g::run_campaign(cfg, 1));
    a2g::write_campaign_dir(b, a2g::run_campaign(cfg, 3));
    for (auto name : {"config.json", "nlos_cdf.csv", "attenuation_cdf.csv", "outage_distance_cdf.csv", "summary.json"})
    {
        INFO(name);
        const auto sa = slurp(a / name);
        REQUIRE_FALSE(sa.empty());
        CHECK(sa == slurp(b / name));
    }

    const auto summary = a2g::Json::parse(slurp(a / "summary.json"));
    CHECK(summary["environment"] == "suburban");
    CHECK(summary["outage"].size() == 3);

    const auto config = a2g::Json::parse(slurp(a / "config.json"));
    CHECK(config["seed"] == 42);

    fs::remove_all(a);
    fs::remove_all(b);
}
