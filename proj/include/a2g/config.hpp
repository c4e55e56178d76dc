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

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace a2g
{

/// Scenario files are plain text, one `key = value` per line. Blank lines and
/// anything after `#` are ignored; lists are written `[13, 18, 23]`.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::size_t line, std::string key, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + (key.empty() ? "" : "'" + key + "': ") + what),
          line_(line), key_(std::move(key))
    {
    }

    std::size_t line() const { return line_; }
    const std::string &key() const { return key_; }

  private:
    std::size_t line_;
    std::string key_;
};

namespace detail
{

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline double parse_double(std::string_view s)
{
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("expected a number, got '" + std::string(s) + "'");
    return v;
}

template <class Int>
Int parse_integer(std::string_view s)
{
    s = trim(s);
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("expected a non-negative integer, got '" + std::string(s) + "'");
    return v;
}

inline std::vector<double> parse_list(std::string_view s)
{
    s = trim(s);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("expected a list like [13, 18, 23]");
    s = s.substr(1, s.size() - 2);
    std::vector<double> out;
    if (trim(s).empty())
        return out;
    while (true)
    {
        const auto comma = s.find(',');
        out.push_back(parse_double(s.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

using Setter = std::function<void(ScenarioConfig &, std::string_view)>;

inline const std::map<std::string, Setter, std::less<>> &config_setters()
{
    static const std::map<std::string, Setter, std::less<>> setters{
        {"preset", [](auto &c, auto v) { (void)a2g::preset(v); c.preset = std::string(v); }},
        {"n_realizations", [](auto &c, auto v) { c.n_realizations = parse_integer<std::size_t>(v); }},
        {"seed", [](auto &c, auto v) { c.seed = parse_integer<std::uint64_t>(v); }},
        {"abs_xy_min_m", [](auto &c, auto v) { c.abs_xy_min = parse_double(v); }},
        {"abs_xy_max_m", [](auto &c, auto v) { c.abs_xy_max = parse_double(v); }},
        {"abs_h_min_m", [](auto &c, auto v) { c.abs_h_min = parse_double(v); }},
        {"abs_h_max_m", [](auto &c, auto v) { c.abs_h_max = parse_double(v); }},
        {"path_length_m", [](auto &c, auto v) { c.path_length = parse_double(v); }},
        {"resolution_m", [](auto &c, auto v) { c.resolution = parse_double(v); }},
        {"frequency_hz", [](auto &c, auto v) { c.channel.frequency = parse_double(v); }},
        {"eirp_dbm", [](auto &c, auto v) { c.eirp = parse_list(v); }},
        {"sensitivity_dbm", [](auto &c, auto v) { c.sensitivity = parse_double(v); }},
        {"los_source", [](auto &c, auto v) { c.los_source = parse_los_source(v); }},
        {"rho_los", [](auto &c, auto v) { c.channel.shadow.rho_los = parse_double(v); }},
        {"mu_los", [](auto &c, auto v) { c.channel.shadow.mu_los = parse_double(v); }},
        {"rho_nlos", [](auto &c, auto v) { c.channel.shadow.rho_nlos = parse_double(v); }},
        {"mu_nlos", [](auto &c, auto v) { c.channel.shadow.mu_nlos = parse_double(v); }},
        {"d_decorr_m", [](auto &c, auto v) { c.channel.shadow.decorrelation_distance = parse_double(v); }},
        {"shadow_continuity", [](auto &c, auto v) { c.channel.continuity = parse_shadow_continuity(v); }},
        {"nlos_excess", [](auto &c, auto v) { c.channel.nlos_excess = parse_nlos_excess(v); }},
    };
    return setters;
}

} // namespace detail

/// Applies one `key = value` assignment; unknown keys and bad values throw
/// std::invalid_argument.
inline void apply_config_value(ScenarioConfig &cfg, std::string_view key, std::string_view value)
{
    const auto &setters = detail::config_setters();
    const auto it = setters.find(key);
    if (it == setters.end())
        throw std::invalid_argument("unknown key '" + std::string(key) + "'");
    it->second(cfg, detail::trim(value));
}

inline ScenarioConfig parse_config(std::istream &in, ScenarioConfig cfg = {})
{
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos)
            text = text.substr(0, hash);
        text = detail::trim(text);
        if (text.empty())
            continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(lineno, "", "expected 'key = value'");
        const std::string key(detail::trim(text.substr(0, eq)));
        if (!detail::config_setters().contains(key))
            throw ConfigError(lineno, key, "unknown key");
        try
        {
            apply_config_value(cfg, key, text.substr(eq + 1));
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(lineno, key, e.what());
        }
    }
    return cfg;
}

inline ScenarioConfig parse_config_string(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_config(in);
}

} // namespace a2g
