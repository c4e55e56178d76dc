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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace a2g
{

/// Empirical distribution function of a pooled sample.
class EmpiricalCdf
{
  public:
    EmpiricalCdf() = default;

    explicit EmpiricalCdf(std::vector<double> values)
        : sorted_(std::move(values))
    {
        std::sort(sorted_.begin(), sorted_.end());
    }

    bool empty() const { return sorted_.empty(); }
    std::size_t size() const { return sorted_.size(); }
    std::span<const double> sorted() const { return sorted_; }

    // Fraction of the sample <= x.
    double operator()(double x) const
    {
        if (sorted_.empty())
            return 0.0;
        const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
        return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
    }

    // Smallest sample value v with F(v) >= p.
    double quantile(double p) const
    {
        if (sorted_.empty())
            throw std::logic_error("quantile of an empty distribution");
        if (!(p >= 0.0 && p <= 1.0))
            throw std::domain_error("quantile level must lie in [0, 1]");
        const double n = static_cast<double>(sorted_.size());
        auto k = static_cast<std::size_t>(std::ceil(p * n - 1e-9));
        k = std::clamp<std::size_t>(k, 1, sorted_.size());
        return sorted_[k - 1];
    }

    double mean() const
    {
        double s = 0.0;
        for (double v : sorted_)
            s += v;
        return sorted_.empty() ? 0.0 : s / static_cast<double>(sorted_.size());
    }

    struct Step
    {
        double x;
        double y;
    };

    // One point per distinct value: (value, F(value)).
    std::vector<Step> steps() const
    {
        std::vector<Step> out;
        const double n = static_cast<double>(sorted_.size());
        for (std::size_t k = 0; k < sorted_.size(); ++k)
        {
            if (k + 1 < sorted_.size() && sorted_[k + 1] == sorted_[k])
                continue;
            out.push_back({sorted_[k], static_cast<double>(k + 1) / n});
        }
        return out;
    }

  private:
    std::vector<double> sorted_;
};

/// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.
inline double ks_distance(const EmpiricalCdf &a, const EmpiricalCdf &b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("KS distance needs two non-empty samples");
    const auto xa = a.sorted();
    const auto xb = b.sorted();
    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < xa.size() && j < xb.size())
    {
        const double x = std::min(xa[i], xb[j]);
        while (i < xa.size() && xa[i] == x)
            ++i;
        while (j < xb.size() && xb[j] == x)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// Asymptotic two-sample KS critical value, c(alpha) * sqrt((n + m) / (n m)).
inline double ks_critical_value(std::size_t n, std::size_t m, double alpha)
{
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    const double dn = static_cast<double>(n);
    const double dm = static_cast<double>(m);
    return c * std::sqrt((dn + dm) / (dn * dm));
}

} // namespace a2g
