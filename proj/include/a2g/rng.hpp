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

#include <cstdint>
#include <random>

namespace a2g
{

// Engine used for every stochastic step. Streams are never shared between
// realizations or roles; see derive_seed().
using RandomStream = std::mt19937_64;

// Which part of a realization consumes a stream. Adding a role must not
// renumber the existing ones.
enum class StreamRole : std::uint64_t
{
    AbsPlacement = 1,
    Layout = 2,
    Segments = 3,
    Shadow = 4,
};

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Hash (master seed, realization index, role) into an engine seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, StreamRole role)
{
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ static_cast<std::uint64_t>(role));
    return h;
}

inline RandomStream make_stream(std::uint64_t master, std::uint64_t index, StreamRole role)
{
    return RandomStream(derive_seed(master, index, role));
}

// Uniform draw on [0, 1).
template <class URBG>
double uniform01(URBG &rng)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

} // namespace a2g
