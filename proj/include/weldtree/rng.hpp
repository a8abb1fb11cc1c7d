// Copyright 2026 The weldtree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace weldtree {

inline constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline constexpr uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (char ch : s) {
        h ^= static_cast<uint8_t>(ch);
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Child seed for (seed, purpose tag, index). Streams with different tags or
// indices are independent, so adding a consumer never shifts another one.
inline constexpr uint64_t derive_seed(uint64_t seed, std::string_view tag, uint64_t index = 0) {
    return splitmix64(splitmix64(seed ^ fnv1a(tag)) + splitmix64(index));
}

inline std::mt19937_64 make_stream(uint64_t seed, std::string_view tag, uint64_t index = 0) {
    return std::mt19937_64(derive_seed(seed, tag, index));
}

// Uniform integer in [0, bound) without modulo bias.
template <typename Rng>
uint64_t uniform_below(Rng &rng, uint64_t bound) {
    // Rejection sampling keeps the draw portable across standard libraries.
    const uint64_t threshold = (0 - bound) % bound;
    while (true) {
        uint64_t x = rng();
        if (x >= threshold) {
            return x % bound;
        }
    }
}

// Uniform real in [0, 1).
template <typename Rng>
double uniform_unit(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Fisher-Yates shuffle driven by uniform_below.
template <typename T, typename Rng>
void shuffle(std::vector<T> &v, Rng &rng) {
    for (size_t i = v.size(); i > 1; i--) {
        std::swap(v[i - 1], v[uniform_below(rng, i)]);
    }
}

namespace tags {
inline constexpr std::string_view kWeld = "graph.weld";
inline constexpr std::string_view kColoring = "graph.coloring";
inline constexpr std::string_view kLabels = "graph.labels";
inline constexpr std::string_view kPermutation = "perm";
inline constexpr std::string_view kCircuit = "circuit";
inline constexpr std::string_view kClassicalSample = "classical.sample";
inline constexpr std::string_view kPathTrial = "mc.path";
inline constexpr std::string_view kSubtreeTrial = "mc.subtree";
inline constexpr std::string_view kSubtreeShape = "mc.subtree.shape";
inline constexpr std::string_view kDesirableTrial = "mc.desirable";
inline constexpr std::string_view kBaseline = "walk.baseline";
inline constexpr std::string_view kTuple = "tuple";
}  // namespace tags

}  // namespace weldtree
