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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weldtree/address.hpp"
#include "weldtree/classical_sim.hpp"
#include "weldtree/graph.hpp"
#include "weldtree/oracle.hpp"
#include "weldtree/parallel.hpp"
#include "weldtree/rng.hpp"

namespace weldtree {

struct Crossing {
    size_t position = 0;  // Index of the vertex reached by the weld edge.
    uint32_t from = 0;
    uint32_t to = 0;
};

struct PathEmbedding {
    std::vector<Color> t;
    std::vector<uint64_t> labels;   // labels[0] is ENTRANCE; labels[j] after t[j-1].
    std::vector<int64_t> vertices;  // Vertex index per label, kNone for NOEDGE/INVALID.
    std::vector<Crossing> crossings;
    std::vector<int> subtrees;             // Subtree ids T_1..T_l in encounter order.
    std::vector<size_t> prefix_lengths;    // |pre_i| for i = 1..l.

    size_t length() const { return t.size(); }
    size_t ell() const { return subtrees.size(); }
};

inline void index_crossings(PathEmbedding &e, const WeldedTree &g) {
    e.crossings.clear();
    e.subtrees.clear();
    e.prefix_lengths.clear();
    size_t first_leaf = 0;
    for (size_t j = 0; j < e.vertices.size(); j++) {
        if (e.vertices[j] == kNone) {
            break;
        }
        uint32_t v = static_cast<uint32_t>(e.vertices[j]);
        if (first_leaf == 0 && g.is_weld(v)) {
            first_leaf = j;
        }
        if (j > 0 && e.vertices[j - 1] != kNone) {
            uint32_t u = static_cast<uint32_t>(e.vertices[j - 1]);
            if (g.is_weld(u) && g.is_weld(v) && g.side(u) != g.side(v)) {
                e.crossings.push_back(Crossing{j, u, v});
            }
        }
    }
    if (first_leaf == 0) {
        return;
    }
    uint32_t start = e.crossings.empty() ? static_cast<uint32_t>(e.vertices[first_leaf]) : e.crossings[0].from;
    e.subtrees.push_back(g.subtree_id(start));
    for (const Crossing &c : e.crossings) {
        e.subtrees.push_back(g.subtree_id(c.to));
        e.prefix_lengths.push_back(c.position - 1);
    }
    e.prefix_lengths.push_back(e.length());
}

// Resolves t from ENTRANCE through the oracle, one query per color.
inline PathEmbedding path_embed(const Oracle &o, const std::vector<Color> &t) {
    if (!palindrome_free(t)) {
        throw std::invalid_argument("tuple repeats a color");
    }
    PathEmbedding e;
    e.t = t;
    e.labels.push_back(o.entrance());
    for (Color c : t) {
        e.labels.push_back(o.query(c, e.labels.back()));
    }
    for (uint64_t l : e.labels) {
        e.vertices.push_back(o.graph().find(l));
    }
    index_crossings(e, o.graph());
    return e;
}

inline PathEmbedding truncate(const PathEmbedding &e, size_t length, const WeldedTree &g) {
    PathEmbedding p;
    p.t.assign(e.t.begin(), e.t.begin() + length);
    p.labels.assign(e.labels.begin(), e.labels.begin() + length + 1);
    p.vertices.assign(e.vertices.begin(), e.vertices.begin() + length + 1);
    index_crossings(p, g);
    return p;
}

inline bool reaches_exit(const PathEmbedding &e, const WeldedTree &g) {
    return std::find(e.vertices.begin(), e.vertices.end(), static_cast<int64_t>(g.exit())) != e.vertices.end();
}

inline bool revisits_vertex(const PathEmbedding &e) {
    std::set<int64_t> seen;
    for (int64_t v : e.vertices) {
        if (v != kNone && !seen.insert(v).second) {
            return true;
        }
    }
    return false;
}

struct Desirability {
    bool large_displacement = false;
    bool colliding = false;
    bool desirable() const { return !large_displacement && !colliding; }
};

// Displacement and collision checks against the graph seen by the oracle.
inline Desirability is_desirable(const PathEmbedding &e, const Oracle &o) {
    const WeldedTree &g = o.graph();
    if (g.n() % 3 != 0) {
        throw std::invalid_argument("desirability needs n divisible by 3");
    }
    Desirability d;
    if (e.crossings.empty()) {
        return d;
    }
    for (size_t j = e.crossings.front().position; j < e.vertices.size(); j++) {
        if (e.vertices[j] != kNone && 3 * distance_to_weld(g, static_cast<uint32_t>(e.vertices[j])) >= g.n()) {
            d.large_displacement = true;
            break;
        }
    }
    std::set<int> ids(e.subtrees.begin(), e.subtrees.end());
    if (ids.size() != e.subtrees.size()) {
        d.colliding = true;
        return d;
    }
    std::set<std::pair<uint32_t, uint32_t>> crossing_edges;
    for (const Crossing &c : e.crossings) {
        crossing_edges.insert(std::minmax(c.from, c.to));
    }
    for (int id : ids) {
        for (uint32_t v : g.subtree_leaves(id)) {
            for (Color c : kColors) {
                if (c == g.tree_color(v)) {
                    continue;
                }
                uint32_t w = static_cast<uint32_t>(o.neighbor(v, c));
                if (ids.count(g.subtree_id(w)) && !crossing_edges.count(std::minmax(v, w))) {
                    d.colliding = true;
                    return d;
                }
            }
        }
    }
    return d;
}

struct Interval {
    double lo = 0;
    double hi = 0;
    double halfwidth() const { return (hi - lo) / 2; }
};

// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(uint64_t hits, uint64_t trials, double z = 1.959963984540054) {
    if (trials == 0) {
        return {0, 1};
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / n;
    const double denom = 1 + z * z / n;
    const double center = (p + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
    return {hits == 0 ? 0.0 : std::max(0.0, center - half), hits == trials ? 1.0 : std::min(1.0, center + half)};
}

struct Estimate {
    uint64_t trials = 0;
    uint64_t hits = 0;
    double frequency = 0;
    Interval interval;
    double bound = 0;
    bool pass = true;
};

inline Estimate make_estimate(uint64_t hits, uint64_t trials, double bound) {
    Estimate e;
    e.trials = trials;
    e.hits = hits;
    e.frequency = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
    e.interval = wilson_interval(hits, trials);
    e.bound = bound;
    e.pass = e.frequency <= bound + 3 * e.interval.halfwidth();
    return e;
}

// Random palindrome-free tuple whose first color differs from `first_not`.
template <typename Rng>
std::vector<Color> random_tuple(size_t length, Color first_not, Rng &rng) {
    std::vector<Color> t;
    while (t.size() < length) {
        Color c = color_from_index(static_cast<int>(uniform_below(rng, 3)));
        if ((t.empty() && c == first_not) || (!t.empty() && t.back() == c)) {
            continue;
        }
        t.push_back(c);
    }
    return t;
}

// Draws sigma by shuffling only the first `limit` members of each class.
template <typename Rng>
ColorPreservingPermutation sample_restricted_permutation(const WeldedTree &g, size_t limit, Rng &rng) {
    ColorPreservingPermutation p = ColorPreservingPermutation::identity(g.vertex_count());
    for (const auto &cls : g.weld_classes()) {
        size_t k = std::min(limit, cls.size());
        std::vector<uint32_t> image(cls.begin(), cls.begin() + k);
        shuffle(image, rng);
        for (size_t a = 0; a < k; a++) {
            p.map[cls[a]] = image[a];
        }
    }
    p.rebuild_inverse();
    return p;
}

// Visits every sigma that permutes the first `limit` members of each class.
inline void for_each_permutation(
    const WeldedTree &g, size_t limit, const std::function<void(const ColorPreservingPermutation &)> &visit) {
    std::vector<std::vector<uint32_t>> heads, images;
    for (const auto &cls : g.weld_classes()) {
        std::vector<uint32_t> h(cls.begin(), cls.begin() + std::min(limit, cls.size()));
        heads.push_back(h);
        images.push_back(h);
    }
    ColorPreservingPermutation p = ColorPreservingPermutation::identity(g.vertex_count());
    while (true) {
        for (size_t k = 0; k < heads.size(); k++) {
            for (size_t a = 0; a < heads[k].size(); a++) {
                p.map[heads[k][a]] = images[k][a];
            }
        }
        p.rebuild_inverse();
        visit(p);
        size_t k = 0;
        while (k < images.size() && !std::next_permutation(images[k].begin(), images[k].end())) {
            k++;
        }
        if (k == images.size()) {
            return;
        }
    }
}

struct DesirableRow {
    size_t i = 0;
    Estimate estimate;
};

// Per-i frequency of undesirable pre_i(t), conditioned on i <= l.
inline std::vector<DesirableRow> mc_desirable(
    const std::vector<Color> &t, const WeldedTree &g, uint64_t trials, uint64_t seed, int workers) {
    if (g.n() % 3 != 0) {
        throw std::invalid_argument("desirability needs n divisible by 3");
    }
    const size_t m = t.size();
    // Per trial: for each i, 0 = not conditioned, 1 = desirable, 2 = undesirable.
    std::vector<std::vector<uint8_t>> outcome(trials, std::vector<uint8_t>(m, 0));
    parallel_for(trials, workers, [&](size_t k) {
        auto rng = make_stream(seed, tags::kDesirableTrial, k);
        ColorPreservingPermutation sigma = sample_permutation(g, rng);
        Oracle o(g, &sigma);
        PathEmbedding e = path_embed(o, t);
        for (size_t i = 1; i <= e.ell(); i++) {
            PathEmbedding pre = truncate(e, e.prefix_lengths[i - 1], g);
            Desirability d = is_desirable(pre, o);
            if (d.desirable() && (reaches_exit(pre, g) || revisits_vertex(pre))) {
                throw std::logic_error("desirable prefix reaches EXIT or repeats a vertex");
            }
            outcome[k][i - 1] = d.desirable() ? 1 : 2;
        }
    });
    std::vector<DesirableRow> rows;
    const double scale = std::pow(2.0, -static_cast<double>(g.n()) / 3.0);
    for (size_t i = 1; i <= m; i++) {
        uint64_t cond = 0, bad = 0;
        for (const auto &row : outcome) {
            cond += row[i - 1] != 0;
            bad += row[i - 1] == 2;
        }
        rows.push_back({i, make_estimate(bad, cond, 4.0 * static_cast<double>(i * i) * scale)});
    }
    return rows;
}

// Pr over sigma ~ D_n that the path-embedding of t meets EXIT or repeats a
// vertex; bound 4|t|^2 2^(-n/3).
inline Estimate mc_exit_or_cycle(
    const std::vector<Color> &t, const WeldedTree &g, uint64_t trials, uint64_t seed, int workers) {
    std::vector<uint8_t> hit(trials, 0);
    parallel_for(trials, workers, [&](size_t k) {
        auto rng = make_stream(seed, tags::kPathTrial, k);
        ColorPreservingPermutation sigma = sample_permutation(g, rng);
        Oracle o(g, &sigma);
        PathEmbedding e = path_embed(o, t);
        hit[k] = reaches_exit(e, g) || revisits_vertex(e);
    });
    uint64_t hits = std::accumulate(hit.begin(), hit.end(), uint64_t{0});
    double p = static_cast<double>(t.size());
    return make_estimate(hits, trials, 4 * p * p * std::pow(2.0, -static_cast<double>(g.n()) / 3.0));
}

// Subtree variant: trees come from `sampler` (fixed or random per trial);
// bound 4p^4 2^(-n/3) with p the largest sampled tree size.
inline Estimate mc_exit_or_cycle(
    const std::function<AddressSubtree(std::mt19937_64 &)> &sampler, const WeldedTree &g, uint64_t trials,
    uint64_t seed, int workers) {
    std::vector<uint8_t> hit(trials, 0);
    std::vector<size_t> sizes(trials, 0);
    parallel_for(trials, workers, [&](size_t k) {
        auto shape_rng = make_stream(seed, tags::kSubtreeShape, k);
        AddressSubtree tree = sampler(shape_rng);
        auto rng = make_stream(seed, tags::kSubtreeTrial, k);
        ColorPreservingPermutation sigma = sample_permutation(g, rng);
        Oracle o(g, &sigma);
        SubtreeEmbedding e = subtree_embedding(o, tree);
        hit[k] = e.has_exit || e.has_cycle;
        sizes[k] = tree.size();
    });
    uint64_t hits = std::accumulate(hit.begin(), hit.end(), uint64_t{0});
    double p = static_cast<double>(sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end()));
    return make_estimate(hits, trials, 4 * std::pow(p, 4) * std::pow(2.0, -static_cast<double>(g.n()) / 3.0));
}

// Exact probability over all sigma permuting the first `limit` members of
// each class (the full D_n when limit covers every class).
inline double exact_exit_or_cycle(const std::vector<Color> &t, const WeldedTree &g, size_t limit) {
    uint64_t total = 0, hits = 0;
    for_each_permutation(g, limit, [&](const ColorPreservingPermutation &sigma) {
        Oracle o(g, &sigma);
        PathEmbedding e = path_embed(o, t);
        total++;
        hits += reaches_exit(e, g) || revisits_vertex(e);
    });
    return static_cast<double>(hits) / static_cast<double>(total);
}

// Sampled counterpart of exact_exit_or_cycle under the same restriction.
inline Estimate mc_exit_or_cycle_restricted(
    const std::vector<Color> &t, const WeldedTree &g, size_t limit, uint64_t trials, uint64_t seed) {
    uint64_t hits = 0;
    for (uint64_t k = 0; k < trials; k++) {
        auto rng = make_stream(seed, tags::kPathTrial, k);
        ColorPreservingPermutation sigma = sample_restricted_permutation(g, limit, rng);
        Oracle o(g, &sigma);
        PathEmbedding e = path_embed(o, t);
        hits += reaches_exit(e, g) || revisits_vertex(e);
    }
    return make_estimate(hits, trials, 1.0);
}

// First seed at or after `start` whose graph misses `color` at ENTRANCE.
inline uint64_t seed_with_missing_color(int n, Color color, uint64_t start) {
    for (uint64_t s = start;; s++) {
        if (build_canonical(n, s).root_missing_color(Side::left) == color) {
            return s;
        }
    }
}

}  // namespace weldtree
