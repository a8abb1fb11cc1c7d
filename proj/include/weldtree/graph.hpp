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
#include <array>
#include <cstdint>
#include <deque>
#include <iomanip>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "weldtree/color.hpp"
#include "weldtree/rng.hpp"

namespace weldtree {

enum class Side : uint8_t { left = 0, right = 1 };

inline constexpr int kNone = -1;
inline constexpr int kMaxHeight = 24;

struct Edge {
    uint32_t u = 0;
    uint32_t v = 0;
    Color color = Color::red;
    auto operator<=>(const Edge &) const = default;
};

inline uint64_t vertex_count_for(int n) { return (uint64_t{1} << (n + 2)) - 2; }

// Smallest even width >= 2n whose value space holds every vertex plus the
// three reserved strings.
inline int label_bits_for(int n) {
    int w = 2 * n;
    while (w < 64 && (uint64_t{1} << w) < vertex_count_for(n) + 3) {
        w += 2;
    }
    return w;
}

inline uint64_t label_mask(int bits) { return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1; }
inline uint64_t noedge_label(int bits) { return label_mask(bits); }
inline uint64_t invalid_label(int bits) { return label_mask(bits) - 1; }

inline std::string to_hex(uint64_t value, int bits) {
    std::ostringstream out;
    out << std::hex << std::setw((bits + 3) / 4) << std::setfill('0') << value;
    return out.str();
}

inline uint64_t from_hex(const std::string &s) {
    size_t used = 0;
    uint64_t v = std::stoull(s, &used, 16);
    if (used != s.size()) {
        throw std::invalid_argument("bad hex string '" + s + "'");
    }
    return v;
}

inline std::string to_binary(uint64_t value, int bits) {
    std::string s(bits, '0');
    for (int i = 0; i < bits; i++) {
        if ((value >> (bits - 1 - i)) & 1) {
            s[i] = '1';
        }
    }
    return s;
}

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Checks every welded-tree invariant on raw graph data.
inline ValidationReport validate_welded_tree(
    int n, int label_bits, const std::vector<uint64_t> &labels, const std::vector<Edge> &edges, uint32_t entrance,
    uint32_t exit) {
    ValidationReport r;
    auto fail = [&](std::string s) { r.violations.push_back(std::move(s)); };
    if (n < 1 || n > kMaxHeight) {
        fail("height out of range");
        return r;
    }
    const uint64_t nv = vertex_count_for(n);
    if (labels.size() != nv) {
        fail("vertex count " + std::to_string(labels.size()) + " != " + std::to_string(nv));
        return r;
    }
    if (entrance >= nv || exit >= nv || entrance == exit) {
        fail("bad entrance/exit indices");
        return r;
    }
    if (label_bits < 2 * n || label_bits > 62 || (label_bits & 1)) {
        fail("bad label width");
        return r;
    }
    std::unordered_set<uint64_t> seen;
    seen.reserve(nv * 2);
    for (uint32_t v = 0; v < nv; v++) {
        uint64_t l = labels[v];
        if (l > label_mask(label_bits)) {
            fail("label of vertex " + std::to_string(v) + " exceeds width");
        } else if (l == 0 || l == noedge_label(label_bits) || l == invalid_label(label_bits)) {
            fail("vertex " + std::to_string(v) + " uses a reserved label");
        }
        if (!seen.insert(l).second) {
            fail("duplicate label at vertex " + std::to_string(v));
        }
    }

    std::vector<std::array<int, 3>> color_count(nv, {0, 0, 0});
    std::vector<std::vector<uint32_t>> nbrs(nv);
    std::unordered_set<uint64_t> pairs;
    for (const Edge &e : edges) {
        if (e.u >= nv || e.v >= nv) {
            fail("edge endpoint out of range");
            continue;
        }
        if (e.u == e.v) {
            fail("self loop at vertex " + std::to_string(e.u));
            continue;
        }
        uint64_t key = (uint64_t{std::min(e.u, e.v)} << 32) | std::max(e.u, e.v);
        if (!pairs.insert(key).second) {
            fail("parallel edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
            continue;
        }
        color_count[e.u][color_index(e.color)]++;
        color_count[e.v][color_index(e.color)]++;
        nbrs[e.u].push_back(e.v);
        nbrs[e.v].push_back(e.u);
    }
    for (uint32_t v = 0; v < nv; v++) {
        const auto &cc = color_count[v];
        if (cc[0] > 1 || cc[1] > 1 || cc[2] > 1) {
            fail("improper coloring at vertex " + std::to_string(v));
        }
        size_t want = (v == entrance || v == exit) ? 2 : 3;
        if (nbrs[v].size() != want) {
            fail("vertex " + std::to_string(v) + " has degree " + std::to_string(nbrs[v].size()));
        }
    }
    if (!r.ok()) {
        return r;
    }

    std::vector<int> col(nv, kNone);
    std::deque<uint32_t> queue{entrance};
    col[entrance] = 0;
    while (!queue.empty()) {
        uint32_t v = queue.front();
        queue.pop_front();
        for (uint32_t w : nbrs[v]) {
            if (col[w] == kNone) {
                col[w] = col[v] + 1;
                queue.push_back(w);
            }
        }
    }
    std::vector<uint64_t> col_size(2 * n + 2, 0);
    for (uint32_t v = 0; v < nv; v++) {
        if (col[v] == kNone || col[v] > 2 * n + 1) {
            fail("vertex " + std::to_string(v) + " is unreachable or too deep");
            return r;
        }
        col_size[col[v]]++;
    }
    if (col[exit] != 2 * n + 1) {
        fail("exit is not at column 2n+1");
    }
    for (int j = 0; j <= 2 * n + 1; j++) {
        int depth = j <= n ? j : 2 * n + 1 - j;
        if (col_size[j] != (uint64_t{1} << depth)) {
            fail("column " + std::to_string(j) + " has " + std::to_string(col_size[j]) + " vertices");
        }
    }
    for (const Edge &e : edges) {
        if (col[e.u] == col[e.v]) {
            fail("edge inside column " + std::to_string(col[e.u]));
        }
    }
    if (!r.ok()) {
        return r;
    }
    for (uint32_t v = 0; v < nv; v++) {
        int c = col[v];
        int toward_root = 0;
        for (uint32_t w : nbrs[v]) {
            if ((c <= n && col[w] == c - 1) || (c > n && col[w] == c + 1)) {
                toward_root++;
            }
        }
        if (v != entrance && v != exit && toward_root != 1) {
            fail("vertex " + std::to_string(v) + " breaks the binary tree shape");
        }
    }
    // The weld subgraph is 2-regular by now; it must be a single cycle.
    uint32_t start = 0;
    while (col[start] != n) {
        start++;
    }
    std::vector<char> on_cycle(nv, 0);
    uint64_t cycle_len = 0;
    std::vector<uint32_t> stack{start};
    on_cycle[start] = 1;
    while (!stack.empty()) {
        uint32_t v = stack.back();
        stack.pop_back();
        cycle_len++;
        for (uint32_t w : nbrs[v]) {
            bool weld_edge = (col[v] == n && col[w] == n + 1) || (col[v] == n + 1 && col[w] == n);
            if (weld_edge && !on_cycle[w]) {
                on_cycle[w] = 1;
                stack.push_back(w);
            }
        }
    }
    if (cycle_len != (uint64_t{2} << n)) {
        fail("weld is not a single cycle");
    }
    return r;
}

class WeldedTree {
   public:
    WeldedTree() = default;

    // Assembles a graph from raw parts. Structural indices are derived only
    // when the parts validate; report() holds any violations.
    static WeldedTree from_parts(
        int n, int label_bits, std::vector<uint64_t> labels, std::vector<Edge> edges, uint32_t entrance,
        uint32_t exit) {
        WeldedTree g;
        g.n_ = n;
        g.label_bits_ = label_bits;
        g.labels_ = std::move(labels);
        g.edges_ = std::move(edges);
        std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge &a, const Edge &b) {
            auto ka = std::make_pair(std::min(a.u, a.v), std::max(a.u, a.v));
            auto kb = std::make_pair(std::min(b.u, b.v), std::max(b.u, b.v));
            return ka < kb || (ka == kb && a.color < b.color);
        });
        for (Edge &e : g.edges_) {
            if (e.u > e.v) {
                std::swap(e.u, e.v);
            }
        }
        g.entrance_ = entrance;
        g.exit_ = exit;
        g.report_ = validate_welded_tree(n, label_bits, g.labels_, g.edges_, entrance, exit);
        if (g.report_.ok()) {
            g.derive();
        }
        return g;
    }

    int n() const { return n_; }
    int label_bits() const { return label_bits_; }
    uint32_t vertex_count() const { return static_cast<uint32_t>(labels_.size()); }
    uint32_t entrance() const { return entrance_; }
    uint32_t exit() const { return exit_; }
    const std::vector<uint64_t> &labels() const { return labels_; }
    uint64_t label(uint32_t v) const { return labels_[v]; }
    const std::vector<Edge> &edges() const { return edges_; }
    const ValidationReport &report() const { return report_; }
    bool valid() const { return report_.ok(); }

    uint64_t noedge() const { return noedge_label(label_bits_); }
    uint64_t invalid() const { return invalid_label(label_bits_); }
    uint64_t entrance_label() const { return labels_[entrance_]; }
    uint64_t exit_label() const { return labels_[exit_]; }

    // Vertex index of a label, or kNone.
    int64_t find(uint64_t label) const {
        auto it = index_.find(label);
        return it == index_.end() ? kNone : static_cast<int64_t>(it->second);
    }

    int32_t neighbor(uint32_t v, Color c) const { return adj_[v][color_index(c)]; }
    int column(uint32_t v) const { return column_[v]; }
    bool is_weld(uint32_t v) const { return column_[v] == n_ || column_[v] == n_ + 1; }
    Side side(uint32_t v) const { return column_[v] <= n_ ? Side::left : Side::right; }

    // Color of the tree edge at a weld vertex.
    Color tree_color(uint32_t v) const { return static_cast<Color>(tree_color_[v]); }

    // Index in [0, 6) of the (side, tree-edge color) class of a weld vertex.
    int weld_class(uint32_t v) const { return 3 * static_cast<int>(side(v)) + tree_color_[v]; }
    const std::array<std::vector<uint32_t>, 6> &weld_classes() const { return classes_; }

    // Height of the subtrees that partition the leaves.
    int subtree_height() const { return (n_ + 2) / 3; }
    int subtree_id(uint32_t v) const { return subtree_[v]; }
    int subtree_count() const { return static_cast<int>(subtree_leaves_.size()); }
    const std::vector<uint32_t> &subtree_leaves(int id) const { return subtree_leaves_[id]; }

    // Color absent at the root of the given tree.
    Color root_missing_color(Side s) const {
        uint32_t root = s == Side::left ? entrance_ : exit_;
        for (Color c : kColors) {
            if (neighbor(root, c) == kNone) {
                return c;
            }
        }
        throw std::logic_error("root has three edges");
    }

    bool operator==(const WeldedTree &o) const {
        return n_ == o.n_ && label_bits_ == o.label_bits_ && labels_ == o.labels_ && edges_ == o.edges_ &&
               entrance_ == o.entrance_ && exit_ == o.exit_;
    }

   private:
    void derive() {
        const uint32_t nv = vertex_count();
        adj_.assign(nv, {kNone, kNone, kNone});
        for (const Edge &e : edges_) {
            adj_[e.u][color_index(e.color)] = static_cast<int32_t>(e.v);
            adj_[e.v][color_index(e.color)] = static_cast<int32_t>(e.u);
        }
        index_.reserve(nv * 2);
        for (uint32_t v = 0; v < nv; v++) {
            index_.emplace(labels_[v], v);
        }
        column_.assign(nv, kNone);
        std::deque<uint32_t> queue{entrance_};
        column_[entrance_] = 0;
        while (!queue.empty()) {
            uint32_t v = queue.front();
            queue.pop_front();
            for (int32_t w : adj_[v]) {
                if (w != kNone && column_[w] == kNone) {
                    column_[w] = column_[v] + 1;
                    queue.push_back(static_cast<uint32_t>(w));
                }
            }
        }
        tree_color_.assign(nv, -1);
        for (uint32_t v = 0; v < nv; v++) {
            if (!is_weld(v)) {
                continue;
            }
            int parent_col = column_[v] == n_ ? n_ - 1 : n_ + 2;
            for (Color c : kColors) {
                int32_t w = adj_[v][color_index(c)];
                if (w != kNone && column_[w] == parent_col) {
                    tree_color_[v] = color_index(c);
                }
            }
            classes_[weld_class(v)].push_back(v);
        }
        // Subtree roots sit h levels above the leaves on each side.
        const int h = subtree_height();
        subtree_.assign(nv, kNone);
        std::array<std::vector<uint32_t>, 2> roots;
        std::vector<uint32_t> root_of(nv, 0);
        for (uint32_t v = 0; v < nv; v++) {
            if (!is_weld(v)) {
                continue;
            }
            uint32_t x = v;
            for (int k = 0; k < h; k++) {
                x = parent(x);
            }
            root_of[v] = x;
        }
        for (uint32_t v = 0; v < nv; v++) {
            if ((column_[v] == n_ - h) || (column_[v] == n_ + 1 + h)) {
                roots[static_cast<int>(side(v))].push_back(v);
            }
        }
        std::unordered_map<uint32_t, int> id_of_root;
        for (int s = 0; s < 2; s++) {
            for (uint32_t x : roots[s]) {
                id_of_root.emplace(x, static_cast<int>(id_of_root.size()));
            }
        }
        subtree_leaves_.assign(id_of_root.size(), {});
        for (uint32_t v = 0; v < nv; v++) {
            if (is_weld(v)) {
                subtree_[v] = id_of_root.at(root_of[v]);
                subtree_leaves_[subtree_[v]].push_back(v);
            }
        }
    }

    uint32_t parent(uint32_t v) const {
        int want = side(v) == Side::left ? column_[v] - 1 : column_[v] + 1;
        for (int32_t w : adj_[v]) {
            if (w != kNone && column_[w] == want) {
                return static_cast<uint32_t>(w);
            }
        }
        throw std::logic_error("vertex without parent");
    }

    int n_ = 0;
    int label_bits_ = 0;
    std::vector<uint64_t> labels_;
    std::vector<Edge> edges_;
    uint32_t entrance_ = 0;
    uint32_t exit_ = 0;
    ValidationReport report_;

    std::vector<std::array<int32_t, 3>> adj_;
    std::unordered_map<uint64_t, uint32_t> index_;
    std::vector<int> column_;
    std::vector<int> tree_color_;
    std::array<std::vector<uint32_t>, 6> classes_;
    std::vector<int> subtree_;
    std::vector<std::vector<uint32_t>> subtree_leaves_;
};

inline ValidationReport validate_welded_tree(const WeldedTree &g) {
    return validate_welded_tree(g.n(), g.label_bits(), g.labels(), g.edges(), g.entrance(), g.exit());
}

// Proper 3-edge-coloring of a bipartite graph of maximum degree 3 by
// alternating-path recoloring. Colors are returned per input edge.
template <typename Rng>
std::vector<Color> color_bipartite_edges(
    uint32_t vertex_count, const std::vector<std::pair<uint32_t, uint32_t>> &edges, Rng &rng) {
    std::vector<std::array<int32_t, 3>> slot(vertex_count, {kNone, kNone, kNone});
    std::vector<int> color(edges.size(), kNone);
    auto other = [&](size_t e, uint32_t x) { return edges[e].first == x ? edges[e].second : edges[e].first; };
    auto pick_free = [&](uint32_t x) {
        int options[3];
        int k = 0;
        for (int c = 0; c < 3; c++) {
            if (slot[x][c] == kNone) {
                options[k++] = c;
            }
        }
        if (k == 0) {
            throw std::logic_error("edge coloring: vertex degree exceeds 3");
        }
        return options[uniform_below(rng, k)];
    };
    for (size_t e = 0; e < edges.size(); e++) {
        auto [u, v] = edges[e];
        int a = pick_free(u);
        int b = pick_free(v);
        int chosen;
        if (slot[v][a] == kNone) {
            chosen = a;
        } else if (slot[u][b] == kNone) {
            chosen = b;
        } else {
            std::vector<size_t> path;
            uint32_t x = v;
            int cur = a;
            while (slot[x][cur] != kNone) {
                size_t f = static_cast<size_t>(slot[x][cur]);
                path.push_back(f);
                x = other(f, x);
                cur = cur == a ? b : a;
            }
            if (x == u) {
                throw std::logic_error("edge coloring: alternating path closed on a non-bipartite graph");
            }
            for (size_t f : path) {
                slot[edges[f].first][color[f]] = kNone;
                slot[edges[f].second][color[f]] = kNone;
            }
            for (size_t f : path) {
                color[f] = color[f] == a ? b : a;
                slot[edges[f].first][color[f]] = static_cast<int32_t>(f);
                slot[edges[f].second][color[f]] = static_cast<int32_t>(f);
            }
            chosen = a;
        }
        color[e] = chosen;
        slot[u][chosen] = static_cast<int32_t>(e);
        slot[v][chosen] = static_cast<int32_t>(e);
    }
    std::vector<Color> out(edges.size());
    for (size_t e = 0; e < edges.size(); e++) {
        out[e] = color_from_index(color[e]);
    }
    return out;
}

// Heap-ordered welded tree: left tree at [0, 2^(n+1)-1) with ENTRANCE = 0,
// right tree offset by 2^(n+1)-1 with EXIT at the offset.
inline WeldedTree build_canonical(int n, uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("height must be positive");
    }
    if (n > kMaxHeight) {
        throw std::invalid_argument("height exceeds memory budget");
    }
    const uint32_t half = (uint32_t{1} << (n + 1)) - 1;
    const uint32_t nv = 2 * half;
    const uint32_t internal = (uint32_t{1} << n) - 1;
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    pairs.reserve(3 * nv / 2);
    for (uint32_t off : {uint32_t{0}, half}) {
        for (uint32_t i = 0; i < internal; i++) {
            pairs.emplace_back(off + i, off + 2 * i + 1);
            pairs.emplace_back(off + i, off + 2 * i + 2);
        }
    }
    std::vector<uint32_t> left, right;
    for (uint32_t i = internal; i < half; i++) {
        left.push_back(i);
        right.push_back(half + i);
    }
    auto weld_rng = make_stream(seed, tags::kWeld);
    shuffle(left, weld_rng);
    shuffle(right, weld_rng);
    const size_t m = left.size();
    for (size_t k = 0; k < m; k++) {
        pairs.emplace_back(left[k], right[k]);
        pairs.emplace_back(right[k], left[(k + 1) % m]);
    }
    auto color_rng = make_stream(seed, tags::kColoring);
    std::vector<Color> colors = color_bipartite_edges(nv, pairs, color_rng);
    std::vector<Edge> edges(pairs.size());
    for (size_t e = 0; e < pairs.size(); e++) {
        edges[e] = Edge{pairs[e].first, pairs[e].second, colors[e]};
    }

    const int bits = label_bits_for(n);
    auto label_rng = make_stream(seed, tags::kLabels);
    std::unordered_set<uint64_t> used{0, noedge_label(bits), invalid_label(bits)};
    std::vector<uint64_t> labels(nv);
    for (uint32_t v = 0; v < nv; v++) {
        uint64_t l;
        do {
            l = uniform_below(label_rng, uint64_t{1} << bits);
        } while (!used.insert(l).second);
        labels[v] = l;
    }
    WeldedTree g = WeldedTree::from_parts(n, bits, std::move(labels), std::move(edges), 0, half);
    if (!g.valid()) {
        throw std::logic_error("build_canonical produced an invalid graph: " + g.report().violations.front());
    }
    return g;
}

// Number of c-colored edges between levels i-1 and i of the given tree.
inline uint64_t gamma_count(const WeldedTree &g, Side s, Color c, int i) {
    const int n = g.n();
    if (i < 1 || i > n) {
        throw std::out_of_range("level out of range");
    }
    int near = s == Side::left ? i - 1 : 2 * n + 2 - i;
    int far = s == Side::left ? i : 2 * n + 1 - i;
    uint64_t count = 0;
    for (const Edge &e : g.edges()) {
        int a = g.column(e.u), b = g.column(e.v);
        if (e.color == c && ((a == near && b == far) || (a == far && b == near))) {
            count++;
        }
    }
    return count;
}

inline uint64_t gamma_closed_form(int i, Color c, Color missing) {
    uint64_t p = uint64_t{1} << i;
    bool lower = (i % 2 == 1 && c == missing) || (i % 2 == 0 && c != missing);
    return lower ? p / 3 : (p + 2) / 3;
}

inline int distance_to_weld(const WeldedTree &g, uint32_t v) {
    int c = g.column(v);
    return std::min(std::abs(c - g.n()), std::abs(c - (g.n() + 1)));
}

// Bijection on vertex indices that fixes non-weld vertices.
struct ColorPreservingPermutation {
    std::vector<uint32_t> map;
    std::vector<uint32_t> inverse;

    static ColorPreservingPermutation identity(uint32_t vertex_count) {
        ColorPreservingPermutation p;
        p.map.resize(vertex_count);
        std::iota(p.map.begin(), p.map.end(), 0);
        p.inverse = p.map;
        return p;
    }

    uint32_t operator()(uint32_t v) const { return map[v]; }

    void rebuild_inverse() {
        inverse.assign(map.size(), 0);
        for (uint32_t v = 0; v < map.size(); v++) {
            inverse[map[v]] = v;
        }
    }

    // (*this) after other.
    ColorPreservingPermutation compose(const ColorPreservingPermutation &other) const {
        ColorPreservingPermutation p;
        p.map.resize(map.size());
        for (uint32_t v = 0; v < map.size(); v++) {
            p.map[v] = map[other.map[v]];
        }
        p.rebuild_inverse();
        return p;
    }

    bool operator==(const ColorPreservingPermutation &o) const { return map == o.map; }
};

inline bool is_color_preserving(const WeldedTree &g, const ColorPreservingPermutation &sigma) {
    if (sigma.map.size() != g.vertex_count()) {
        return false;
    }
    std::vector<char> hit(g.vertex_count(), 0);
    for (uint32_t v = 0; v < g.vertex_count(); v++) {
        uint32_t w = sigma.map[v];
        if (w >= g.vertex_count() || hit[w]) {
            return false;
        }
        hit[w] = 1;
        if (g.is_weld(v) != g.is_weld(w)) {
            return false;
        }
        if (g.is_weld(v) ? g.weld_class(v) != g.weld_class(w) : v != w) {
            return false;
        }
    }
    return true;
}

// Uniform draw from D_n: independent Fisher-Yates shuffles of the six classes.
template <typename Rng>
ColorPreservingPermutation sample_permutation(const WeldedTree &g, Rng &rng) {
    ColorPreservingPermutation p = ColorPreservingPermutation::identity(g.vertex_count());
    for (const auto &cls : g.weld_classes()) {
        std::vector<uint32_t> image = cls;
        shuffle(image, rng);
        for (size_t k = 0; k < cls.size(); k++) {
            p.map[cls[k]] = image[k];
        }
    }
    p.rebuild_inverse();
    return p;
}

inline WeldedTree apply_permutation(const WeldedTree &g, const ColorPreservingPermutation &sigma) {
    if (!is_color_preserving(g, sigma)) {
        throw std::invalid_argument("permutation is not color-preserving");
    }
    std::vector<Edge> edges = g.edges();
    for (Edge &e : edges) {
        if (g.is_weld(e.u) && g.is_weld(e.v)) {
            e.u = sigma(e.u);
            e.v = sigma(e.v);
        }
    }
    return WeldedTree::from_parts(g.n(), g.label_bits(), g.labels(), std::move(edges), g.entrance(), g.exit());
}

inline nlohmann::json graph_to_json(const WeldedTree &g) {
    nlohmann::json j;
    j["format"] = "weldtree-graph/1";
    j["n"] = g.n();
    j["label_bits"] = g.label_bits();
    nlohmann::json labels = nlohmann::json::array();
    for (uint64_t l : g.labels()) {
        labels.push_back(to_hex(l, g.label_bits()));
    }
    j["labels"] = std::move(labels);
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge &e : g.edges()) {
        edges.push_back({e.u, e.v, color_name(e.color)});
    }
    j["edges"] = std::move(edges);
    j["entrance"] = g.entrance();
    j["exit"] = g.exit();
    return j;
}

inline WeldedTree graph_from_json(const nlohmann::json &j) {
    int n = j.at("n").get<int>();
    int bits = j.contains("label_bits") ? j.at("label_bits").get<int>() : label_bits_for(n);
    std::vector<uint64_t> labels;
    for (const auto &s : j.at("labels")) {
        labels.push_back(from_hex(s.get<std::string>()));
    }
    std::vector<Edge> edges;
    for (const auto &e : j.at("edges")) {
        edges.push_back(Edge{e.at(0).get<uint32_t>(), e.at(1).get<uint32_t>(), parse_color(e.at(2).get<std::string>())});
    }
    return WeldedTree::from_parts(
        n, bits, std::move(labels), std::move(edges), j.at("entrance").get<uint32_t>(), j.at("exit").get<uint32_t>());
}

}  // namespace weldtree
