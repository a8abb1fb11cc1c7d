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

#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <set>

#include "example_graph.hpp"
#include "gtest/gtest.h"
#include "weldtree/graph.hpp"

using namespace weldtree;
using weldtree::testing::example_graph;

namespace {

size_t count_weld_edges(const WeldedTree &g) {
    size_t k = 0;
    for (const Edge &e : g.edges()) {
        k += g.is_weld(e.u) && g.is_weld(e.v);
    }
    return k;
}

bool has_edge(const WeldedTree &g, uint32_t u, uint32_t v, Color c) {
    return g.neighbor(u, c) == static_cast<int32_t>(v);
}

}  // namespace

TEST(graph, smallest_graph) {
    WeldedTree g = build_canonical(1, 5);
    ASSERT_TRUE(g.valid());
    EXPECT_EQ(g.vertex_count(), 6u);
    EXPECT_EQ(count_weld_edges(g), 4u);
    EXPECT_EQ(g.column(g.exit()), 3);
}

TEST(graph, label_width) {
    EXPECT_EQ(label_bits_for(1), 4);
    EXPECT_EQ(label_bits_for(2), 6);
    for (int n = 3; n <= 20; n++) {
        EXPECT_EQ(label_bits_for(n), 2 * n);
    }
}

TEST(graph, example_graph_is_valid) {
    auto ex = example_graph();
    ASSERT_TRUE(ex.graph.valid()) << ex.graph.report().violations.front();
    EXPECT_EQ(ex.graph.root_missing_color(Side::left), Color::green);
    EXPECT_EQ(ex.graph.vertex_count(), 30u);
}

TEST(graph, example_graph_level_counts) {
    const WeldedTree &g = example_graph().graph;
    EXPECT_EQ(gamma_count(g, Side::left, Color::green, 1), 0u);
    EXPECT_EQ(gamma_count(g, Side::left, Color::red, 1), 1u);
    EXPECT_EQ(gamma_count(g, Side::left, Color::blue, 1), 1u);
    EXPECT_EQ(gamma_count(g, Side::left, Color::green, 2), 2u);
    EXPECT_EQ(gamma_count(g, Side::left, Color::red, 2), 1u);
    EXPECT_EQ(gamma_count(g, Side::left, Color::blue, 2), 1u);
    EXPECT_THROW(gamma_count(g, Side::left, Color::red, 0), std::out_of_range);
    EXPECT_THROW(gamma_count(g, Side::left, Color::red, 4), std::out_of_range);
}

TEST(graph, build_is_valid_and_deterministic) {
    for (int n = 1; n <= 9; n++) {
        for (uint64_t seed : {0ull, 1ull, 99ull}) {
            WeldedTree g = build_canonical(n, seed);
            ASSERT_TRUE(validate_welded_tree(g).ok()) << "n=" << n;
            EXPECT_EQ(g.vertex_count(), vertex_count_for(n));
            EXPECT_EQ(g.label_bits(), label_bits_for(n));
            EXPECT_EQ(g, build_canonical(n, seed));
        }
    }
    EXPECT_NE(build_canonical(6, 1), build_canonical(6, 2));
}

TEST(graph, rejects_bad_height) {
    EXPECT_THROW(build_canonical(0, 1), std::invalid_argument);
    EXPECT_THROW(build_canonical(kMaxHeight + 1, 1), std::invalid_argument);
}

TEST(graph, validator_flags_recolored_weld_edge) {
    const WeldedTree &g = example_graph().graph;
    std::vector<Edge> edges = g.edges();
    for (Edge &e : edges) {
        if (g.is_weld(e.u) && g.is_weld(e.v)) {
            // Use the color of the other weld edge at e.u.
            Color other = third_color(e.color, g.tree_color(e.u));
            e.color = other;
            ValidationReport r = validate_welded_tree(3, 6, g.labels(), edges, g.entrance(), g.exit());
            ASSERT_FALSE(r.ok());
            EXPECT_EQ(r.violations.front(), "improper coloring at vertex " + std::to_string(e.u));
            return;
        }
    }
    FAIL();
}

TEST(graph, validator_flags_structural_defects) {
    const WeldedTree &g = example_graph().graph;
    auto check = [&](std::vector<uint64_t> labels, std::vector<Edge> edges) {
        return validate_welded_tree(3, 6, labels, edges, g.entrance(), g.exit()).ok();
    };
    EXPECT_TRUE(check(g.labels(), g.edges()));

    auto labels = g.labels();
    labels[3] = labels[4];
    EXPECT_FALSE(check(labels, g.edges()));
    labels = g.labels();
    labels[3] = noedge_label(6);
    EXPECT_FALSE(check(labels, g.edges()));
    labels[3] = 0;
    EXPECT_FALSE(check(labels, g.edges()));

    auto edges = g.edges();
    edges.pop_back();
    EXPECT_FALSE(check(g.labels(), edges));

    // Split the weld cycle into two cycles by swapping the right endpoints of
    // two same-colored weld edges that are far apart on the cycle.
    std::vector<size_t> weld;
    for (size_t k = 0; k < g.edges().size(); k++) {
        if (g.is_weld(g.edges()[k].u) && g.is_weld(g.edges()[k].v)) {
            weld.push_back(k);
        }
    }
    bool split_found = false;
    for (size_t a : weld) {
        for (size_t b : weld) {
            edges = g.edges();
            if (a >= b || edges[a].color != edges[b].color) {
                continue;
            }
            std::swap(edges[a].v, edges[b].v);
            ValidationReport r = validate_welded_tree(3, 6, g.labels(), edges, g.entrance(), g.exit());
            if (!r.ok() && r.violations.front() == "weld is not a single cycle") {
                split_found = true;
            }
        }
    }
    EXPECT_TRUE(split_found);
}

TEST(graph, level_counts_match_closed_form) {
    for (int n = 1; n <= 10; n++) {
        for (uint64_t seed = 0; seed < 4; seed++) {
            WeldedTree g = build_canonical(n, seed);
            for (Side s : {Side::left, Side::right}) {
                Color missing = g.root_missing_color(s);
                for (int i = 1; i <= n; i++) {
                    uint64_t total = 0;
                    for (Color c : kColors) {
                        uint64_t got = gamma_count(g, s, c, i);
                        EXPECT_EQ(got, gamma_closed_form(i, c, missing)) << "n=" << n << " i=" << i;
                        total += got;
                    }
                    EXPECT_EQ(total, uint64_t{1} << i);
                }
            }
        }
    }
}

TEST(graph, leaf_suffix_counts_are_bounded) {
    for (int n : {3, 6, 9, 12}) {
        WeldedTree g = build_canonical(n, 11);
        for (Side s : {Side::left, Side::right}) {
            int leaf_col = s == Side::left ? n : n + 1;
            int step = s == Side::left ? -1 : 1;
            for (int j = 1; j <= n; j++) {
                std::map<std::vector<Color>, uint64_t> counts;
                for (uint32_t v = 0; v < g.vertex_count(); v++) {
                    if (g.column(v) != leaf_col) {
                        continue;
                    }
                    std::vector<Color> t;
                    uint32_t x = v;
                    for (int k = 0; k < j; k++) {
                        for (Color c : kColors) {
                            int32_t w = g.neighbor(x, c);
                            if (w != kNone && g.column(static_cast<uint32_t>(w)) == g.column(x) + step) {
                                t.push_back(c);
                                x = static_cast<uint32_t>(w);
                                break;
                            }
                        }
                    }
                    counts[t]++;
                }
                uint64_t bound = ((uint64_t{1} << (n - j + 1)) + 2) / 3;
                for (const auto &[t, k] : counts) {
                    EXPECT_LE(k, bound) << "n=" << n << " j=" << j;
                }
            }
        }
    }
}

TEST(graph, distance_to_weld) {
    WeldedTree g = build_canonical(5, 3);
    EXPECT_EQ(distance_to_weld(g, g.entrance()), 5);
    EXPECT_EQ(distance_to_weld(g, g.exit()), 5);
    for (uint32_t v = 0; v < g.vertex_count(); v++) {
        if (g.is_weld(v)) {
            EXPECT_EQ(distance_to_weld(g, v), 0);
        }
    }
}

TEST(graph, weld_classes_and_subtrees) {
    WeldedTree g = build_canonical(12, 4);
    size_t total = 0;
    for (const auto &cls : g.weld_classes()) {
        total += cls.size();
    }
    EXPECT_EQ(total, size_t{2} << 12);
    EXPECT_EQ(g.subtree_height(), 4);
    EXPECT_EQ(g.subtree_count(), 512);
    for (int id = 0; id < g.subtree_count(); id++) {
        ASSERT_EQ(g.subtree_leaves(id).size(), 16u);
        Side s = g.side(g.subtree_leaves(id).front());
        EXPECT_EQ(s, id < 256 ? Side::left : Side::right);
    }
    // Leaves of one subtree share their ancestor four levels up.
    WeldedTree h = build_canonical(4, 4);
    EXPECT_EQ(h.subtree_height(), 2);
    EXPECT_EQ(h.subtree_count(), 8);
}

TEST(graph, identity_permutation_is_noop) {
    WeldedTree g = build_canonical(6, 8);
    auto id = ColorPreservingPermutation::identity(g.vertex_count());
    EXPECT_TRUE(is_color_preserving(g, id));
    EXPECT_EQ(apply_permutation(g, id), g);
}

TEST(graph, example_swap_moves_weld_edges) {
    auto ex = example_graph();
    const WeldedTree &g = ex.graph;
    auto sigma = ColorPreservingPermutation::identity(g.vertex_count());
    std::swap(sigma.map[ex.at("Lrbr")], sigma.map[ex.at("Lbgr")]);
    sigma.rebuild_inverse();
    ASSERT_TRUE(is_color_preserving(g, sigma));
    WeldedTree h = apply_permutation(g, sigma);
    ASSERT_TRUE(h.valid());
    EXPECT_TRUE(has_edge(h, ex.at("Rrbg"), ex.at("Lbgr"), Color::blue));
    EXPECT_TRUE(has_edge(h, ex.at("Lbgr"), ex.at("Rrgr"), Color::green));
    EXPECT_TRUE(has_edge(h, ex.at("Rbgb"), ex.at("Lrbr"), Color::green));
    EXPECT_TRUE(has_edge(h, ex.at("Lrbr"), ex.at("Rbrg"), Color::blue));
    EXPECT_TRUE(has_edge(h, ex.at("Lrb"), ex.at("Lrbr"), Color::red));
}

TEST(graph, non_color_preserving_permutation_is_rejected) {
    auto ex = example_graph();
    auto sigma = ColorPreservingPermutation::identity(ex.graph.vertex_count());
    std::swap(sigma.map[ex.at("Lrbr")], sigma.map[ex.at("Lrbg")]);
    sigma.rebuild_inverse();
    EXPECT_FALSE(is_color_preserving(ex.graph, sigma));
    EXPECT_THROW(apply_permutation(ex.graph, sigma), std::invalid_argument);
}

TEST(graph, permuted_graphs_stay_valid) {
    WeldedTree g = build_canonical(6, 21);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; k++) {
        auto sigma = sample_permutation(g, rng);
        ASSERT_TRUE(is_color_preserving(g, sigma));
        WeldedTree h = apply_permutation(g, sigma);
        ASSERT_TRUE(h.valid());
        for (Side s : {Side::left, Side::right}) {
            for (int i = 1; i <= 6; i++) {
                for (Color c : kColors) {
                    EXPECT_EQ(gamma_count(h, s, c, i), gamma_count(g, s, c, i));
                }
            }
        }
    }
}

TEST(graph, permutation_composition) {
    WeldedTree g = build_canonical(5, 2);
    std::mt19937_64 rng(17);
    for (int k = 0; k < 20; k++) {
        auto rho = sample_permutation(g, rng);
        auto sigma = sample_permutation(g, rng);
        WeldedTree direct = apply_permutation(g, sigma.compose(rho));
        WeldedTree staged = apply_permutation(apply_permutation(g, rho), sigma);
        EXPECT_EQ(direct.edges(), staged.edges());
    }
}

TEST(graph, permutation_images_are_uniform) {
    WeldedTree g = build_canonical(6, 13);
    const auto &cls = g.weld_classes()[0];
    ASSERT_GT(cls.size(), 2u);
    const uint32_t probe = cls.front();
    std::map<uint32_t, uint64_t> hist;
    std::mt19937_64 rng(2024);
    const int samples = 100000;
    for (int k = 0; k < samples; k++) {
        hist[sample_permutation(g, rng)(probe)]++;
    }
    ASSERT_EQ(hist.size(), cls.size());
    const double expected = static_cast<double>(samples) / static_cast<double>(cls.size());
    double chi2 = 0;
    for (const auto &[v, k] : hist) {
        chi2 += (k - expected) * (k - expected) / expected;
    }
    boost::math::chi_squared dist(static_cast<double>(cls.size() - 1));
    EXPECT_LT(chi2, boost::math::quantile(dist, 0.99));
}

TEST(graph, json_round_trip) {
    WeldedTree g = build_canonical(7, 31);
    nlohmann::json j = graph_to_json(g);
    WeldedTree h = graph_from_json(nlohmann::json::parse(j.dump()));
    ASSERT_TRUE(h.valid());
    EXPECT_EQ(h, g);
    EXPECT_EQ(graph_to_json(h).dump(), j.dump());
}
