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

#include <cmath>

#include "gtest/gtest.h"
#include "weldtree/walk.hpp"

using namespace weldtree;

namespace {

constexpr double kStep = 0.0025;

using Dense = std::vector<std::vector<Complex>>;

Dense multiply(const Dense &a, const Dense &b) {
    const size_t d = a.size();
    Dense c(d, std::vector<Complex>(d));
    for (size_t i = 0; i < d; i++) {
        for (size_t k = 0; k < d; k++) {
            for (size_t j = 0; j < d; j++) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

// exp(-iHt) by scaling and squaring of a truncated Taylor series.
Dense propagator(const WalkHamiltonian &h, double t) {
    const size_t d = h.rows.size();
    int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(std::max(1.0, 3 * t)))) + 4);
    const double s = t / std::ldexp(1.0, squarings);
    Dense m(d, std::vector<Complex>(d));
    for (size_t a = 0; a < d; a++) {
        for (auto [b, w] : h.rows[a]) {
            m[a][b] = Complex(0, -w * s);
        }
    }
    Dense result(d, std::vector<Complex>(d)), term(d, std::vector<Complex>(d));
    for (size_t a = 0; a < d; a++) {
        result[a][a] = term[a][a] = 1.0;
    }
    for (int k = 1; k <= 30; k++) {
        term = multiply(term, m);
        for (size_t a = 0; a < d; a++) {
            for (size_t b = 0; b < d; b++) {
                term[a][b] /= static_cast<double>(k);
                result[a][b] += term[a][b];
            }
        }
    }
    for (int k = 0; k < squarings; k++) {
        result = multiply(result, result);
    }
    return result;
}

}  // namespace

TEST(walk, starts_at_entrance) {
    EXPECT_EQ(column_walk(4, 0.0, kStep), 0.0);
    EXPECT_EQ(full_walk(build_canonical(3, 1), 0.0, kStep), 0.0);
    EXPECT_NEAR(walk_norm_after(column_hamiltonian(4), 0, 0.0, kStep), 1.0, 1e-15);
}

TEST(walk, column_chain_matches_matrix_exponential) {
    for (int n : {1, 3, 6}) {
        WalkHamiltonian h = column_hamiltonian(n);
        for (double t : {0.7, 3.0, 11.5}) {
            Dense u = propagator(h, t);
            EXPECT_NEAR(column_walk(n, t, kStep), std::norm(u[2 * n + 1][0]), 1e-8) << n << " " << t;
        }
    }
}

TEST(walk, full_graph_matches_matrix_exponential) {
    WeldedTree g = build_canonical(3, 4);
    WalkHamiltonian h = adjacency_hamiltonian(g);
    for (double t : {1.0, 4.5}) {
        Dense u = propagator(h, t);
        EXPECT_NEAR(full_walk(g, t, kStep), std::norm(u[g.exit()][g.entrance()]), 1e-8);
    }
}

TEST(walk, reduced_chain_matches_full_graph) {
    for (int n = 1; n <= 5; n++) {
        WeldedTree g = build_canonical(n, 60 + n);
        const double tmax = 10.0 * n;
        auto reduced = walk_series(column_hamiltonian(n), 0, 2 * n + 1, tmax, kStep, tmax / 50);
        auto full = walk_series(adjacency_hamiltonian(g), g.entrance(), g.exit(), tmax, kStep, tmax / 50);
        ASSERT_EQ(reduced.size(), 51u);
        ASSERT_EQ(full.size(), 51u);
        for (size_t k = 0; k < reduced.size(); k++) {
            EXPECT_DOUBLE_EQ(reduced[k].first, full[k].first);
            EXPECT_NEAR(reduced[k].second, full[k].second, 1e-8) << n << " t=" << reduced[k].first;
        }
    }
}

TEST(walk, norm_is_preserved) {
    for (int n : {4, 8, 12}) {
        EXPECT_NEAR(walk_norm_after(column_hamiltonian(n), 0, 10.0 * n, kStep), 1.0, 1e-9) << n;
    }
    WeldedTree g = build_canonical(5, 2);
    EXPECT_NEAR(walk_norm_after(adjacency_hamiltonian(g), g.entrance(), 50.0, kStep), 1.0, 1e-9);
}

TEST(walk, step_halving_converges) {
    for (int n : {4, 8}) {
        for (double t : {5.0, 10.0 * n}) {
            EXPECT_NEAR(column_walk(n, t, kStep), column_walk(n, t, kStep / 2), 1e-8);
        }
    }
}

TEST(walk, reaches_exit_within_linear_time) {
    for (int n = 4; n <= 10; n++) {
        auto series = walk_series(column_hamiltonian(n), 0, 2 * n + 1, 10.0 * n, kStep, 0.05);
        double best = 0;
        for (const auto &[t, p] : series) {
            best = std::max(best, p);
        }
        EXPECT_GE(best, 1.0 / (2 * n)) << n;
    }
}

TEST(walk, rejects_bad_parameters) {
    EXPECT_THROW(walk_series(column_hamiltonian(2), 0, 5, -1.0, kStep, 1.0), std::invalid_argument);
    EXPECT_THROW(walk_series(column_hamiltonian(2), 0, 5, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST(walk, classical_baseline) {
    EXPECT_EQ(classical_baseline(6, 0, 200, 1), 0.0);
    EXPECT_NEAR(classical_baseline(3, 64, 500, 2), 1.0, 1e-12);
    EXPECT_LT(classical_baseline(12, 100, 2000, 3), 1e-2);
}

TEST(walk, exploration_stays_within_budget) {
    WeldedTree g = build_canonical(6, 9);
    std::mt19937_64 rng(1);
    for (uint64_t q : {1u, 10u, 50u}) {
        Oracle o(g);
        explore_for_exit(o, q, rng);
        EXPECT_LE(o.meter(), q);
    }
}
