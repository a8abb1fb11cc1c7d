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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "weldtree/graph.hpp"
#include "weldtree/oracle.hpp"
#include "weldtree/parallel.hpp"
#include "weldtree/rng.hpp"

namespace weldtree {

using Complex = std::complex<double>;

// Sparse symmetric real matrix as weighted neighbor lists.
struct WalkHamiltonian {
    std::vector<std::vector<std::pair<uint32_t, double>>> rows;

    std::vector<Complex> times_minus_i(const std::vector<Complex> &psi) const {
        std::vector<Complex> out(psi.size());
        for (size_t a = 0; a < rows.size(); a++) {
            Complex s = 0;
            for (auto [b, w] : rows[a]) {
                s += w * psi[b];
            }
            out[a] = Complex(s.imag(), -s.real());
        }
        return out;
    }
};

// Column chain: sqrt(2) couplings inside each tree, 2 across the weld.
inline WalkHamiltonian column_hamiltonian(int n) {
    const uint32_t d = static_cast<uint32_t>(2 * n + 2);
    WalkHamiltonian h;
    h.rows.resize(d);
    for (uint32_t j = 0; j + 1 < d; j++) {
        double w = j == static_cast<uint32_t>(n) ? 2.0 : std::sqrt(2.0);
        h.rows[j].push_back({j + 1, w});
        h.rows[j + 1].push_back({j, w});
    }
    return h;
}

inline WalkHamiltonian adjacency_hamiltonian(const WeldedTree &g) {
    WalkHamiltonian h;
    h.rows.resize(g.vertex_count());
    for (const Edge &e : g.edges()) {
        h.rows[e.u].push_back({e.v, 1.0});
        h.rows[e.v].push_back({e.u, 1.0});
    }
    return h;
}

// One classical fourth-order Runge-Kutta step of psi' = -i H psi.
inline void rk4_step(const WalkHamiltonian &h, std::vector<Complex> &psi, double dt) {
    auto axpy = [](const std::vector<Complex> &x, double a, const std::vector<Complex> &y) {
        std::vector<Complex> out(x.size());
        for (size_t k = 0; k < x.size(); k++) {
            out[k] = x[k] + a * y[k];
        }
        return out;
    };
    auto k1 = h.times_minus_i(psi);
    auto k2 = h.times_minus_i(axpy(psi, dt / 2, k1));
    auto k3 = h.times_minus_i(axpy(psi, dt / 2, k2));
    auto k4 = h.times_minus_i(axpy(psi, dt, k3));
    for (size_t k = 0; k < psi.size(); k++) {
        psi[k] += dt / 6 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
}

// Evolves from `start` and reports |<target|psi(t)>|^2 at every multiple of
// `every` up to tmax. The step is shrunk so every grid time is hit exactly.
inline std::vector<std::pair<double, double>> walk_series(
    const WalkHamiltonian &h, uint32_t start, uint32_t target, double tmax, double dt, double every) {
    if (tmax < 0 || dt <= 0 || every <= 0) {
        throw std::invalid_argument("walk needs tmax >= 0 and positive steps");
    }
    std::vector<Complex> psi(h.rows.size());
    psi[start] = 1.0;
    std::vector<std::pair<double, double>> out{{0.0, std::norm(psi[target])}};
    const long points = std::lround(std::floor(tmax / every + 1e-9));
    const long sub = std::max(1L, std::lround(std::ceil(every / dt - 1e-9)));
    const double step = every / static_cast<double>(sub);
    for (long p = 1; p <= points; p++) {
        for (long s = 0; s < sub; s++) {
            rk4_step(h, psi, step);
        }
        out.push_back({static_cast<double>(p) * every, std::norm(psi[target])});
    }
    return out;
}

inline double walk_norm_after(const WalkHamiltonian &h, uint32_t start, double time, double dt) {
    std::vector<Complex> psi(h.rows.size());
    psi[start] = 1.0;
    long steps = std::max(1L, std::lround(std::ceil(time / dt - 1e-9)));
    for (long s = 0; s < steps; s++) {
        rk4_step(h, psi, time / static_cast<double>(steps));
    }
    double norm = 0;
    for (Complex z : psi) {
        norm += std::norm(z);
    }
    return norm;
}

inline double walk_probability(const WalkHamiltonian &h, uint32_t start, uint32_t target, double time, double dt) {
    if (time == 0) {
        return start == target ? 1.0 : 0.0;
    }
    return walk_series(h, start, target, time, dt, time).back().second;
}

inline double column_walk(int n, double time, double dt) {
    return walk_probability(column_hamiltonian(n), 0, static_cast<uint32_t>(2 * n + 1), time, dt);
}

inline double full_walk(const WeldedTree &g, double time, double dt) {
    return walk_probability(adjacency_hamiltonian(g), g.entrance(), g.exit(), time, dt);
}

// Randomized exploration: each query resolves a uniformly random (known
// vertex, color) pair whose edge is still unknown. Returns true if EXIT is
// seen within the budget.
template <typename Rng>
bool explore_for_exit(const Oracle &o, uint64_t queries, Rng &rng) {
    std::vector<std::pair<uint64_t, Color>> frontier;
    std::unordered_map<uint64_t, size_t> where;  // key: label * 3 + color
    std::unordered_map<uint64_t, bool> known;
    auto key = [](uint64_t l, Color c) { return l * 3 + static_cast<uint64_t>(color_index(c)); };
    auto push = [&](uint64_t l, Color c) {
        where[key(l, c)] = frontier.size();
        frontier.push_back({l, c});
    };
    auto remove = [&](uint64_t l, Color c) {
        auto it = where.find(key(l, c));
        if (it == where.end()) {
            return;
        }
        size_t pos = it->second;
        where.erase(it);
        if (pos + 1 != frontier.size()) {
            frontier[pos] = frontier.back();
            where[key(frontier[pos].first, frontier[pos].second)] = pos;
        }
        frontier.pop_back();
    };
    known[o.entrance()] = true;
    for (Color c : kColors) {
        push(o.entrance(), c);
    }
    const uint64_t start = o.meter();
    while (o.meter() - start < queries && !frontier.empty()) {
        auto [v, c] = frontier[uniform_below(rng, frontier.size())];
        remove(v, c);
        uint64_t w = o.query(c, v);
        if (w == o.exit()) {
            return true;
        }
        if (w == o.noedge() || w == o.invalid()) {
            continue;
        }
        if (known.emplace(w, true).second) {
            for (Color d : kColors) {
                if (d != c) {
                    push(w, d);
                }
            }
        } else {
            remove(w, c);
        }
    }
    return false;
}

// Hit rate of explore_for_exit over sigma ~ D_n on a fixed canonical graph.
inline double classical_baseline(const WeldedTree &g, uint64_t queries, uint64_t trials, uint64_t seed, int workers) {
    std::vector<uint8_t> hit(trials, 0);
    parallel_for(trials, workers, [&](size_t k) {
        auto rng = make_stream(seed, tags::kBaseline, k);
        ColorPreservingPermutation sigma = sample_permutation(g, rng);
        Oracle o(g, &sigma);
        hit[k] = explore_for_exit(o, queries, rng);
    });
    return trials ? static_cast<double>(std::accumulate(hit.begin(), hit.end(), uint64_t{0})) /
                        static_cast<double>(trials)
                  : 0.0;
}

inline double classical_baseline(int n, uint64_t queries, uint64_t trials, uint64_t seed, int workers = 1) {
    return classical_baseline(build_canonical(n, seed), queries, trials, seed, workers);
}

}  // namespace weldtree
