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
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "weldtree/address.hpp"
#include "weldtree/circuit.hpp"
#include "weldtree/oracle.hpp"
#include "weldtree/rng.hpp"
#include "weldtree/simulator.hpp"
#include "weldtree/sparse_state.hpp"

namespace weldtree {

// Address-space prefix states of a circuit with cumulative weights for
// sampling. Depends only on the circuit and the missing color.
class Transcript {
   public:
    Transcript(const Circuit &c, Color missing, const SimulationOptions &opt)
        : tc_(translate_circuit(c, missing)), missing_(missing) {
        check_circuit(c);
        AddressSpace space(tc_.tree);
        SparseState s = initial_state(space, c.registers);
        for (const Gate &g : c.gates) {
            s = apply_gate(s, g, space, opt);
            Step step;
            double acc = 0;
            for (const auto &[x, a] : s) {
                acc += std::norm(a);
                step.configs.push_back(x);
                step.cumulative.push_back(acc);
            }
            steps_.push_back(std::move(step));
            states_.push_back(s);
        }
    }

    Color missing() const { return missing_; }
    const AddressTree &tree() const { return tc_.tree; }
    size_t steps() const { return steps_.size(); }
    const SparseState &state(size_t i) const { return states_.at(i - 1); }

    // Draws a config of step i in [1, steps()] with probability |amplitude|^2.
    template <typename Rng>
    const BasisConfig &sample(size_t i, Rng &rng) const {
        const Step &s = steps_.at(i - 1);
        double u = uniform_unit(rng) * s.cumulative.back();
        size_t k = std::upper_bound(s.cumulative.begin(), s.cumulative.end(), u) - s.cumulative.begin();
        return s.configs[std::min(k, s.configs.size() - 1)];
    }

   private:
    struct Step {
        std::vector<BasisConfig> configs;
        std::vector<double> cumulative;
    };
    TranslatedCircuit tc_;
    Color missing_;
    std::vector<Step> steps_;
    std::vector<SparseState> states_;
};

struct ClassicalStep {
    size_t step = 0;
    BasisConfig sample;
    std::vector<uint64_t> labels;
    uint64_t queries = 0;
};

struct ClassicalRun {
    Color missing = Color::green;
    uint64_t setup_queries = 0;
    uint64_t resolved_length = 0;
    uint64_t total_queries = 0;
    std::vector<ClassicalStep> steps;
};

// True if EXIT is absent or connected to ENTRANCE through the given labels.
inline bool exit_path_revealed(const std::vector<uint64_t> &labels, const Oracle &o) {
    if (std::find(labels.begin(), labels.end(), o.exit()) == labels.end()) {
        return true;
    }
    std::set<uint64_t> stored(labels.begin(), labels.end());
    if (!stored.count(o.entrance())) {
        return false;
    }
    std::set<uint64_t> seen{o.entrance()};
    std::vector<uint64_t> frontier{o.entrance()};
    while (!frontier.empty()) {
        uint64_t u = frontier.back();
        frontier.pop_back();
        for (Color c : kColors) {
            uint64_t w = o.peek(c, u);
            if (stored.count(w) && seen.insert(w).second) {
                frontier.push_back(w);
            }
        }
    }
    return seen.count(o.exit()) > 0;
}

// Classical simulation of a genuine rooted circuit: two queries find the
// missing color, the transcript is computed without queries, and each step
// samples a transcript config and resolves it through the oracle. A cached
// transcript is reused when its missing color matches.
template <typename Rng>
ClassicalRun simulate_classical(
    const Circuit &c, const Oracle &o, Rng &rng, const SimulationOptions &opt, const Transcript *cache = nullptr) {
    ClassicalRun run;
    const uint64_t before = o.meter();
    run.missing = o.missing_color();
    run.setup_queries = o.meter() - before;
    std::optional<Transcript> local;
    if (cache == nullptr || cache->missing() != run.missing) {
        local.emplace(c, run.missing, opt);
        cache = &*local;
    }
    for (size_t i = 1; i <= cache->steps(); i++) {
        ClassicalStep step;
        step.step = i;
        step.sample = cache->sample(i, rng);
        const uint64_t m0 = o.meter();
        step.labels = l_map(o, cache->tree(), step.sample.regs);
        step.queries = o.meter() - m0;
        uint64_t length = 0;
        for (uint64_t s : step.sample.regs) {
            Address t = cache->tree().b_inv(s);
            length += t.is_path() ? t.length() : 0;
        }
        if (step.queries != length) {
            throw std::logic_error("resolution charged " + std::to_string(step.queries) + " queries for length " +
                                   std::to_string(length));
        }
        if (!exit_path_revealed(step.labels, o)) {
            throw std::logic_error("sample holds EXIT without an ENTRANCE-EXIT path");
        }
        run.resolved_length += length;
        run.steps.push_back(std::move(step));
    }
    run.total_queries = o.meter() - before;
    if (run.total_queries != run.setup_queries + run.resolved_length) {
        throw std::logic_error("query meter disagrees with resolved lengths");
    }
    return run;
}

// Exact output distribution of step i: the push-forward of |amplitude|^2
// through L (white-box).
inline std::map<BasisConfig, double> exact_output_distribution(const Transcript &t, size_t i, const Oracle &o) {
    std::map<BasisConfig, double> dist;
    for (const auto &[x, a] : t.state(i)) {
        std::vector<uint64_t> labels;
        for (uint64_t s : x.regs) {
            labels.push_back(l_prime_peek(o, t.tree().b_inv(s)));
        }
        dist[BasisConfig{labels, x.work}] += std::norm(a);
    }
    return dist;
}

// A parent-closed set of path addresses containing EMPTYADDRESS.
struct AddressSubtree {
    std::vector<Address> nodes;  // Sorted by (length, colors).

    static AddressSubtree make(std::vector<Address> nodes) {
        std::sort(nodes.begin(), nodes.end(), [](const Address &a, const Address &b) {
            return a.colors.size() != b.colors.size() ? a.colors.size() < b.colors.size() : a.colors < b.colors;
        });
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        AddressSubtree t{std::move(nodes)};
        t.check();
        return t;
    }

    size_t size() const { return nodes.size(); }

    void check() const {
        std::set<std::vector<Color>> present;
        for (const Address &a : nodes) {
            if (!a.is_path()) {
                throw std::invalid_argument("subtree contains a special address");
            }
            if (!palindrome_free(a.colors)) {
                throw std::invalid_argument("subtree node " + to_string(a) + " repeats a color");
            }
            present.insert(a.colors);
        }
        if (!present.count({})) {
            throw std::invalid_argument("subtree lacks EMPTYADDRESS");
        }
        for (const Address &a : nodes) {
            if (!a.colors.empty()) {
                std::vector<Color> p(a.colors.begin(), a.colors.end() - 1);
                if (!present.count(p)) {
                    throw std::invalid_argument("subtree is not parent-closed at " + to_string(a));
                }
            }
        }
    }
};

struct SubtreeEmbedding {
    std::vector<Address> nodes;
    std::vector<uint64_t> labels;
    bool has_exit = false;
    bool has_cycle = false;  // Two nodes resolve to the same graph vertex.
};

// Resolves each node from its parent with one query per non-root node.
inline SubtreeEmbedding subtree_embedding(const Oracle &o, const AddressSubtree &t) {
    t.check();
    SubtreeEmbedding e;
    e.nodes = t.nodes;
    std::map<std::vector<Color>, uint64_t> label_of;
    for (const Address &a : t.nodes) {
        uint64_t l;
        if (a.colors.empty()) {
            l = o.entrance();
        } else {
            std::vector<Color> p(a.colors.begin(), a.colors.end() - 1);
            l = o.query(a.colors.back(), label_of.at(p));
        }
        label_of[a.colors] = l;
        e.labels.push_back(l);
    }
    std::set<uint64_t> seen;
    for (uint64_t l : e.labels) {
        if (o.graph().find(l) == kNone) {
            continue;
        }
        e.has_exit |= l == o.exit();
        e.has_cycle |= !seen.insert(l).second;
    }
    return e;
}

// Grows a subtree of the given size by attaching uniformly random children
// to uniformly random nodes, never exceeding max_depth.
template <typename Rng>
AddressSubtree random_subtree(size_t size, int max_depth, Rng &rng) {
    std::vector<Address> nodes{Address::empty()};
    std::set<std::vector<Color>> present{{}};
    size_t guard = 0;
    while (nodes.size() < size) {
        if (++guard > 1000 * size + 1000) {
            throw std::invalid_argument("cannot grow subtree to requested size");
        }
        const Address &p = nodes[uniform_below(rng, nodes.size())];
        if (static_cast<int>(p.colors.size()) >= max_depth) {
            continue;
        }
        Color c = color_from_index(static_cast<int>(uniform_below(rng, 3)));
        if (!p.colors.empty() && p.colors.back() == c) {
            continue;
        }
        Address child = p;
        child.colors.push_back(c);
        if (present.insert(child.colors).second) {
            nodes.push_back(std::move(child));
        }
    }
    return AddressSubtree::make(std::move(nodes));
}

struct SubtreeSamplerResult {
    bool found_exit = false;
    bool found_cycle = false;
    uint64_t queries = 0;
};

template <typename Rng>
SubtreeSamplerResult run_subtree_sampler(
    const std::function<AddressSubtree(Rng &)> &sampler, const Oracle &o, Rng &rng) {
    AddressSubtree t = sampler(rng);
    const uint64_t before = o.meter();
    SubtreeEmbedding e = subtree_embedding(o, t);
    return {e.has_exit, e.has_cycle, o.meter() - before};
}

}  // namespace weldtree
