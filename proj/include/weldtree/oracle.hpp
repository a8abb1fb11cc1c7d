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

#include <atomic>
#include <cstdint>
#include <stdexcept>

#include "weldtree/color.hpp"
#include "weldtree/graph.hpp"

namespace weldtree {

// Black-box access to eta_c (or eta^sigma_c) over labels with a query meter.
// query() is metered; peek() and neighbor() are white-box and free.
class Oracle {
   public:
    explicit Oracle(const WeldedTree &g, const ColorPreservingPermutation *sigma = nullptr) : g_(g), sigma_(sigma) {
        if (!g.valid()) {
            throw std::invalid_argument("oracle requires a valid welded tree");
        }
        if (sigma != nullptr && sigma->map.size() != g.vertex_count()) {
            throw std::invalid_argument("permutation size does not match graph");
        }
    }
    Oracle(WeldedTree &&, const ColorPreservingPermutation * = nullptr) = delete;
    Oracle(const Oracle &) = delete;
    Oracle &operator=(const Oracle &) = delete;

    const WeldedTree &graph() const { return g_; }
    const ColorPreservingPermutation *sigma() const { return sigma_; }

    uint64_t zero() const { return 0; }
    uint64_t noedge() const { return g_.noedge(); }
    uint64_t invalid() const { return g_.invalid(); }
    uint64_t entrance() const { return g_.entrance_label(); }
    uint64_t exit() const { return g_.exit_label(); }

    // Neighbor index in G^sigma, or kNone.
    int32_t neighbor(uint32_t v, Color c) const {
        int32_t w = g_.neighbor(v, c);
        if (sigma_ == nullptr || w == kNone) {
            return w;
        }
        if (!g_.is_weld(v) || !g_.is_weld(static_cast<uint32_t>(w))) {
            return w;
        }
        uint32_t pre = sigma_->inverse[v];
        int32_t x = g_.neighbor(pre, c);
        if (!g_.is_weld(static_cast<uint32_t>(x))) {
            // c is the tree color of v; tree edges are never permuted.
            return w;
        }
        return static_cast<int32_t>((*sigma_)(static_cast<uint32_t>(x)));
    }

    uint64_t peek(Color c, uint64_t label) const {
        int64_t v = g_.find(label);
        if (v == kNone) {
            return invalid();
        }
        int32_t w = neighbor(static_cast<uint32_t>(v), c);
        return w == kNone ? noedge() : g_.label(static_cast<uint32_t>(w));
    }

    uint64_t query(Color c, uint64_t label) const {
        meter_.fetch_add(1, std::memory_order_relaxed);
        return peek(c, label);
    }

    // Color absent at ENTRANCE, inferred from exactly two queries.
    Color missing_color() const {
        const bool red = query(Color::red, entrance()) != noedge();
        const bool green = query(Color::green, entrance()) != noedge();
        return !red ? Color::red : !green ? Color::green : Color::blue;
    }

    uint64_t meter() const { return meter_.load(std::memory_order_relaxed); }
    void reset_meter() { meter_.store(0, std::memory_order_relaxed); }

   private:
    const WeldedTree &g_;
    const ColorPreservingPermutation *sigma_;
    mutable std::atomic<uint64_t> meter_{0};
};

}  // namespace weldtree
