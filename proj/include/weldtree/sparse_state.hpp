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
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace weldtree {

using Complex = std::complex<double>;

enum class Space : uint8_t { vertex = 0, address = 1 };

struct BasisConfig {
    std::vector<uint64_t> regs;
    uint64_t work = 0;

    bool bit(int q) const { return (work >> q) & 1; }
    auto operator<=>(const BasisConfig &) const = default;
};

// Map from basis configurations to amplitudes, iterated in key order.
class SparseState {
   public:
    using Map = std::map<BasisConfig, Complex>;

    SparseState() = default;
    explicit SparseState(Space space) : space_(space) {}

    Space space() const { return space_; }
    const Map &amplitudes() const { return amps_; }
    size_t size() const { return amps_.size(); }
    bool empty() const { return amps_.empty(); }
    auto begin() const { return amps_.begin(); }
    auto end() const { return amps_.end(); }

    Complex amplitude(const BasisConfig &x) const {
        auto it = amps_.find(x);
        return it == amps_.end() ? Complex{} : it->second;
    }

    void add(const BasisConfig &x, Complex a) { amps_[x] += a; }
    void add(BasisConfig &&x, Complex a) { amps_[std::move(x)] += a; }

    void prune(double threshold) {
        std::erase_if(amps_, [&](const auto &kv) { return std::abs(kv.second) <= threshold; });
    }

    double norm2() const {
        double s = 0;
        for (const auto &[x, a] : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    SparseState &operator+=(const SparseState &o) {
        for (const auto &[x, a] : o.amps_) {
            amps_[x] += a;
        }
        return *this;
    }

    SparseState &operator-=(const SparseState &o) {
        for (const auto &[x, a] : o.amps_) {
            amps_[x] -= a;
        }
        return *this;
    }

    friend SparseState operator+(SparseState a, const SparseState &b) { return a += b; }
    friend SparseState operator-(SparseState a, const SparseState &b) { return a -= b; }

    // Keeps the configurations for which keep(x) holds.
    template <typename Pred>
    SparseState filter(Pred keep) const {
        SparseState out(space_);
        for (const auto &[x, a] : amps_) {
            if (keep(x)) {
                out.amps_.emplace_hint(out.amps_.end(), x, a);
            }
        }
        return out;
    }

   private:
    Space space_ = Space::vertex;
    Map amps_;
};

// Largest amplitude difference over the union of supports.
inline double max_residual(const SparseState &a, const SparseState &b) {
    double r = 0;
    for (const auto &[x, v] : a) {
        r = std::max(r, std::abs(v - b.amplitude(x)));
    }
    for (const auto &[x, v] : b) {
        if (a.amplitudes().find(x) == a.amplitudes().end()) {
            r = std::max(r, std::abs(v));
        }
    }
    return r;
}

// Sum of |a_x||b_x| over shared configurations; zero iff supports are disjoint
// up to pruning.
inline double support_overlap(const SparseState &a, const SparseState &b) {
    double s = 0;
    for (const auto &[x, v] : a) {
        s += std::abs(v) * std::abs(b.amplitude(x));
    }
    return s;
}

}  // namespace weldtree
