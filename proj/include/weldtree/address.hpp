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

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weldtree/color.hpp"
#include "weldtree/oracle.hpp"

namespace weldtree {

struct Address {
    enum class Kind : uint8_t { zero = 0, noedge = 1, invalid = 2, path = 3 };

    Kind kind = Kind::zero;
    std::vector<Color> colors;  // Used by Kind::path; empty for EMPTYADDRESS.

    static Address zero() { return {Kind::zero, {}}; }
    static Address empty() { return {Kind::path, {}}; }
    static Address noedge() { return {Kind::noedge, {}}; }
    static Address invalid() { return {Kind::invalid, {}}; }
    static Address path(std::vector<Color> cs) { return {Kind::path, std::move(cs)}; }

    bool is_path() const { return kind == Kind::path; }
    bool is_empty() const { return kind == Kind::path && colors.empty(); }
    bool is_tuple() const { return kind == Kind::path && !colors.empty(); }
    size_t length() const { return colors.size(); }

    auto operator<=>(const Address &) const = default;
};

inline bool palindrome_free(const std::vector<Color> &t) {
    for (size_t k = 1; k < t.size(); k++) {
        if (t[k] == t[k - 1]) {
            return false;
        }
    }
    return true;
}

inline std::string to_string(const Address &a) {
    switch (a.kind) {
        case Address::Kind::zero:
            return "ZERO";
        case Address::Kind::noedge:
            return "NOEDGE";
        case Address::Kind::invalid:
            return "INVALID";
        case Address::Kind::path:
            break;
    }
    if (a.colors.empty()) {
        return "EMPTY";
    }
    std::string s;
    for (Color c : a.colors) {
        s.push_back(color_letter(c));
    }
    return s;
}

// Parses "EMPTY", "", or a string of r/g/b letters into a path address.
inline Address parse_address(const std::string &s) {
    if (s.empty() || s == "EMPTY") {
        return Address::empty();
    }
    std::vector<Color> cs;
    for (char ch : s) {
        cs.push_back(parse_color(std::string(1, ch)));
    }
    return Address::path(std::move(cs));
}

inline std::vector<Color> parse_colors(const std::string &s) { return parse_address(s).colors; }

struct AddressDepthOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Neighbor of t along color c in the unbounded address tree.
inline Address lambda(const Address &t, Color c, Color missing) {
    if (!t.is_path()) {
        return Address::invalid();
    }
    if (t.colors.empty()) {
        return c == missing ? Address::noedge() : Address::path({c});
    }
    Address out = t;
    if (out.colors.back() == c) {
        out.colors.pop_back();
    } else {
        out.colors.push_back(c);
    }
    return out;
}

// The address tree of a given depth with its string encoding. Colors use two
// bits each (red=01, green=10, blue=11), first color in the most significant
// pair; specials keep the top pair zero and are told apart by the low pair.
class AddressTree {
   public:
    AddressTree(Color missing, int depth) : missing_(missing), depth_(depth) {
        if (depth < 2 || depth > 32) {
            throw std::invalid_argument("address depth must lie in [2, 32]");
        }
    }

    Color missing() const { return missing_; }
    int depth() const { return depth_; }
    int bits() const { return 2 * depth_; }

    static constexpr uint64_t zero_string() { return 0; }
    static constexpr uint64_t empty_string() { return 1; }
    static constexpr uint64_t noedge_string() { return 2; }
    static constexpr uint64_t invalid_string() { return 3; }

    bool contains(const Address &t) const {
        if (!t.is_path()) {
            return true;
        }
        if (t.colors.size() > static_cast<size_t>(depth_) || !palindrome_free(t.colors)) {
            return false;
        }
        return t.colors.empty() || t.colors.front() != missing_;
    }

    Address lambda(const Address &t, Color c) const {
        Address out = weldtree::lambda(t, c, missing_);
        if (out.is_path() && out.colors.size() > static_cast<size_t>(depth_)) {
            throw AddressDepthOverflow("address " + to_string(t) + " extended past depth " + std::to_string(depth_));
        }
        return out;
    }

    uint64_t b_map(const Address &t) const {
        switch (t.kind) {
            case Address::Kind::zero:
                return zero_string();
            case Address::Kind::noedge:
                return noedge_string();
            case Address::Kind::invalid:
                return invalid_string();
            case Address::Kind::path:
                break;
        }
        if (!contains(t)) {
            throw std::invalid_argument("address " + to_string(t) + " is not in the address tree");
        }
        if (t.colors.empty()) {
            return empty_string();
        }
        uint64_t s = 0;
        for (size_t k = 0; k < t.colors.size(); k++) {
            uint64_t code = static_cast<uint64_t>(color_index(t.colors[k]) + 1);
            s |= code << (bits() - 2 * (k + 1));
        }
        return s;
    }

    Address b_inv(uint64_t s) const {
        if (bits() < 64 && (s >> bits()) != 0) {
            return Address::invalid();
        }
        auto pair_at = [&](int k) { return static_cast<int>((s >> (bits() - 2 * (k + 1))) & 3); };
        if (pair_at(0) == 0) {
            switch (s) {
                case zero_string():
                    return Address::zero();
                case empty_string():
                    return Address::empty();
                case noedge_string():
                    return Address::noedge();
                default:
                    return Address::invalid();
            }
        }
        std::vector<Color> cs;
        int k = 0;
        for (; k < depth_ && pair_at(k) != 0; k++) {
            cs.push_back(color_from_index(pair_at(k) - 1));
        }
        for (; k < depth_; k++) {
            if (pair_at(k) != 0) {
                return Address::invalid();
            }
        }
        Address t = Address::path(std::move(cs));
        return contains(t) ? t : Address::invalid();
    }

    bool in_range(uint64_t s) const { return s == invalid_string() || b_inv(s).kind != Address::Kind::invalid; }

    // Encoded neighbor: B(lambda_c(B^inv(s))).
    uint64_t step(uint64_t s, Color c) const { return b_map(lambda(b_inv(s), c)); }

    // Parent in the address tree, if any. Specials other than NOEDGEADDRESS
    // have none.
    static std::optional<Address> parent(const Address &t) {
        if (t.kind == Address::Kind::noedge) {
            return Address::empty();
        }
        if (!t.is_tuple()) {
            return std::nullopt;
        }
        Address p = t;
        p.colors.pop_back();
        return p;
    }

   private:
    Color missing_;
    int depth_;
};

// Resolves an address to a vertex label by querying along its colors.
inline uint64_t l_prime(const Oracle &o, const Address &t) {
    switch (t.kind) {
        case Address::Kind::zero:
            return o.zero();
        case Address::Kind::invalid:
            return o.invalid();
        case Address::Kind::noedge:
            return o.noedge();
        case Address::Kind::path:
            break;
    }
    uint64_t v = o.entrance();
    for (Color c : t.colors) {
        v = o.query(c, v);
    }
    return v;
}

// White-box variant of l_prime that leaves the meter alone.
inline uint64_t l_prime_peek(const Oracle &o, const Address &t) {
    switch (t.kind) {
        case Address::Kind::zero:
            return o.zero();
        case Address::Kind::invalid:
            return o.invalid();
        case Address::Kind::noedge:
            return o.noedge();
        case Address::Kind::path:
            break;
    }
    uint64_t v = o.entrance();
    for (Color c : t.colors) {
        v = o.peek(c, v);
    }
    return v;
}

inline std::vector<uint64_t> l_map(const Oracle &o, const AddressTree &tree, const std::vector<uint64_t> &regs) {
    std::vector<uint64_t> out;
    out.reserve(regs.size());
    for (uint64_t s : regs) {
        out.push_back(l_prime(o, tree.b_inv(s)));
    }
    return out;
}

}  // namespace weldtree
