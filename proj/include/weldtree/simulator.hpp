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
#include <deque>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "weldtree/address.hpp"
#include "weldtree/circuit.hpp"
#include "weldtree/graph.hpp"
#include "weldtree/oracle.hpp"
#include "weldtree/sparse_state.hpp"

namespace weldtree {

enum class GenuinePolicy : uint8_t {
    strict,  // An oracle gate on a non-compliant controlled config is an error.
    gadget,  // Non-compliant configs pass through unchanged.
};

struct SimulationOptions {
    GenuinePolicy genuine = GenuinePolicy::strict;
    bool enforce_rooted = true;
    double prune_threshold = 1e-14;
    size_t support_cap = size_t{1} << 20;
};

struct GenuinenessViolation : std::runtime_error {
    BasisConfig config;
    GenuinenessViolation(const std::string &what, BasisConfig x) : std::runtime_error(what), config(std::move(x)) {}
};

struct SupportCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string describe(const BasisConfig &x, int bits) {
    std::ostringstream out;
    out << "[";
    for (size_t r = 0; r < x.regs.size(); r++) {
        out << (r ? " " : "") << to_hex(x.regs[r], bits);
    }
    out << " ; work=" << std::hex << x.work << "]";
    return out.str();
}

// Stored labels are graph vertices, zero or NOEDGE; ENTRANCE is stored; every
// nonzero label is reachable from ENTRANCE along eta edges among stored labels.
inline bool is_rooted(const std::vector<uint64_t> &regs, const Oracle &o) {
    std::vector<uint64_t> stored;
    bool has_entrance = false;
    for (uint64_t l : regs) {
        if (l == 0) {
            continue;
        }
        if (l != o.noedge() && o.graph().find(l) == kNone) {
            return false;
        }
        has_entrance |= l == o.entrance();
        stored.push_back(l);
    }
    if (!has_entrance) {
        return false;
    }
    std::sort(stored.begin(), stored.end());
    stored.erase(std::unique(stored.begin(), stored.end()), stored.end());
    auto is_stored = [&](uint64_t l) { return std::binary_search(stored.begin(), stored.end(), l); };
    std::vector<uint64_t> reached{o.entrance()};
    std::vector<uint64_t> frontier{o.entrance()};
    while (!frontier.empty()) {
        uint64_t u = frontier.back();
        frontier.pop_back();
        if (u == o.noedge()) {
            continue;
        }
        for (Color c : kColors) {
            uint64_t w = o.peek(c, u);
            if (is_stored(w) && std::find(reached.begin(), reached.end(), w) == reached.end()) {
                reached.push_back(w);
                frontier.push_back(w);
            }
        }
    }
    return reached.size() == stored.size();
}

inline bool is_rooted(const BasisConfig &x, const Oracle &o) { return is_rooted(x.regs, o); }

// Every stored string decodes to a tree label whose parent is also stored.
inline bool is_address_rooted(const std::vector<uint64_t> &regs, const AddressTree &tree) {
    for (uint64_t s : regs) {
        Address t = tree.b_inv(s);
        if (t.kind == Address::Kind::invalid) {
            return false;
        }
        auto p = AddressTree::parent(t);
        if (p && std::find(regs.begin(), regs.end(), tree.b_map(*p)) == regs.end()) {
            return false;
        }
    }
    return true;
}

inline bool is_address_rooted(const BasisConfig &x, const AddressTree &tree) { return is_address_rooted(x.regs, tree); }

// Vertex-space semantics: registers hold labels, oracle gates read eta.
class VertexSpace {
   public:
    explicit VertexSpace(const Oracle &o) : o_(o) {}
    static constexpr Space kind = Space::vertex;
    uint64_t initial() const { return o_.entrance(); }
    uint64_t noedge() const { return o_.noedge(); }
    uint64_t invalid() const { return o_.invalid(); }
    int bits() const { return o_.graph().label_bits(); }
    uint64_t image(Color c, uint64_t v) const { return o_.peek(c, v); }
    bool rooted(const std::vector<uint64_t> &regs) const { return is_rooted(regs, o_); }
    const Oracle &oracle() const { return o_; }

   private:
    const Oracle &o_;
};

// Address-space semantics: registers hold B-encoded addresses and oracle
// gates act as B lambda_c B^inv.
class AddressSpace {
   public:
    explicit AddressSpace(AddressTree tree) : tree_(tree) {}
    static constexpr Space kind = Space::address;
    uint64_t initial() const { return AddressTree::empty_string(); }
    uint64_t noedge() const { return AddressTree::noedge_string(); }
    uint64_t invalid() const { return AddressTree::invalid_string(); }
    int bits() const { return tree_.bits(); }
    uint64_t image(Color c, uint64_t s) const { return tree_.step(s, c); }
    bool rooted(const std::vector<uint64_t> &regs) const { return is_address_rooted(regs, tree_); }
    const AddressTree &tree() const { return tree_; }

   private:
    AddressTree tree_;
};

template <typename SpaceT>
SparseState initial_state(const SpaceT &space, int registers) {
    SparseState s(SpaceT::kind);
    BasisConfig x;
    x.regs.assign(registers, 0);
    x.regs[0] = space.initial();
    s.add(std::move(x), 1.0);
    return s;
}

template <typename SpaceT>
SparseState apply_gate(const SparseState &in, const Gate &gate, const SpaceT &space, const SimulationOptions &opt) {
    SparseState out(in.space());
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            for (const auto &[x, a] : in) {
                if constexpr (std::is_same_v<T, OracleGate>) {
                    if (!x.bit(g.control)) {
                        out.add(x, a);
                        continue;
                    }
                    uint64_t target = space.image(g.color, x.regs[g.in]);
                    uint64_t vk = x.regs[g.out];
                    if (vk != 0 && vk != target) {
                        if (opt.genuine == GenuinePolicy::strict) {
                            throw GenuinenessViolation(
                                "oracle gate precondition fails on " + describe(x, space.bits()), x);
                        }
                        out.add(x, a);
                        continue;
                    }
                    BasisConfig y = x;
                    y.regs[g.out] = 0;
                    if (opt.enforce_rooted && (target == space.invalid() || !space.rooted(y.regs))) {
                        out.add(x, a);
                        continue;
                    }
                    y.regs[g.out] = vk ^ target;
                    out.add(std::move(y), a);
                } else if constexpr (std::is_same_v<T, SwapRotationGate>) {
                    if (!x.bit(g.control)) {
                        out.add(x, a);
                        continue;
                    }
                    if (x.regs[g.j] == x.regs[g.k]) {
                        out.add(x, a * std::exp(Complex(0, g.theta)));
                        continue;
                    }
                    BasisConfig y = x;
                    std::swap(y.regs[g.j], y.regs[g.k]);
                    out.add(x, a * std::cos(g.theta));
                    out.add(std::move(y), a * Complex(0, std::sin(g.theta)));
                } else if constexpr (std::is_same_v<T, EqualCheckGate>) {
                    BasisConfig y = x;
                    y.work ^= uint64_t{x.regs[g.j] == x.regs[g.k]} << g.target;
                    out.add(std::move(y), a);
                } else if constexpr (std::is_same_v<T, NoEdgeCheckGate>) {
                    BasisConfig y = x;
                    y.work ^= uint64_t{x.regs[g.j] == space.noedge()} << g.target;
                    out.add(std::move(y), a);
                } else if constexpr (std::is_same_v<T, ZeroCheckGate>) {
                    BasisConfig y = x;
                    y.work ^= uint64_t{x.regs[g.j] == 0} << g.target;
                    out.add(std::move(y), a);
                } else {
                    const size_t d = size_t{1} << g.qubits.size();
                    auto index_of = [&](uint64_t w) {
                        size_t idx = 0;
                        for (int q : g.qubits) {
                            idx = 2 * idx + ((w >> q) & 1);
                        }
                        return idx;
                    };
                    const size_t col = index_of(x.work);
                    for (size_t row = 0; row < d; row++) {
                        Complex m = g.matrix[row * d + col];
                        if (m == Complex{}) {
                            continue;
                        }
                        BasisConfig y = x;
                        for (size_t b = 0; b < g.qubits.size(); b++) {
                            int q = g.qubits[b];
                            uint64_t bit = (row >> (g.qubits.size() - 1 - b)) & 1;
                            y.work = (y.work & ~(uint64_t{1} << q)) | (bit << q);
                        }
                        out.add(std::move(y), m * a);
                    }
                }
            }
        },
        gate);
    out.prune(opt.prune_threshold);
    if (out.size() > opt.support_cap) {
        throw SupportCapExceeded("state support exceeds " + std::to_string(opt.support_cap) + " configurations");
    }
    return out;
}

template <typename SpaceT>
SparseState run_prefix(const Circuit &c, size_t i, const SpaceT &space, const SimulationOptions &opt) {
    if (i > c.gates.size()) {
        throw std::out_of_range("prefix longer than circuit");
    }
    SparseState s = initial_state(space, c.registers);
    for (size_t k = 0; k < i; k++) {
        s = apply_gate(s, c.gates[k], space, opt);
    }
    return s;
}

// Address-space analog of a circuit: the same gate list read through the
// address tree whose depth covers every register and gate.
struct TranslatedCircuit {
    Circuit circuit;
    AddressTree tree;
};

// Each oracle gate extends an address by at most one color.
inline int address_depth_for(const Circuit &c) { return std::max(2, static_cast<int>(c.oracle_count())); }

inline TranslatedCircuit translate_circuit(const Circuit &c, Color missing) {
    return TranslatedCircuit{c, AddressTree(missing, address_depth_for(c))};
}

// Replaces every oracle gate with an explicit compliance check: an extra
// register holds eta_c(v_j) and an extra workspace bit records whether
// v_k is zero or equal to it.
inline Circuit compile_genuineness_gadgets(const Circuit &c) {
    Circuit out;
    out.registers = c.registers + 1;
    out.workspace = c.workspace + 1;
    const int anc = c.registers;
    const int flag = c.workspace;
    for (const Gate &g : c.gates) {
        const auto *o = std::get_if<OracleGate>(&g);
        if (o == nullptr) {
            out.gates.push_back(g);
            continue;
        }
        out.gates.push_back(OracleGate{o->color, o->control, o->in, anc});
        out.gates.push_back(ZeroCheckGate{o->out, flag});
        out.gates.push_back(EqualCheckGate{anc, o->out, flag});
        out.gates.push_back(OracleGate{o->color, flag, o->in, o->out});
        out.gates.push_back(EqualCheckGate{anc, o->out, flag});
        out.gates.push_back(ZeroCheckGate{o->out, flag});
        out.gates.push_back(OracleGate{o->color, o->control, o->in, anc});
    }
    return out;
}

}  // namespace weldtree
