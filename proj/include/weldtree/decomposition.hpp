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
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "weldtree/address.hpp"
#include "weldtree/circuit.hpp"
#include "weldtree/oracle.hpp"
#include "weldtree/simulator.hpp"
#include "weldtree/sparse_state.hpp"

namespace weldtree {

// Bad iff EXIT is stored or the subgraph induced on the distinct stored
// vertices contains a cycle.
inline bool is_bad_labels(const std::vector<uint64_t> &labels, const Oracle &o) {
    std::vector<uint32_t> vs;
    for (uint64_t l : labels) {
        int64_t v = o.graph().find(l);
        if (v == kNone) {
            continue;
        }
        if (l == o.exit()) {
            return true;
        }
        vs.push_back(static_cast<uint32_t>(v));
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<size_t> parent(vs.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t a) {
        while (parent[a] != a) {
            a = parent[a] = parent[parent[a]];
        }
        return a;
    };
    for (size_t a = 0; a < vs.size(); a++) {
        for (Color c : kColors) {
            int32_t w = o.neighbor(vs[a], c);
            if (w == kNone || static_cast<uint32_t>(w) <= vs[a]) {
                continue;
            }
            auto it = std::lower_bound(vs.begin(), vs.end(), static_cast<uint32_t>(w));
            if (it == vs.end() || *it != static_cast<uint32_t>(w)) {
                continue;
            }
            size_t ra = find(a), rb = find(static_cast<size_t>(it - vs.begin()));
            if (ra == rb) {
                return true;
            }
            parent[ra] = rb;
        }
    }
    return false;
}

class VertexClassifier {
   public:
    explicit VertexClassifier(const Oracle &o) : o_(o) {}
    bool bad(const BasisConfig &x) const { return is_bad_labels(x.regs, o_); }

   private:
    const Oracle &o_;
};

// Classifies address configs through their resolved labels (white-box).
// Two different stored addresses resolving to the same vertex also count as
// bad: their walks close a cycle.
class AddressClassifier {
   public:
    AddressClassifier(const Oracle &o, const AddressTree &tree) : o_(o), tree_(tree) {}

    uint64_t resolve(uint64_t s) const {
        auto it = cache_.find(s);
        if (it != cache_.end()) {
            return it->second;
        }
        uint64_t l = l_prime_peek(o_, tree_.b_inv(s));
        cache_.emplace(s, l);
        return l;
    }

    std::vector<uint64_t> image(const std::vector<uint64_t> &regs) const {
        std::vector<uint64_t> out(regs.size());
        for (size_t r = 0; r < regs.size(); r++) {
            out[r] = resolve(regs[r]);
        }
        return out;
    }

    bool bad(const BasisConfig &x) const {
        std::vector<uint64_t> img = image(x.regs);
        for (size_t a = 0; a < img.size(); a++) {
            for (size_t b = a + 1; b < img.size(); b++) {
                if (x.regs[a] != x.regs[b] && img[a] == img[b] && o_.graph().find(img[a]) != kNone) {
                    return true;
                }
            }
        }
        return is_bad_labels(img, o_);
    }

    // L applied to a state: amplitudes of configs with equal images add.
    SparseState map_state(const SparseState &s) const {
        SparseState out(Space::vertex);
        for (const auto &[x, a] : s) {
            out.add(BasisConfig{image(x.regs), x.work}, a);
        }
        return out;
    }

   private:
    const Oracle &o_;
    const AddressTree &tree_;
    mutable std::unordered_map<uint64_t, uint64_t> cache_;
};

template <typename Classifier>
SparseState project_good(const SparseState &s, const Classifier &c) {
    return s.filter([&](const BasisConfig &x) { return !c.bad(x); });
}

template <typename Classifier>
SparseState project_bad(const SparseState &s, const Classifier &c) {
    return s.filter([&](const BasisConfig &x) { return c.bad(x); });
}

struct SplitParts {
    SparseState all;
    SparseState good;
    SparseState bad;
    SparseState ugly;
};

// Per-step residuals. identities[0..5] are the address-space checks and
// identities[6..11] the vertex-space ones, in the order: good is fixed by the
// good projector, bad is fixed by the bad projector, good and bad supports
// are disjoint, good = all - ugly, gate(good_prev) = good + bad, and ugly
// equals the propagated sum of earlier bad parts.
struct StepReport {
    size_t step = 0;
    double phi_good2 = 0, phi_bad2 = 0, phi_ugly2 = 0;
    double psi_good2 = 0, psi_bad2 = 0, psi_ugly2 = 0;
    std::array<double, 12> identities{};
    double norm_phi = 0;      // |phi_good|^2 + sum phi_bad^2 - 1
    double norm_psi = 0;      // |psi_good|^2 + sum psi_bad^2 - 1
    double transcript = 0;    // max |L phi_good - psi_good|
    double norm_match = 0;    // | |phi_good| - |psi_good| |
    bool psi_rooted = true;   // every vertex config in psi_all is rooted
    bool phi_rooted = true;   // every address config in phi_all is in range(B) and address-rooted

    double max_identity() const { return *std::max_element(identities.begin(), identities.end()); }
    double max_residual() const {
        return std::max({max_identity(), std::abs(norm_phi), std::abs(norm_psi), transcript, norm_match});
    }
};

struct GoodBadSplit {
    Color missing = Color::green;
    int address_depth = 0;
    std::vector<SplitParts> phi;
    std::vector<SplitParts> psi;
    std::vector<StepReport> reports;
    double success_probability = 0;      // |Pi_bad psi_all|^2 at the last step
    double phi_success_probability = 0;  // |Pi_bad phi_all|^2 at the last step

    double max_residual() const {
        double r = 0;
        for (const auto &s : reports) {
            r = std::max(r, s.max_residual());
        }
        return r;
    }
    bool rooted() const {
        return std::all_of(reports.begin(), reports.end(), [](const StepReport &s) {
            return s.phi_rooted && s.psi_rooted;
        });
    }
};

namespace detail {

template <typename SpaceT, typename Classifier>
void split_step(
    std::vector<SplitParts> &parts, std::vector<SparseState> &propagated, const Gate &g, const SpaceT &space,
    const Classifier &cls, const SimulationOptions &opt) {
    const SplitParts &prev = parts.back();
    SplitParts next;
    next.all = apply_gate(prev.all, g, space, opt);
    SparseState moved = apply_gate(prev.good, g, space, opt);
    next.good = project_good(moved, cls);
    next.bad = project_bad(moved, cls);
    next.ugly = apply_gate(prev.ugly, g, space, opt) + next.bad;
    next.ugly.prune(opt.prune_threshold);
    for (SparseState &p : propagated) {
        p = apply_gate(p, g, space, opt);
    }
    propagated.push_back(next.bad);
    parts.push_back(std::move(next));
}

template <typename Classifier>
void check_identities(
    const std::vector<SplitParts> &parts, const std::vector<SparseState> &propagated, const SparseState &moved_good,
    const Classifier &cls, double *out) {
    const SplitParts &cur = parts.back();
    out[0] = max_residual(project_good(cur.good, cls), cur.good);
    out[1] = max_residual(project_bad(cur.bad, cls), cur.bad);
    out[2] = support_overlap(cur.good, cur.bad);
    out[3] = max_residual(cur.good, cur.all - cur.ugly);
    out[4] = max_residual(moved_good, cur.good + cur.bad);
    SparseState sum(cur.ugly.space());
    for (const SparseState &p : propagated) {
        sum += p;
    }
    out[5] = max_residual(sum, cur.ugly);
}

}  // namespace detail

// Runs C in the vertex space and its translation in the address space,
// splitting every prefix state into good, bad and ugly parts.
inline GoodBadSplit decompose_run(const Circuit &c, const Oracle &o, const SimulationOptions &opt) {
    check_circuit(c);
    GoodBadSplit out;
    out.missing = o.graph().root_missing_color(Side::left);
    TranslatedCircuit tc = translate_circuit(c, out.missing);
    out.address_depth = tc.tree.depth();
    VertexSpace vspace(o);
    AddressSpace aspace(tc.tree);
    VertexClassifier vcls(o);
    AddressClassifier acls(o, aspace.tree());

    auto start = [&](auto &parts, const SparseState &init, const auto &cls) {
        SplitParts p;
        p.all = init;
        p.good = project_good(init, cls);
        p.bad = project_bad(init, cls);
        p.ugly = p.bad;
        parts.push_back(std::move(p));
    };
    start(out.phi, initial_state(aspace, c.registers), acls);
    start(out.psi, initial_state(vspace, c.registers), vcls);
    std::vector<SparseState> phi_prop{out.phi[0].bad}, psi_prop{out.psi[0].bad};
    double phi_bad_sum = out.phi[0].bad.norm2(), psi_bad_sum = out.psi[0].bad.norm2();

    auto report = [&](size_t i, const SparseState *phi_moved, const SparseState *psi_moved) {
        StepReport r;
        r.step = i;
        const SplitParts &p = out.phi.back();
        const SplitParts &q = out.psi.back();
        r.phi_good2 = p.good.norm2(), r.phi_bad2 = p.bad.norm2(), r.phi_ugly2 = p.ugly.norm2();
        r.psi_good2 = q.good.norm2(), r.psi_bad2 = q.bad.norm2(), r.psi_ugly2 = q.ugly.norm2();
        if (phi_moved != nullptr) {
            detail::check_identities(out.phi, phi_prop, *phi_moved, acls, r.identities.data());
            detail::check_identities(out.psi, psi_prop, *psi_moved, vcls, r.identities.data() + 6);
        }
        r.norm_phi = r.phi_good2 + phi_bad_sum - 1.0;
        r.norm_psi = r.psi_good2 + psi_bad_sum - 1.0;
        r.transcript = max_residual(acls.map_state(p.good), q.good);
        r.norm_match = std::abs(std::sqrt(r.phi_good2) - std::sqrt(r.psi_good2));
        for (const auto &[x, a] : q.all) {
            r.psi_rooted = r.psi_rooted && is_rooted(x, o);
        }
        for (const auto &[x, a] : p.all) {
            bool in_range = std::all_of(x.regs.begin(), x.regs.end(), [&](uint64_t s) {
                return aspace.tree().in_range(s);
            });
            r.phi_rooted = r.phi_rooted && in_range && is_address_rooted(x, aspace.tree());
        }
        out.reports.push_back(r);
    };
    report(0, nullptr, nullptr);
    for (size_t i = 0; i < c.gates.size(); i++) {
        const Gate &g = c.gates[i];
        SparseState phi_moved = apply_gate(out.phi.back().good, g, aspace, opt);
        SparseState psi_moved = apply_gate(out.psi.back().good, g, vspace, opt);
        detail::split_step(out.phi, phi_prop, g, aspace, acls, opt);
        detail::split_step(out.psi, psi_prop, g, vspace, vcls, opt);
        phi_bad_sum += out.phi.back().bad.norm2();
        psi_bad_sum += out.psi.back().bad.norm2();
        report(i + 1, &phi_moved, &psi_moved);
    }
    out.success_probability = project_bad(out.psi.back().all, vcls).norm2();
    out.phi_success_probability = project_bad(out.phi.back().all, acls).norm2();
    return out;
}

inline double success_probability(const GoodBadSplit &split) { return split.success_probability; }

inline void write_split_csv(std::ostream &out, const GoodBadSplit &split) {
    out << "step,phi_good2,phi_bad2,phi_ugly2,psi_good2,psi_bad2,psi_ugly2,max_residual\n";
    out.precision(17);
    for (const StepReport &r : split.reports) {
        out << r.step << ',' << r.phi_good2 << ',' << r.phi_bad2 << ',' << r.phi_ugly2 << ',' << r.psi_good2 << ','
            << r.psi_bad2 << ',' << r.psi_ugly2 << ',' << r.max_residual() << '\n';
    }
}

}  // namespace weldtree
