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

#include "example_graph.hpp"
#include "gtest/gtest.h"
#include "weldtree/random_circuit.hpp"
#include "weldtree/simulator.hpp"

using namespace weldtree;
using weldtree::testing::bits;
using weldtree::testing::example_graph;

namespace {

BasisConfig config(std::vector<uint64_t> regs, uint64_t work = 0) { return BasisConfig{std::move(regs), work}; }

SimulationOptions gadget_rooted() {
    SimulationOptions opt;
    opt.genuine = GenuinePolicy::gadget;
    return opt;
}

}  // namespace

TEST(simulator, initial_states) {
    auto ex = example_graph();
    Oracle o(ex.graph);
    VertexSpace vs(o);
    SparseState s = initial_state(vs, 2);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.amplitude(config({o.entrance(), 0})), Complex(1.0));
    AddressSpace as(AddressTree(Color::green, 4));
    SparseState a = initial_state(as, 2);
    EXPECT_DOUBLE_EQ(a.norm2(), 1.0);
    EXPECT_EQ(l_map(o, as.tree(), a.begin()->first.regs), s.begin()->first.regs);
}

TEST(simulator, oracle_gate_writes_neighbor) {
    auto ex = example_graph();
    Oracle o(ex.graph);
    VertexSpace vs(o);
    SimulationOptions opt;
    SparseState s = apply_gate(initial_state(vs, 2), pauli_x(0), vs, opt);
    s = apply_gate(s, OracleGate{Color::red, 0, 0, 1}, vs, opt);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.begin()->first.regs, (std::vector<uint64_t>{o.entrance(), bits("010110")}));
    // Without the control bit the gate does nothing.
    SparseState t = apply_gate(initial_state(vs, 2), OracleGate{Color::red, 0, 0, 1}, vs, opt);
    EXPECT_EQ(t.begin()->first.regs, (std::vector<uint64_t>{o.entrance(), 0}));
}

TEST(simulator, oracle_gate_is_an_involution) {
    WeldedTree g = build_canonical(4, 9);
    Oracle o(g);
    VertexSpace vs(o);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 20; k++) {
        Circuit c = random_circuit({5, 8, 2, 0.6}, rng);
        for (bool rooted : {false, true}) {
            SimulationOptions opt = gadget_rooted();
            opt.enforce_rooted = rooted;
            SparseState s = run_prefix(c, c.gates.size(), vs, opt);
            OracleGate gate{Color::blue, 0, 1, 2};
            SparseState twice = apply_gate(apply_gate(s, gate, vs, opt), gate, vs, opt);
            EXPECT_LT(max_residual(twice, s), 1e-15);
        }
    }
}

TEST(simulator, swap_rotation) {
    WeldedTree g = build_canonical(3, 1);
    Oracle o(g);
    VertexSpace vs(o);
    SimulationOptions opt;
    SparseState s = apply_gate(initial_state(vs, 3), pauli_x(0), vs, opt);
    s = apply_gate(s, OracleGate{Color::red, 0, 0, 1}, vs, opt);
    if (s.begin()->first.regs[1] == 0) {
        s = apply_gate(s, OracleGate{Color::blue, 0, 0, 1}, vs, opt);
    }
    EXPECT_LT(max_residual(apply_gate(s, SwapRotationGate{0.0, 0, 0, 1}, vs, opt), s), 1e-15);
    SparseState r = apply_gate(s, SwapRotationGate{0.3, 0, 0, 1}, vs, opt);
    EXPECT_EQ(r.size(), 2u);
    EXPECT_NEAR(r.norm2(), 1.0, 1e-15);
    const auto &regs = s.begin()->first.regs;
    EXPECT_NEAR(std::abs(r.amplitude(config({regs[1], regs[0], 0}, 1)) - Complex(0, std::sin(0.3))), 0, 1e-15);
    EXPECT_EQ(apply_gate(s, SwapRotationGate{0.3, 0, 1, 2}, vs, opt).size(), 2u);
    // Equal registers pick up a phase.
    BasisConfig zeros = config({regs[0], 0, 0}, 1);
    SparseState q = apply_gate(apply_gate(initial_state(vs, 3), pauli_x(0), vs, opt),
                               SwapRotationGate{0.3, 0, 1, 2}, vs, opt);
    EXPECT_NEAR(std::abs(q.amplitude(zeros) - std::exp(Complex(0, 0.3))), 0, 1e-15);
}

TEST(simulator, check_gates) {
    WeldedTree g = build_canonical(3, 1);
    Oracle o(g);
    VertexSpace vs(o);
    SimulationOptions opt;
    SparseState s = initial_state(vs, 3);
    EXPECT_EQ(apply_gate(s, EqualCheckGate{1, 2, 1}, vs, opt).begin()->first.work, 2u);
    EXPECT_EQ(apply_gate(s, EqualCheckGate{0, 1, 1}, vs, opt).begin()->first.work, 0u);
    EXPECT_EQ(apply_gate(s, ZeroCheckGate{2, 0}, vs, opt).begin()->first.work, 1u);
    EXPECT_EQ(apply_gate(s, ZeroCheckGate{0, 0}, vs, opt).begin()->first.work, 0u);
    EXPECT_EQ(apply_gate(s, NoEdgeCheckGate{0, 0}, vs, opt).begin()->first.work, 0u);
    Color missing = g.root_missing_color(Side::left);
    SparseState n = apply_gate(apply_gate(s, pauli_x(1), vs, opt), OracleGate{missing, 1, 0, 1}, vs, opt);
    EXPECT_EQ(n.begin()->first.regs[1], o.noedge());
    EXPECT_EQ(apply_gate(n, NoEdgeCheckGate{1, 0}, vs, opt).begin()->first.work, 3u);
}

TEST(simulator, two_qubit_gate_order) {
    WeldedTree g = build_canonical(3, 1);
    Oracle o(g);
    VertexSpace vs(o);
    SimulationOptions opt;
    SparseState s = apply_gate(initial_state(vs, 1), pauli_x(0), vs, opt);
    EXPECT_EQ(apply_gate(s, cnot(0, 1), vs, opt).begin()->first.work, 3u);
    EXPECT_EQ(apply_gate(s, cnot(1, 0), vs, opt).begin()->first.work, 1u);
}

TEST(simulator, strict_policy_reports_violations) {
    auto ex = example_graph();
    Oracle o(ex.graph);
    VertexSpace vs(o);
    SimulationOptions opt;
    SparseState s(Space::vertex);
    s.add(config({o.entrance(), bits("101000")}, 1), 1.0);
    EXPECT_NO_THROW(apply_gate(s, OracleGate{Color::blue, 0, 0, 1}, vs, opt));
    try {
        apply_gate(s, OracleGate{Color::red, 0, 0, 1}, vs, opt);
        FAIL();
    } catch (const GenuinenessViolation &v) {
        EXPECT_EQ(v.config, s.begin()->first);
    }
    opt.genuine = GenuinePolicy::gadget;
    EXPECT_LT(max_residual(apply_gate(s, OracleGate{Color::red, 0, 0, 1}, vs, opt), s), 1e-15);
}

TEST(simulator, rootedness) {
    auto ex = example_graph();
    Oracle o(ex.graph);
    std::vector<uint64_t> a = {o.entrance(), bits("010110"), bits("101000"), bits("101001"),
                               bits("101010"), bits("101111"), bits("110100")};
    EXPECT_TRUE(is_rooted(a, o));
    std::vector<uint64_t> b = a;
    b[1] = 0;
    EXPECT_FALSE(is_rooted(b, o));
    EXPECT_TRUE(is_rooted({o.entrance(), 0, 0}, o));
    EXPECT_FALSE(is_rooted({0, 0}, o));
    EXPECT_FALSE(is_rooted({o.entrance(), o.invalid()}, o));
    EXPECT_TRUE(is_rooted({o.entrance(), o.noedge()}, o));
    EXPECT_FALSE(is_rooted({o.entrance(), o.exit()}, o));

    AddressTree tree(Color::green, 4);
    auto B = [&](const char *s) { return tree.b_map(parse_address(s)); };
    EXPECT_TRUE(is_address_rooted({B(""), B("r"), B("rg"), 0}, tree));
    EXPECT_FALSE(is_address_rooted({B(""), B("rg"), 0}, tree));
    EXPECT_TRUE(is_address_rooted({B(""), tree.noedge_string()}, tree));
    EXPECT_FALSE(is_address_rooted({tree.noedge_string()}, tree));
    EXPECT_FALSE(is_address_rooted({B(""), tree.invalid_string()}, tree));
}

TEST(simulator, rooted_enforcement_blocks_disconnecting_uncompute) {
    auto ex = example_graph();
    Oracle o(ex.graph);
    VertexSpace vs(o);
    SimulationOptions opt;
    SparseState s(Space::vertex);
    // Erasing 101000 would strand its child 110100.
    s.add(config({o.entrance(), bits("101000"), bits("110100")}, 1), 1.0);
    SparseState t = apply_gate(s, OracleGate{Color::blue, 0, 0, 1}, vs, opt);
    EXPECT_LT(max_residual(t, s), 1e-15);
    opt.enforce_rooted = false;
    t = apply_gate(s, OracleGate{Color::blue, 0, 0, 1}, vs, opt);
    EXPECT_EQ(t.begin()->first.regs[1], 0u);
}

TEST(simulator, translation) {
    auto ex = example_graph();
    Circuit c;
    c.registers = 2;
    c.gates = {pauli_x(0), OracleGate{Color::blue, 0, 0, 1}};
    TranslatedCircuit tc = translate_circuit(c, Color::green);
    EXPECT_EQ(circuit_to_json(tc.circuit), circuit_to_json(c));
    AddressSpace as(tc.tree);
    SparseState s = run_prefix(tc.circuit, 2, as, SimulationOptions{});
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.begin()->first.regs, (std::vector<uint64_t>{AddressTree::empty_string(), tc.tree.b_map(parse_address("b"))}));
    Oracle o(ex.graph);
    EXPECT_EQ(l_map(o, tc.tree, s.begin()->first.regs), (std::vector<uint64_t>{o.entrance(), bits("101000")}));
}

TEST(simulator, random_circuits_preserve_invariants) {
    for (int n : {3, 4}) {
        WeldedTree g = build_canonical(n, 50 + n);
        Oracle o(g);
        VertexSpace vs(o);
        std::mt19937_64 rng(n);
        for (int k = 0; k < 30; k++) {
            Circuit c = random_circuit({8, 12, 2, 0.6}, rng);
            TranslatedCircuit tc = translate_circuit(c, g.root_missing_color(Side::left));
            AddressSpace as(tc.tree);
            SparseState v = initial_state(vs, c.registers);
            SparseState a = initial_state(as, c.registers);
            for (const Gate &gate : c.gates) {
                v = apply_gate(v, gate, vs, gadget_rooted());
                a = apply_gate(a, gate, as, gadget_rooted());
                EXPECT_NEAR(v.norm2(), 1.0, 1e-9);
                EXPECT_NEAR(a.norm2(), 1.0, 1e-9);
                for (const auto &[x, amp] : v) {
                    EXPECT_TRUE(is_rooted(x, o));
                }
                for (const auto &[x, amp] : a) {
                    for (uint64_t s : x.regs) {
                        EXPECT_TRUE(tc.tree.in_range(s));
                    }
                    EXPECT_TRUE(is_address_rooted(x, tc.tree));
                }
            }
        }
    }
}

TEST(simulator, genuineness_gadget_equivalence) {
    int compliant = 0;
    for (int n : {2, 3, 4}) {
        WeldedTree g = build_canonical(n, 70 + n);
        Oracle o(g);
        VertexSpace vs(o);
        std::mt19937_64 rng(100 + n);
        for (int k = 0; k < 40; k++) {
            Circuit c = random_circuit({4, 10, 2, 0.6}, rng);
            Circuit wrapped = compile_genuineness_gadgets(c);
            SimulationOptions strict;
            strict.enforce_rooted = false;
            SimulationOptions lenient = strict;
            lenient.genuine = GenuinePolicy::gadget;
            SparseState want;
            try {
                want = run_prefix(c, c.gates.size(), vs, strict);
                compliant++;
            } catch (const GenuinenessViolation &) {
                want = run_prefix(c, c.gates.size(), vs, lenient);
            }
            SparseState got = run_prefix(wrapped, wrapped.gates.size(), vs, strict);
            SparseState reduced(Space::vertex);
            for (const auto &[x, a] : got) {
                ASSERT_EQ(x.regs.back(), 0u);
                ASSERT_FALSE(x.bit(c.workspace));
                BasisConfig y{std::vector<uint64_t>(x.regs.begin(), x.regs.end() - 1), x.work};
                reduced.add(y, a);
            }
            EXPECT_LT(max_residual(reduced, want), 1e-9);
        }
    }
    EXPECT_GT(compliant, 10);
}

TEST(simulator, support_cap) {
    WeldedTree g = build_canonical(3, 1);
    Oracle o(g);
    VertexSpace vs(o);
    SimulationOptions opt;
    opt.support_cap = 1;
    EXPECT_THROW(apply_gate(initial_state(vs, 1), hadamard(0), vs, opt), SupportCapExceeded);
    EXPECT_THROW(run_prefix(Circuit{}, 1, vs, opt), std::out_of_range);
}

TEST(simulator, circuit_json_round_trip) {
    std::mt19937_64 rng(8);
    Circuit c = random_circuit({6, 12, 3, 0.5}, rng);
    nlohmann::json j = circuit_to_json(c);
    Circuit d = circuit_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(circuit_to_json(d).dump(), j.dump());
    WeldedTree g = build_canonical(3, 2);
    Oracle o(g);
    VertexSpace vs(o);
    EXPECT_EQ(max_residual(run_prefix(c, 12, vs, gadget_rooted()), run_prefix(d, 12, vs, gadget_rooted())), 0.0);
}

TEST(simulator, malformed_circuits_are_rejected) {
    Circuit c;
    c.registers = 2;
    c.gates = {OracleGate{Color::red, 0, 0, 0}};
    EXPECT_THROW(check_circuit(c), std::invalid_argument);
    c.gates = {OracleGate{Color::red, 3, 0, 1}};
    EXPECT_THROW(check_circuit(c), std::invalid_argument);
    c.gates = {WorkspaceGate{{0}, {1, 1, 0, 1}}};
    EXPECT_THROW(check_circuit(c), std::invalid_argument);
    c.gates = {hadamard(0)};
    EXPECT_NO_THROW(check_circuit(c));
}
