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
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "weldtree/circuit.hpp"
#include "weldtree/rng.hpp"

namespace weldtree {

struct RandomCircuitOptions {
    int registers = 6;
    int gates = 6;
    int workspace = 2;
    double oracle_fraction = 0.6;
};

template <typename Rng>
WorkspaceGate random_single_qubit(int q, Rng &rng) {
    const double theta = uniform_unit(rng) * std::numbers::pi / 2;
    const double alpha = uniform_unit(rng) * 2 * std::numbers::pi;
    const double beta = uniform_unit(rng) * 2 * std::numbers::pi;
    Complex ea = std::polar(1.0, alpha), eb = std::polar(1.0, beta);
    return single_qubit(
        q, ea * std::cos(theta), eb * std::sin(theta), -std::conj(eb) * std::sin(theta),
        std::conj(ea) * std::cos(theta));
}

// Random gate sequence over the genuine gate set. The first gate puts
// workspace bit 0 into superposition so controlled gates branch. Oracle
// inputs favor registers that may already hold a label. The result is meant
// to run under the gadget policy with rootedness enforcement.
template <typename Rng>
Circuit random_circuit(const RandomCircuitOptions &opt, Rng &rng) {
    Circuit c;
    c.registers = opt.registers;
    c.workspace = opt.workspace;
    std::vector<int> touched{0};
    auto any_register = [&] { return static_cast<int>(uniform_below(rng, opt.registers)); };
    auto any_bit = [&] { return static_cast<int>(uniform_below(rng, opt.workspace)); };
    auto other_register = [&](int j) {
        int k = static_cast<int>(uniform_below(rng, opt.registers - 1));
        return k >= j ? k + 1 : k;
    };
    if (opt.gates > 0) {
        c.gates.push_back(random_single_qubit(0, rng));
    }
    while (static_cast<int>(c.gates.size()) < opt.gates) {
        double r = uniform_unit(rng);
        if (r < opt.oracle_fraction) {
            int j = touched[uniform_below(rng, touched.size())];
            int k = other_register(j);
            Color col = color_from_index(static_cast<int>(uniform_below(rng, 3)));
            c.gates.push_back(OracleGate{col, any_bit(), j, k});
            if (std::find(touched.begin(), touched.end(), k) == touched.end()) {
                touched.push_back(k);
            }
            continue;
        }
        int kind = static_cast<int>(uniform_below(rng, 6));
        int j = touched[uniform_below(rng, touched.size())];
        switch (kind) {
            case 0: {
                int k = other_register(j);
                c.gates.push_back(SwapRotationGate{uniform_unit(rng) * std::numbers::pi, any_bit(), j, k});
                if (std::find(touched.begin(), touched.end(), k) == touched.end()) {
                    touched.push_back(k);
                }
                break;
            }
            case 1:
                c.gates.push_back(random_single_qubit(any_bit(), rng));
                break;
            case 2:
                if (opt.workspace >= 2) {
                    int a = any_bit();
                    int b = (a + 1 + static_cast<int>(uniform_below(rng, opt.workspace - 1))) % opt.workspace;
                    c.gates.push_back(cnot(a, b));
                } else {
                    c.gates.push_back(hadamard(0));
                }
                break;
            case 3:
                c.gates.push_back(EqualCheckGate{j, other_register(j), any_bit()});
                break;
            case 4:
                c.gates.push_back(NoEdgeCheckGate{j, any_bit()});
                break;
            default:
                c.gates.push_back(ZeroCheckGate{any_register(), any_bit()});
                break;
        }
    }
    return c;
}

// Walk in superposition: step i puts workspace bit i into |+> and writes
// the neighbor of register i along one of two random distinct colors into
// register i + 1, the color chosen by that bit.
template <typename Rng>
Circuit branching_walk_circuit(int steps, Rng &rng) {
    Circuit c;
    c.registers = steps + 1;
    c.workspace = std::max(1, steps);
    for (int i = 0; i < steps; i++) {
        Color a = color_from_index(static_cast<int>(uniform_below(rng, 3)));
        Color b = color_from_index((color_index(a) + 1 + static_cast<int>(uniform_below(rng, 2))) % 3);
        c.gates.push_back(hadamard(i));
        c.gates.push_back(OracleGate{a, i, i, i + 1});
        c.gates.push_back(pauli_x(i));
        c.gates.push_back(OracleGate{b, i, i, i + 1});
        c.gates.push_back(pauli_x(i));
    }
    return c;
}

}  // namespace weldtree
