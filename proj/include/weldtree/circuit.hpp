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
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"
#include "weldtree/color.hpp"

namespace weldtree {

using Complex = std::complex<double>;

// XORs eta_c(register in) into register out when workspace bit control is 1.
struct OracleGate {
    Color color = Color::red;
    int control = 0;
    int in = 0;
    int out = 1;
};

// cos(theta) I + i sin(theta) SWAP on registers (j, k) when control is 1.
struct SwapRotationGate {
    double theta = 0.0;
    int control = 0;
    int j = 0;
    int k = 1;
};

struct EqualCheckGate {
    int j = 0;
    int k = 1;
    int target = 0;
};

struct NoEdgeCheckGate {
    int j = 0;
    int target = 0;
};

struct ZeroCheckGate {
    int j = 0;
    int target = 0;
};

// One- or two-qubit unitary on workspace bits, row-major. For two qubits the
// first listed qubit is the more significant basis index.
struct WorkspaceGate {
    std::vector<int> qubits;
    std::vector<Complex> matrix;
};

using Gate = std::variant<OracleGate, SwapRotationGate, EqualCheckGate, NoEdgeCheckGate, ZeroCheckGate, WorkspaceGate>;

struct Circuit {
    int registers = 1;
    int workspace = 1;
    std::vector<Gate> gates;

    size_t oracle_count() const {
        size_t k = 0;
        for (const Gate &g : gates) {
            k += std::holds_alternative<OracleGate>(g);
        }
        return k;
    }
};

inline bool is_unitary(const WorkspaceGate &g, double tol = 1e-12) {
    size_t d = size_t{1} << g.qubits.size();
    if (g.matrix.size() != d * d) {
        return false;
    }
    for (size_t a = 0; a < d; a++) {
        for (size_t b = 0; b < d; b++) {
            Complex dot = 0;
            for (size_t r = 0; r < d; r++) {
                dot += std::conj(g.matrix[r * d + a]) * g.matrix[r * d + b];
            }
            if (std::abs(dot - (a == b ? 1.0 : 0.0)) > tol) {
                return false;
            }
        }
    }
    return true;
}

// Throws std::invalid_argument describing the first malformed gate.
inline void check_circuit(const Circuit &c) {
    if (c.registers < 1 || c.workspace < 1 || c.workspace > 64) {
        throw std::invalid_argument("circuit needs >= 1 register and 1..64 workspace bits");
    }
    auto reg = [&](int r) {
        if (r < 0 || r >= c.registers) {
            throw std::invalid_argument("register index " + std::to_string(r) + " out of range");
        }
    };
    auto bit = [&](int b) {
        if (b < 0 || b >= c.workspace) {
            throw std::invalid_argument("workspace index " + std::to_string(b) + " out of range");
        }
    };
    auto distinct = [](int a, int b) {
        if (a == b) {
            throw std::invalid_argument("gate uses the same register twice");
        }
    };
    for (const Gate &g : c.gates) {
        std::visit(
            [&](const auto &x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, OracleGate>) {
                    bit(x.control), reg(x.in), reg(x.out), distinct(x.in, x.out);
                } else if constexpr (std::is_same_v<T, SwapRotationGate>) {
                    bit(x.control), reg(x.j), reg(x.k), distinct(x.j, x.k);
                } else if constexpr (std::is_same_v<T, EqualCheckGate>) {
                    reg(x.j), reg(x.k), bit(x.target), distinct(x.j, x.k);
                } else if constexpr (std::is_same_v<T, NoEdgeCheckGate> || std::is_same_v<T, ZeroCheckGate>) {
                    reg(x.j), bit(x.target);
                } else {
                    if (x.qubits.empty() || x.qubits.size() > 2) {
                        throw std::invalid_argument("workspace gate must act on 1 or 2 qubits");
                    }
                    for (int q : x.qubits) {
                        bit(q);
                    }
                    if (x.qubits.size() == 2) {
                        distinct(x.qubits[0], x.qubits[1]);
                    }
                    if (!is_unitary(x)) {
                        throw std::invalid_argument("workspace gate matrix is not unitary");
                    }
                }
            },
            g);
    }
}

inline WorkspaceGate single_qubit(int q, Complex a, Complex b, Complex c, Complex d) {
    return WorkspaceGate{{q}, {a, b, c, d}};
}

inline WorkspaceGate pauli_x(int q) { return single_qubit(q, 0, 1, 1, 0); }

inline WorkspaceGate hadamard(int q) {
    const double s = 1.0 / std::sqrt(2.0);
    return single_qubit(q, s, s, s, -s);
}

inline WorkspaceGate cnot(int control, int target) {
    return WorkspaceGate{{control, target}, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}};
}

inline nlohmann::json gate_to_json(const Gate &g) {
    return std::visit(
        [](const auto &x) -> nlohmann::json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, OracleGate>) {
                return {{"type", "oracle"}, {"color", color_name(x.color)}, {"control", x.control}, {"in", x.in},
                        {"out", x.out}};
            } else if constexpr (std::is_same_v<T, SwapRotationGate>) {
                return {{"type", "swap_rotation"}, {"theta", x.theta}, {"control", x.control}, {"j", x.j}, {"k", x.k}};
            } else if constexpr (std::is_same_v<T, EqualCheckGate>) {
                return {{"type", "equal_check"}, {"j", x.j}, {"k", x.k}, {"target", x.target}};
            } else if constexpr (std::is_same_v<T, NoEdgeCheckGate>) {
                return {{"type", "noedge_check"}, {"j", x.j}, {"target", x.target}};
            } else if constexpr (std::is_same_v<T, ZeroCheckGate>) {
                return {{"type", "zero_check"}, {"j", x.j}, {"target", x.target}};
            } else {
                nlohmann::json m = nlohmann::json::array();
                for (Complex z : x.matrix) {
                    m.push_back({z.real(), z.imag()});
                }
                return {{"type", "workspace_unitary"}, {"qubits", x.qubits}, {"matrix", m}};
            }
        },
        g);
}

inline Gate gate_from_json(const nlohmann::json &j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "oracle") {
        return OracleGate{
            parse_color(j.at("color").get<std::string>()), j.at("control").get<int>(), j.at("in").get<int>(),
            j.at("out").get<int>()};
    }
    if (type == "swap_rotation") {
        return SwapRotationGate{
            j.at("theta").get<double>(), j.at("control").get<int>(), j.at("j").get<int>(), j.at("k").get<int>()};
    }
    if (type == "equal_check") {
        return EqualCheckGate{j.at("j").get<int>(), j.at("k").get<int>(), j.at("target").get<int>()};
    }
    if (type == "noedge_check") {
        return NoEdgeCheckGate{j.at("j").get<int>(), j.at("target").get<int>()};
    }
    if (type == "zero_check") {
        return ZeroCheckGate{j.at("j").get<int>(), j.at("target").get<int>()};
    }
    if (type == "workspace_unitary") {
        WorkspaceGate w;
        w.qubits = j.at("qubits").get<std::vector<int>>();
        for (const auto &z : j.at("matrix")) {
            w.matrix.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
        }
        return w;
    }
    throw std::invalid_argument("unknown gate type '" + type + "'");
}

inline nlohmann::json circuit_to_json(const Circuit &c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate &g : c.gates) {
        gates.push_back(gate_to_json(g));
    }
    return {{"format", "weldtree-circuit/1"}, {"registers", c.registers}, {"workspace", c.workspace}, {"gates", gates}};
}

inline Circuit circuit_from_json(const nlohmann::json &j) {
    Circuit c;
    c.registers = j.at("registers").get<int>();
    c.workspace = j.at("workspace").get<int>();
    for (const auto &g : j.at("gates")) {
        c.gates.push_back(gate_from_json(g));
    }
    check_circuit(c);
    return c;
}

}  // namespace weldtree
