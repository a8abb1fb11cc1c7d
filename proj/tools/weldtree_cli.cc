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

// Command-line front end. Exit codes: 0 success, 1 assertion failure,
// 2 usage error, 3 internal defect.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "weldtree/weldtree.hpp"

using namespace weldtree;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kUsage = 2;
constexpr int kDefect = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AssertionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    uint64_t seed = 1;
    int workers = default_workers();
    std::string out;
};

struct GraphSource {
    int n = 3;
    std::string graph;
    bool permuted = false;
};

struct CircuitSource {
    std::string circuit;
    int registers = 6;
    int gates = 12;
    int workspace = 2;
    double oracle_fraction = 0.6;
    std::string policy = "gadget";
    bool unrooted = false;
};

void header(const Common &c, int n, long p_max) {
    std::fprintf(stderr, "# weldtree %s seed=%llu n=%d p_max=%ld\n", kVersion, (unsigned long long)c.seed, n, p_max);
}

json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw UsageError(path + ": " + e.what());
    }
}

// Writes to --out when given, else stdout.
void emit(const Common &c, const std::string &text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write " + c.out);
    }
    f << text;
}

void add_common(CLI::App *app, Common &c) {
    app->add_option("--seed", c.seed, "Master seed");
    app->add_option("--workers", c.workers, "Worker threads (default WELDTREE_WORKERS or hardware)")
        ->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "Output file (default stdout)");
}

void add_graph(CLI::App *app, GraphSource &g) {
    app->add_option("--n", g.n, "Tree height")->check(CLI::Range(1, kMaxHeight));
    app->add_option("--graph", g.graph, "Graph JSON instead of a generated graph");
}

void add_circuit(CLI::App *app, CircuitSource &c) {
    app->add_option("--circuit", c.circuit, "Circuit JSON instead of a random circuit");
    app->add_option("--registers", c.registers, "Random circuit registers")->check(CLI::Range(1, 64));
    app->add_option("--gates", c.gates, "Random circuit gate count")->check(CLI::Range(0, 32));
    app->add_option("--workspace", c.workspace, "Random circuit workspace qubits")->check(CLI::Range(1, 16));
    app->add_option("--oracle-fraction", c.oracle_fraction, "Random circuit oracle share")->check(CLI::Range(0.0, 1.0));
    app->add_option("--policy", c.policy, "Genuineness policy")->check(CLI::IsMember({"strict", "gadget"}));
    app->add_flag("--unrooted", c.unrooted, "Disable rootedness enforcement");
}

WeldedTree load_graph(const GraphSource &src, const Common &c) {
    WeldedTree g = [&] {
        if (src.graph.empty()) {
            return build_canonical(src.n, c.seed);
        }
        try {
            return graph_from_json(read_json(src.graph));
        } catch (const std::invalid_argument &e) {
            throw UsageError(src.graph + ": " + e.what());
        } catch (const json::exception &e) {
            throw UsageError(src.graph + ": " + e.what());
        }
    }();
    if (!g.valid()) {
        throw UsageError(src.graph + ": " + g.report().violations.front());
    }
    if (src.permuted) {
        auto rng = make_stream(c.seed, tags::kPermutation, 0);
        g = apply_permutation(g, sample_permutation(g, rng));
    }
    return g;
}

Circuit load_circuit(const CircuitSource &src, const Common &c) {
    if (src.circuit.empty()) {
        auto rng = make_stream(c.seed, tags::kCircuit, 0);
        return random_circuit({src.registers, src.gates, src.workspace, src.oracle_fraction}, rng);
    }
    try {
        Circuit circ = circuit_from_json(read_json(src.circuit));
        check_circuit(circ);
        return circ;
    } catch (const std::invalid_argument &e) {
        throw UsageError(src.circuit + ": " + e.what());
    } catch (const json::exception &e) {
        throw UsageError(src.circuit + ": " + e.what());
    }
}

SimulationOptions options(const CircuitSource &src) {
    SimulationOptions opt;
    opt.genuine = src.policy == "strict" ? GenuinePolicy::strict : GenuinePolicy::gadget;
    opt.enforce_rooted = !src.unrooted;
    return opt;
}

json state_to_json(const SparseState &s, int bits) {
    json configs = json::array();
    for (const auto &[x, a] : s) {
        json regs = json::array();
        for (uint64_t r : x.regs) {
            regs.push_back(to_hex(r, bits));
        }
        configs.push_back({{"registers", regs}, {"workspace", x.work}, {"re", a.real()}, {"im", a.imag()}});
    }
    return json{{"format", "weldtree-state/1"}, {"norm2", s.norm2()}, {"configs", configs}};
}

std::string join_hex(const std::vector<uint64_t> &labels, int bits) {
    std::string out;
    for (size_t k = 0; k < labels.size(); k++) {
        out += (k ? ";" : "") + to_hex(labels[k], bits);
    }
    return out;
}

std::string csv_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

int gen_graph(const Common &c, const GraphSource &src) {
    WeldedTree g = load_graph(src, c);
    header(c, g.n(), 0);
    emit(c, graph_to_json(g).dump(2) + "\n");
    return kOk;
}

int run_circuit(const Common &c, const GraphSource &gs, const CircuitSource &cs) {
    WeldedTree g = load_graph(gs, c);
    Circuit circ = load_circuit(cs, c);
    header(c, g.n(), static_cast<long>(circ.gates.size()));
    Oracle o(g);
    VertexSpace space(o);
    SparseState s = run_prefix(circ, circ.gates.size(), space, options(cs));
    emit(c, state_to_json(s, g.label_bits()).dump(2) + "\n");
    if (std::abs(s.norm2() - 1.0) > 1e-9) {
        throw AssertionFailure("state norm drifted to " + csv_double(s.norm2()));
    }
    return kOk;
}

int decompose(const Common &c, const GraphSource &gs, const CircuitSource &cs, double tol) {
    WeldedTree g = load_graph(gs, c);
    Circuit circ = load_circuit(cs, c);
    header(c, g.n(), static_cast<long>(circ.gates.size()));
    Oracle o(g);
    GoodBadSplit split = decompose_run(circ, o, options(cs));
    std::ostringstream out;
    write_split_csv(out, split);
    emit(c, out.str());
    std::fprintf(stderr, "# success_probability=%.17g max_residual=%.3g rooted=%d\n", split.success_probability,
                 split.max_residual(), split.rooted());
    if (split.max_residual() > tol || !split.rooted()) {
        throw AssertionFailure("decomposition residual " + csv_double(split.max_residual()) + " exceeds tolerance");
    }
    return kOk;
}

int simulate(const Common &c, const GraphSource &gs, const CircuitSource &cs, uint64_t runs) {
    WeldedTree g = load_graph(gs, c);
    Circuit circ = load_circuit(cs, c);
    header(c, g.n(), static_cast<long>(circ.gates.size()));
    Oracle o(g);
    Transcript t(circ, o.graph().root_missing_color(Side::left), options(cs));
    std::ostringstream out;
    out << "run,step,queries,total_queries,workspace,labels\n";
    for (uint64_t r = 0; r < runs; r++) {
        auto rng = make_stream(c.seed, tags::kClassicalSample, r);
        o.reset_meter();
        ClassicalRun run = simulate_classical(circ, o, rng, options(cs), &t);
        for (const ClassicalStep &s : run.steps) {
            out << r << ',' << s.step << ',' << s.queries << ',' << run.total_queries << ',' << s.sample.work << ','
                << join_hex(s.labels, g.label_bits()) << '\n';
        }
    }
    emit(c, out.str());
    return kOk;
}

// Reads {"format": "weldtree-subtree/1", "nodes": ["", "r", "rg", ...]}.
AddressSubtree load_subtree(const std::string &path) {
    json j = read_json(path);
    try {
        std::vector<Address> nodes;
        for (const auto &s : j.at("nodes")) {
            std::string name = s.get<std::string>();
            nodes.push_back(name.empty() ? Address::empty() : parse_address(name));
        }
        return AddressSubtree::make(std::move(nodes));
    } catch (const json::exception &e) {
        throw UsageError(path + ": " + e.what());
    } catch (const std::invalid_argument &e) {
        throw UsageError(path + ": " + e.what());
    }
}

int hardness(const Common &c, const GraphSource &gs, const std::string &mode, size_t length, uint64_t trials,
             const std::string &tree) {
    WeldedTree g = load_graph(gs, c);
    std::optional<AddressSubtree> fixed;
    if (!tree.empty()) {
        if (mode != "subtree") {
            throw UsageError("--tree needs --mode subtree");
        }
        fixed = load_subtree(tree);
        length = fixed->size();
    }
    header(c, g.n(), static_cast<long>(length));
    const Color missing = g.root_missing_color(Side::left);
    auto rng = make_stream(c.seed, tags::kTuple, 0);
    std::ostringstream out;
    bool pass = true;
    auto row = [&](const std::string &label, size_t i, const Estimate &e) {
        out << mode << ',' << g.n() << ',' << length << ',' << i << ',' << label << ',' << e.trials << ',' << e.hits
            << ',' << csv_double(e.frequency) << ',' << csv_double(e.interval.lo) << ','
            << csv_double(e.interval.hi) << ',' << csv_double(e.bound) << ',' << (e.pass ? "pass" : "fail") << '\n';
        pass = pass && e.pass;
    };
    out << "mode,n,length,i,tuple,trials,hits,frequency,wilson_lo,wilson_hi,bound,verdict\n";
    if (mode == "subtree") {
        std::function<AddressSubtree(std::mt19937_64 &)> sampler = [&](std::mt19937_64 &r) {
            return fixed ? *fixed : random_subtree(length, static_cast<int>(length), r);
        };
        row(fixed ? "fixed" : "random", 0, mc_exit_or_cycle(sampler, g, trials, c.seed, c.workers));
    } else {
        std::vector<Color> t = random_tuple(length, missing, rng);
        std::string name = to_string(Address::path(t));
        if (mode == "path") {
            row(name, 0, mc_exit_or_cycle(t, g, trials, c.seed, c.workers));
        } else {
            if (g.n() % 3 != 0) {
                throw UsageError("desirable mode needs --n divisible by 3");
            }
            for (const DesirableRow &r : mc_desirable(t, g, trials, c.seed, c.workers)) {
                row(name, r.i, r.estimate);
            }
        }
    }
    emit(c, out.str());
    if (!pass) {
        throw AssertionFailure("an estimate exceeded its bound");
    }
    return kOk;
}

int walk_demo(const Common &c, int n, double tmax, double dt, double every, bool full, uint64_t queries,
              uint64_t trials) {
    header(c, n, 0);
    WalkHamiltonian h = column_hamiltonian(n);
    uint32_t start = 0, target = static_cast<uint32_t>(2 * n + 1);
    std::optional<WeldedTree> g;
    if (full) {
        g = build_canonical(n, c.seed);
        h = adjacency_hamiltonian(*g);
        start = g->entrance(), target = g->exit();
    }
    std::ostringstream out;
    out << "t,p_exit\n";
    for (const auto &[t, p] : walk_series(h, start, target, tmax, dt, every)) {
        out << csv_double(t) << ',' << csv_double(p) << '\n';
    }
    emit(c, out.str());
    if (trials > 0) {
        double hit = classical_baseline(build_canonical(n, c.seed), queries, trials, c.seed, c.workers);
        std::fprintf(stderr, "# classical_baseline queries=%llu trials=%llu p_exit=%.6g\n",
                     (unsigned long long)queries, (unsigned long long)trials, hit);
    }
    return kOk;
}

int verify_lemmas(const Common &c, int n, int circuits, int gates, double tol) {
    header(c, n, gates);
    WeldedTree g = build_canonical(n, c.seed);
    Oracle o(g);
    SimulationOptions opt;
    opt.genuine = GenuinePolicy::gadget;
    std::ostringstream out;
    out << "circuit,gates,success_probability,max_identity,transcript,norm_match,conservation,rooted,"
           "classical_runs,verdict\n";
    int failed = 0;
    for (int k = 0; k < circuits; k++) {
        auto rng = make_stream(c.seed, tags::kCircuit, static_cast<uint64_t>(k));
        Circuit circ = random_circuit({6, 1 + k % gates, 2, 0.6}, rng);
        GoodBadSplit s = decompose_run(circ, o, opt);
        double identity = 0, transcript = 0, norm = 0, conservation = 0;
        for (const StepReport &r : s.reports) {
            identity = std::max(identity, r.max_identity());
            transcript = std::max(transcript, r.transcript);
            norm = std::max(norm, r.norm_match);
            conservation = std::max({conservation, std::abs(r.norm_phi), std::abs(r.norm_psi)});
        }
        Transcript t(circ, g.root_missing_color(Side::left), opt);
        const int runs = 20;
        for (int r = 0; r < runs; r++) {
            auto srng = make_stream(c.seed, tags::kClassicalSample, static_cast<uint64_t>(k * runs + r));
            simulate_classical(circ, o, srng, opt, &t);
        }
        bool ok = std::max({identity, transcript, norm, conservation}) <= tol && s.rooted();
        failed += !ok;
        out << k << ',' << circ.gates.size() << ',' << csv_double(s.success_probability) << ','
            << csv_double(identity) << ',' << csv_double(transcript) << ',' << csv_double(norm) << ','
            << csv_double(conservation) << ',' << s.rooted() << ',' << runs << ',' << (ok ? "pass" : "fail") << '\n';
    }
    emit(c, out.str());
    std::fprintf(stderr, "# %d of %d circuits failed\n", failed, circuits);
    if (failed > 0) {
        throw AssertionFailure("residuals exceeded tolerance");
    }
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Welded-tree query-complexity experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));
    Common common;
    GraphSource gs;
    CircuitSource cs;
    double tol = 1e-9;
    uint64_t runs = 100, trials = 10000, baseline_queries = 100, baseline_trials = 0;
    size_t length = 24;
    std::string mode = "path", tree;
    int walk_n = 10, circuits = 50, max_gates = 12;
    double tmax = 100, dt = 0.0025, every = 0.5;
    bool full = false;

    auto *gen = app.add_subcommand("gen-graph", "Build a welded tree and write it as JSON");
    add_common(gen, common);
    gen->add_option("--n", gs.n, "Tree height")->check(CLI::Range(1, kMaxHeight));
    gen->add_flag("--permuted", gs.permuted, "Apply a random color-preserving permutation");

    auto *runc = app.add_subcommand("run-circuit", "Simulate a circuit and write the final state");
    add_common(runc, common);
    add_graph(runc, gs);
    add_circuit(runc, cs);

    auto *dec = app.add_subcommand("decompose", "Good/bad/ugly split per step as CSV");
    add_common(dec, common);
    add_graph(dec, gs);
    add_circuit(dec, cs);
    dec->add_option("--tol", tol, "Residual tolerance");

    auto *sim = app.add_subcommand("simulate-classical", "Classical transcript sampling as CSV");
    add_common(sim, common);
    add_graph(sim, gs);
    add_circuit(sim, cs);
    sim->add_option("--runs", runs, "Independent runs");

    auto *hard = app.add_subcommand("hardness-mc", "Monte Carlo embedding estimates as CSV");
    add_common(hard, common);
    add_graph(hard, gs);
    hard->add_option("--mode", mode, "path, desirable or subtree")
        ->check(CLI::IsMember({"path", "desirable", "subtree"}));
    hard->add_option("--length", length, "Tuple length or subtree size")->check(CLI::Range(1, 4096));
    hard->add_option("--trials", trials, "Sigma trials")->check(CLI::PositiveNumber);
    hard->add_option("--tree", tree, "Fixed subtree JSON for subtree mode");

    auto *walk = app.add_subcommand("walk-demo", "Exit probability of the continuous-time walk as CSV");
    add_common(walk, common);
    walk->add_option("--n", walk_n, "Tree height")->check(CLI::Range(1, kMaxHeight));
    walk->add_option("--tmax", tmax, "Final time")->check(CLI::NonNegativeNumber);
    walk->add_option("--dt", dt, "Integrator step")->check(CLI::PositiveNumber);
    walk->add_option("--every", every, "Sampling interval")->check(CLI::PositiveNumber);
    walk->add_flag("--full", full, "Use the full graph instead of the column chain");
    walk->add_option("--baseline-queries", baseline_queries, "Classical baseline query budget");
    walk->add_option("--baseline-trials", baseline_trials, "Classical baseline trials (0 skips)");

    auto *verify = app.add_subcommand("verify-lemmas", "Residual checks over random circuits");
    add_common(verify, common);
    verify->add_option("--n", gs.n, "Tree height")->check(CLI::Range(1, kMaxHeight));
    verify->add_option("--circuits", circuits, "Number of circuits")->check(CLI::PositiveNumber);
    verify->add_option("--max-gates", max_gates, "Largest circuit size")->check(CLI::Range(1, 32));
    verify->add_option("--tol", tol, "Residual tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            return gen_graph(common, gs);
        }
        if (*runc) {
            return run_circuit(common, gs, cs);
        }
        if (*dec) {
            return decompose(common, gs, cs, tol);
        }
        if (*sim) {
            return simulate(common, gs, cs, runs);
        }
        if (*hard) {
            return hardness(common, gs, mode, length, trials, tree);
        }
        if (*walk) {
            return walk_demo(common, walk_n, tmax, dt, every, full, baseline_queries, baseline_trials);
        }
        if (*verify) {
            return verify_lemmas(common, gs.n, circuits, max_gates, tol);
        }
    } catch (const UsageError &e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const AssertionFailure &e) {
        std::fprintf(stderr, "assertion failed: %s\n", e.what());
        return kAssertion;
    } catch (const GenuinenessViolation &e) {
        std::fprintf(stderr, "assertion failed: %s\n", e.what());
        return kAssertion;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const std::logic_error &e) {
        std::fprintf(stderr, "assertion failed: %s\n", e.what());
        return kAssertion;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kDefect;
    }
    return kDefect;
}
