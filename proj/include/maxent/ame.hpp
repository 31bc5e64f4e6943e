// Copyright 2026 The maxent workbench authors
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

/// Graph states, the catalog of circuits generating absolutely maximally
/// entangled states, AME certification over all floor(n/2)-site reductions,
/// and the per-gate majorization ledger.

#pragma once

#include <numeric>
#include <optional>

#include "maxent/qcircuit.hpp"

namespace maxent {
namespace ame {

struct Graph {
    int n_vertices = 0;
    std::vector<std::vector<int>> adjacency;  ///< symmetric, zero diagonal, entries mod d

    static Graph empty(int n) {
        Graph g;
        g.n_vertices = n;
        g.adjacency.assign(n, std::vector<int>(n, 0));
        return g;
    }

    void add_edge(int i, int j, int weight = 1) {
        if (i == j) throw ParameterError("Graph: no self loops");
        adjacency.at(i).at(j) = weight;
        adjacency.at(j).at(i) = weight;
    }

    void validate(int d) const {
        for (int i = 0; i < n_vertices; ++i) {
            if (adjacency[i][i] != 0) throw ParameterError("Graph: nonzero diagonal");
            for (int j = 0; j < n_vertices; ++j) {
                if (adjacency[i][j] != adjacency[j][i]) throw ParameterError("Graph: adjacency not symmetric");
                if (adjacency[i][j] < 0 || adjacency[i][j] >= d) throw ParameterError("Graph: weight out of range");
            }
        }
    }
};

/// Circuit preparing the graph state: F_d on every site, then one CZ per
/// unit of edge weight (each application is one entangling ledger step).
inline Circuit graph_state_circuit(const Graph& g, int d) {
    g.validate(d);
    Circuit c;
    c.n_sites = g.n_vertices;
    c.local_dim = d;
    for (int i = 0; i < g.n_vertices; ++i) c.add(gates::fourier(d), {i});
    for (int i = 0; i < g.n_vertices; ++i)
        for (int j = i + 1; j < g.n_vertices; ++j)
            for (int w = 0; w < g.adjacency[i][j]; ++w) c.add(gates::generalized_cz(d), {i, j});
    return c;
}

inline StateVector graph_state(const Graph& g, int d) {
    return apply(graph_state_circuit(g, d), StateVector(g.n_vertices, d));
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

enum class CatalogEntry {
    ame2d,            ///< Bell pair graph
    ame3d,            ///< GHZ-class path graph
    ame52,            ///< pentagon, d = 2
    ame5d,            ///< pentagon, general d
    ame6d,            ///< hexagon plus long diagonals
    ame4d,            ///< four vertices with one doubled edge, prime d >= 3
    ame44_qubits,     ///< eight-qubit ring grouped into four ququart parties
    ame43_minimal,    ///< minimal-support AME(4,3): 2 Fourier + 5 adders
    ame43_optimized,  ///< minimal-support AME(4,3): 2 Fourier + 4 adders
};

/// Ordered edge list (with weights) for a catalog graph; the order fixes the
/// entangling-step sequence the majorization ledger sees.
struct OrderedGraph {
    int n_vertices;
    std::vector<std::tuple<int, int, int>> edges;  ///< (i, j, weight)

    Graph graph() const {
        Graph g = Graph::empty(n_vertices);
        for (auto [i, j, w] : edges) g.add_edge(i, j, w);
        return g;
    }
};

inline OrderedGraph pentagon() {
    OrderedGraph g{5, {}};
    for (int i = 0; i < 5; ++i) g.edges.emplace_back(i, (i + 1) % 5, 1);
    return g;
}

/// Six-vertex graph generating AME(6,d): the hexagon ring followed by the
/// skew chords (0,4), (1,3), (2,5).
inline OrderedGraph hexagon_chords() {
    OrderedGraph g{6, {}};
    for (int i = 0; i < 6; ++i) g.edges.emplace_back(i, (i + 1) % 6, 1);
    g.edges.emplace_back(0, 4, 1);
    g.edges.emplace_back(1, 3, 1);
    g.edges.emplace_back(2, 5, 1);
    return g;
}

/// Four-vertex graph generating AME(4,d) for prime d >= 3: a cycle with one
/// doubled edge (five CZ applications).
inline OrderedGraph four_vertex_ame() {
    OrderedGraph g{4, {}};
    g.edges.emplace_back(0, 1, 1);
    g.edges.emplace_back(1, 3, 2);
    g.edges.emplace_back(2, 3, 1);
    g.edges.emplace_back(0, 2, 1);
    return g;
}

inline Circuit ordered_graph_circuit(const OrderedGraph& og, int d) {
    og.graph().validate(d);
    Circuit c;
    c.n_sites = og.n_vertices;
    c.local_dim = d;
    for (int i = 0; i < og.n_vertices; ++i) c.add(gates::fourier(d), {i});
    for (auto [i, j, w] : og.edges)
        for (int rep = 0; rep < w; ++rep) c.add(gates::generalized_cz(d), {i, j});
    return c;
}

/// Eight-qubit ring whose party grouping {01|23|45|67} carries the AME(4,4)
/// entanglement; ring order and gate sequence follow the circuit layout.
inline Circuit ame44_qubit_circuit() {
    Circuit c;
    c.n_sites = 8;
    c.local_dim = 2;
    for (int q = 0; q < 8; ++q) c.add(gates::h(), {q});
    const std::vector<std::pair<int, int>> edges = {{1, 2}, {2, 5}, {5, 7}, {3, 7}, {0, 3}, {0, 4}, {4, 6}, {1, 6}};
    for (auto [a, b] : edges) c.add(gates::cz(), {a, b});
    return c;
}

/// Minimal-support AME(4,3) on native qutrits: Fourier on the two source
/// sites then controlled adders. The five-adder layout is the unoptimized
/// one; the four-adder layout is the majorizing variant.
inline Circuit ame43_circuit(bool optimized) {
    Circuit c;
    c.n_sites = 4;
    c.local_dim = 3;
    auto adder = gates::c3_adder_qutrit();
    if (!optimized) {
        c.add(gates::fourier(3), {2});
        c.add(gates::fourier(3), {3});
        c.add(adder, {3, 1});
        c.add(adder, {3, 0});
        c.add(adder, {2, 1});
        c.add(adder, {2, 0});
        c.add(adder, {2, 0});
    } else {
        c.add(gates::fourier(3), {0});
        c.add(gates::fourier(3), {1});
        c.add(adder, {1, 2});
        c.add(adder, {0, 1});
        c.add(adder, {2, 3});
        c.add(adder, {1, 2});
    }
    return c;
}

inline bool is_prime(int d) {
    if (d < 2) return false;
    for (int q = 2; q * q <= d; ++q)
        if (d % q == 0) return false;
    return true;
}

/// Catalog accessor. AME(4,2) does not exist and is rejected.
inline Circuit ame_catalog(CatalogEntry entry, int d = 2) {
    switch (entry) {
        case CatalogEntry::ame2d: {
            Graph g = Graph::empty(2);
            g.add_edge(0, 1);
            return graph_state_circuit(g, d);
        }
        case CatalogEntry::ame3d: {
            Graph g = Graph::empty(3);
            g.add_edge(0, 1);
            g.add_edge(1, 2);
            return graph_state_circuit(g, d);
        }
        case CatalogEntry::ame52: return ordered_graph_circuit(pentagon(), 2);
        case CatalogEntry::ame5d: return ordered_graph_circuit(pentagon(), d);
        case CatalogEntry::ame6d: return ordered_graph_circuit(hexagon_chords(), d);
        case CatalogEntry::ame4d:
            if (d == 2) throw NonexistenceError("ame_catalog: AME(4,2) does not exist");
            if (!is_prime(d)) throw ParameterError("ame_catalog: the four-vertex graph needs prime d >= 3");
            return ordered_graph_circuit(four_vertex_ame(), d);
        case CatalogEntry::ame44_qubits: return ame44_qubit_circuit();
        case CatalogEntry::ame43_minimal: return ame43_circuit(false);
        case CatalogEntry::ame43_optimized: return ame43_circuit(true);
    }
    throw ParameterError("ame_catalog: unknown entry");
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

struct BipartitionReport {
    std::vector<int> sites;
    double entropy = 0.0;       ///< log_d units
    double max_eigen_dev = 0.0; ///< max |eigenvalue - d^{-floor(n/2)}|
};

struct AmeReport {
    bool is_ame = false;
    int n = 0, d = 0;
    double tolerance = 1e-9;
    std::vector<BipartitionReport> bipartitions;
};

namespace detail {

inline void subsets_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

/// Checks every floor(n/2)-site reduction against the maximally mixed
/// spectrum.
inline AmeReport verify_ame(const StateVector& state, double tolerance = 1e-9) {
    AmeReport report;
    report.n = state.n_sites();
    report.d = state.local_dim();
    report.tolerance = tolerance;
    const int k = report.n / 2;
    const double uniform = 1.0 / double(ipow(report.d, k));
    report.is_ame = true;
    detail::subsets_of_size(report.n, k, [&](const std::vector<int>& keep) {
        auto rho = partial_trace(state, keep);
        RVec ev = rho.eigenvalues();
        BipartitionReport b;
        b.sites = keep;
        b.entropy = entropy_from_spectrum(ev, report.d);
        b.max_eigen_dev = (ev.array() - uniform).abs().maxCoeff();
        if (b.max_eigen_dev > tolerance) report.is_ame = false;
        report.bipartitions.push_back(std::move(b));
    });
    return report;
}

/// Party-grouped check for the AME(4,4)-via-qubits state: entropies of the
/// three party-aligned 4|4 splits, in log2 units (target 4).
struct PartyBipartitionReport {
    std::vector<int> sites;
    double entropy_log2 = 0.0;
};

inline std::vector<PartyBipartitionReport> ame44_bipartition_check(const StateVector& state) {
    if (state.n_sites() != 8 || state.local_dim() != 2)
        throw DimensionError("ame44_bipartition_check: expected an 8-qubit state");
    std::vector<std::vector<int>> splits = {{0, 1, 2, 3}, {0, 1, 4, 5}, {0, 1, 6, 7}};  // AB, AC, AD
    std::vector<PartyBipartitionReport> out;
    for (const auto& keep : splits) {
        auto rho = partial_trace(state, keep);
        out.push_back({keep, entropy_from_spectrum(rho.eigenvalues(), 2.0)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Majorization audit
// ---------------------------------------------------------------------------

struct LedgerRow {
    int step = 0;                       ///< 0 = after local preparation
    std::vector<int> sites;             ///< kept side of the bipartition
    std::vector<double> spectrum;       ///< sorted descending
};

struct MajorizationAudit {
    bool majorizes_throughout = true;
    std::vector<LedgerRow> ledger;
    std::vector<int> failing_steps;     ///< steps where some bipartition fails

    /// Karamata consequences evaluated on the recorded spectra.
    bool entropy_monotone(double log_base) const;
    bool purity_antitone() const;
};

namespace detail {

/// Bipartitions to audit: all floor(n/2)-subsets containing site 0 (each
/// unordered split once), or the caller-supplied party splits.
inline std::vector<std::vector<int>> audit_bipartitions(int n_sites,
                                                        const std::vector<std::vector<int>>& party_splits) {
    if (!party_splits.empty()) return party_splits;
    std::vector<std::vector<int>> out;
    int k = n_sites / 2;
    subsets_of_size(n_sites, k, [&](const std::vector<int>& keep) {
        if (2 * k == n_sites && keep[0] != 0) return;  // even split: count each once
        out.push_back(keep);
    });
    return out;
}

}  // namespace detail

/// Runs the circuit, recording sorted reduced spectra after the local
/// preparation layer and after every entangling gate; the verdict is true iff
/// every bipartition's spectrum majorizes the next step's.
inline MajorizationAudit majorization_audit(const Circuit& circuit, const StateVector& initial,
                                            const std::vector<std::vector<int>>& party_splits = {},
                                            double tolerance = 1e-10) {
    MajorizationAudit audit;
    auto splits = detail::audit_bipartitions(circuit.n_sites, party_splits);

    StateVector psi = initial;
    std::size_t gate_index = 0;
    // apply all leading local gates first (step 0 snapshot)
    while (gate_index < circuit.steps.size() && circuit.steps[gate_index].targets.size() < 2) {
        apply_gate(psi, circuit.steps[gate_index].gate, circuit.steps[gate_index].targets);
        ++gate_index;
    }
    int step = 0;
    std::vector<std::vector<double>> previous(splits.size());
    auto snapshot = [&]() {
        for (std::size_t s = 0; s < splits.size(); ++s) {
            auto ev = partial_trace(psi, splits[s]).eigenvalues();
            std::vector<double> spec = to_std(ev);
            std::sort(spec.begin(), spec.end(), std::greater<>());
            audit.ledger.push_back({step, splits[s], spec});
            if (step > 0) {
                if (!majorizes(previous[s], spec, tolerance)) {
                    audit.majorizes_throughout = false;
                    if (audit.failing_steps.empty() || audit.failing_steps.back() != step)
                        audit.failing_steps.push_back(step);
                }
            }
            previous[s] = std::move(spec);
        }
    };
    snapshot();
    for (; gate_index < circuit.steps.size(); ++gate_index) {
        apply_gate(psi, circuit.steps[gate_index].gate, circuit.steps[gate_index].targets);
        if (circuit.steps[gate_index].targets.size() < 2) continue;  // local gates are free
        ++step;
        snapshot();
    }
    return audit;
}

inline bool MajorizationAudit::entropy_monotone(double log_base) const {
    std::map<std::vector<int>, std::pair<int, double>> last;  // sites -> (step, entropy)
    for (const auto& row : ledger) {
        double s = 0.0;
        for (double v : row.spectrum)
            if (v > 1e-14) s -= v * std::log(v);
        s /= std::log(log_base);
        auto it = last.find(row.sites);
        if (it != last.end() && s < it->second.second - 1e-9) return false;
        last[row.sites] = {row.step, s};
    }
    return true;
}

inline bool MajorizationAudit::purity_antitone() const {
    std::map<std::vector<int>, double> last;
    for (const auto& row : ledger) {
        double p = 0.0;
        for (double v : row.spectrum) p += v * v;
        auto it = last.find(row.sites);
        if (it != last.end() && p > it->second + 1e-9) return false;
        last[row.sites] = p;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Qubit compilation of the qudit catalog circuits
// ---------------------------------------------------------------------------

/// U_d^in layer: prepares F_d|0> (as a state) on each encoded qudit.
inline void add_init_layer(Circuit& c, int d, int n_qudits) {
    QuditEncoding enc(d);
    int m = enc.qubits_per_qudit;
    if (d == 2) {
        for (int q = 0; q < n_qudits; ++q) c.add(gates::h(), {q});
        return;
    }
    if (d == 3) {
        double theta = -2.0 * std::acos(1.0 / std::sqrt(3.0));
        for (int q = 0; q < n_qudits; ++q) {
            int base = q * m;
            c.add(gates::ry(theta), {base});
            // controlled-H from the U2-type decomposition
            c.add(gates::ry(-kPi / 4), {base + 1});
            c.add(gates::cnot(), {base, base + 1});
            c.add(gates::ry(kPi / 4), {base + 1});
            c.add(gates::cnot(), {base + 1, base});
        }
        return;
    }
    if (d == 4) {
        for (int q = 0; q < n_qudits; ++q) {
            c.add(gates::h(), {q * m});
            c.add(gates::h(), {q * m + 1});
        }
        return;
    }
    throw ParameterError("add_init_layer: qubit compilation provided for d in {2, 3, 4}");
}

/// Generalized CZ between two encoded qudits, as controlled-phase layers.
inline void add_cz_layer(Circuit& c, int d, int qudit_a, int qudit_b) {
    QuditEncoding enc(d);
    int m = enc.qubits_per_qudit;
    int a0 = qudit_a * m, b0 = qudit_b * m;
    if (d == 2) {
        c.add(gates::cz(), {a0, b0});
        return;
    }
    if (d == 3) {
        int a1 = a0 + 1, b1 = b0 + 1;
        c.add(gates::cph(2 * kPi / 3), {a1, b1});
        c.add(gates::cph(2 * kPi / 3), {a0, b0});
        c.add(gates::cph(-2 * kPi / 3), {a0, b1});
        c.add(gates::cph(-2 * kPi / 3), {a1, b0});
        return;
    }
    if (d == 4) {
        int a1 = a0 + 1, b1 = b0 + 1;
        c.add(gates::cph(kPi / 2), {a1, b1});  // controlled-S
        c.add(gates::cz(), {a1, b0});
        c.add(gates::cz(), {a0, b1});
        return;
    }
    throw ParameterError("add_cz_layer: qubit compilation provided for d in {2, 3, 4}");
}

/// Compiles a native-qudit graph circuit (F_d + CZ layers) onto qubits.
inline Circuit compile_graph_to_qubits(const Graph& g, int d) {
    g.validate(d);
    QuditEncoding enc(d);
    Circuit c;
    c.n_sites = g.n_vertices * enc.qubits_per_qudit;
    c.local_dim = 2;
    add_init_layer(c, d, g.n_vertices);
    for (int i = 0; i < g.n_vertices; ++i)
        for (int j = i + 1; j < g.n_vertices; ++j)
            for (int w = 0; w < g.adjacency[i][j]; ++w) add_cz_layer(c, d, i, j);
    return c;
}

/// Compiles the minimal-support AME(4,3) circuits onto 8 qubits with the
/// chosen Toffoli flavor inside each adder.
inline Circuit compile_ame43_to_qubits(bool optimized, ToffoliVariant variant = ToffoliVariant::exact) {
    QuditEncoding enc(3);
    Circuit qutrits = ame43_circuit(optimized);
    Circuit c;
    c.n_sites = 8;
    c.local_dim = 2;
    for (const auto& s : qutrits.steps) {
        if (s.gate.name == "F") {
            // prepare only: the source qutrits start in |0>, so the init layer
            // stands in for the Fourier gate
            int q = s.targets[0];
            double theta = -2.0 * std::acos(1.0 / std::sqrt(3.0));
            c.add(gates::ry(theta), {2 * q});
            c.add(gates::ry(-kPi / 4), {2 * q + 1});
            c.add(gates::cnot(), {2 * q, 2 * q + 1});
            c.add(gates::ry(kPi / 4), {2 * q + 1});
            c.add(gates::cnot(), {2 * q + 1, 2 * q});
        } else if (s.gate.name == "C3") {
            Circuit adder = c3_adder(enc, variant);
            int ctrl = s.targets[0], tgt = s.targets[1];
            std::vector<int> map = {2 * ctrl, 2 * ctrl + 1, 2 * tgt, 2 * tgt + 1};
            for (const auto& a : adder.steps) {
                std::vector<int> t;
                for (int v : a.targets) t.push_back(map[v]);
                c.add(a.gate, t);
            }
        } else {
            throw ParameterError("compile_ame43_to_qubits: unexpected gate " + s.gate.name);
        }
    }
    return c;
}

}  // namespace ame
}  // namespace maxent
