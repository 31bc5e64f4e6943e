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

/// Gates and circuits with dense state-vector application. Gate matrices are
/// written down in closed form (never by numerical exponentiation). Rotation
/// convention: R_i(theta) = exp(+i theta sigma_i / 2).

#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "maxent/qstate.hpp"

#include "json.hpp"

namespace maxent {

struct Gate {
    std::string name;
    int arity = 1;
    int local_dim = 2;
    Mat matrix;                   ///< side local_dim^arity
    std::vector<double> params;

    double unitarity_defect() const {
        Mat u = matrix.adjoint() * matrix;
        return (u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    }

    Gate dagger() const {
        Gate g = *this;
        g.matrix = matrix.adjoint();
        if (!g.name.empty() && g.name.back() == '+')
            g.name.pop_back();
        else
            g.name += '+';
        return g;
    }
};

struct Step {
    Gate gate;
    std::vector<int> targets;
};

struct Circuit {
    int n_sites = 0;
    int local_dim = 2;
    std::vector<Step> steps;

    void add(Gate g, std::vector<int> targets) {
        if (static_cast<int>(targets.size()) != g.arity) throw DimensionError("Circuit::add: target count != arity");
        if (g.local_dim != local_dim) throw DimensionError("Circuit::add: gate local_dim mismatch");
        std::set<int> uniq(targets.begin(), targets.end());
        if (uniq.size() != targets.size()) throw DimensionError("Circuit::add: repeated target");
        for (int t : targets)
            if (t < 0 || t >= n_sites) throw DimensionError("Circuit::add: target out of range");
        steps.push_back({std::move(g), std::move(targets)});
    }

    Circuit inverse() const {
        Circuit inv;
        inv.n_sites = n_sites;
        inv.local_dim = local_dim;
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) inv.steps.push_back({it->gate.dagger(), it->targets});
        return inv;
    }
};

/// Applies a k-site gate in place. Amplitude gathering follows the big-endian
/// site order of StateVector.
inline void apply_gate(StateVector& psi, const Gate& g, const std::vector<int>& targets) {
    const int d = psi.local_dim();
    const int n = psi.n_sites();
    const int k = g.arity;
    if (g.local_dim != d) throw DimensionError("apply_gate: local_dim mismatch");
    if (static_cast<int>(targets.size()) != k) throw DimensionError("apply_gate: target count != arity");
    for (int t : targets)
        if (t < 0 || t >= n) throw DimensionError("apply_gate: target out of range");

    std::vector<long> stride(k);
    for (int i = 0; i < k; ++i) stride[i] = static_cast<long>(ipow(d, n - 1 - targets[i]));

    const long dk = static_cast<long>(ipow(d, k));
    const long dim = psi.dim();

    // Offsets of all target-digit combinations, gate-index ordered.
    std::vector<long> offs(dk, 0);
    for (long gidx = 0; gidx < dk; ++gidx) {
        long rem = gidx;
        for (int i = k - 1; i >= 0; --i) {
            offs[gidx] += static_cast<long>(rem % d) * stride[i];
            rem /= d;
        }
    }

    Vec scratch(dk);
    Vec& a = psi.amplitudes();
    for (long base = 0; base < dim; ++base) {
        bool zeroed = true;
        for (int i = 0; i < k && zeroed; ++i)
            if ((base / stride[i]) % d != 0) zeroed = false;
        if (!zeroed) continue;
        for (long gidx = 0; gidx < dk; ++gidx) scratch(gidx) = a(base + offs[gidx]);
        Vec out = g.matrix * scratch;
        for (long gidx = 0; gidx < dk; ++gidx) a(base + offs[gidx]) = out(gidx);
    }
}

inline StateVector apply(const Circuit& c, StateVector psi) {
    if (psi.n_sites() != c.n_sites || psi.local_dim() != c.local_dim)
        throw DimensionError("apply: circuit/state dimension mismatch");
    for (const auto& s : c.steps) apply_gate(psi, s.gate, s.targets);
    return psi;
}

/// Full d^n x d^n operator of a gate on given targets (test oracle and the
/// backbone of matrix-level checks).
inline Mat lift(const Gate& g, const std::vector<int>& targets, int n_sites) {
    const int d = g.local_dim;
    const long dim = static_cast<long>(ipow(d, n_sites));
    Mat full = Mat::Zero(dim, dim);
    const int k = g.arity;
    std::vector<long> stride(k);
    for (int i = 0; i < k; ++i) stride[i] = static_cast<long>(ipow(d, n_sites - 1 - targets[i]));
    const long dk = static_cast<long>(ipow(d, k));
    std::vector<long> offs(dk, 0);
    for (long gidx = 0; gidx < dk; ++gidx) {
        long rem = gidx;
        for (int i = k - 1; i >= 0; --i) {
            offs[gidx] += static_cast<long>(rem % d) * stride[i];
            rem /= d;
        }
    }
    for (long base = 0; base < dim; ++base) {
        bool zeroed = true;
        for (int i = 0; i < k && zeroed; ++i)
            if ((base / stride[i]) % d != 0) zeroed = false;
        if (!zeroed) continue;
        for (long r = 0; r < dk; ++r)
            for (long ccol = 0; ccol < dk; ++ccol) full(base + offs[r], base + offs[ccol]) = g.matrix(r, ccol);
    }
    return full;
}

inline Mat unitary_of(const Circuit& c) {
    const long dim = static_cast<long>(ipow(c.local_dim, c.n_sites));
    Mat u = Mat::Identity(dim, dim);
    for (const auto& s : c.steps) u = lift(s.gate, s.targets, c.n_sites) * u;
    return u;
}

// ---------------------------------------------------------------------------
// Gate catalog
// ---------------------------------------------------------------------------

namespace gates {

inline Gate make(const std::string& name, int arity, int d, Mat m, std::vector<double> params = {}) {
    return Gate{name, arity, d, std::move(m), std::move(params)};
}

inline Gate identity(int d = 2) { return make("I", 1, d, Mat::Identity(d, d)); }

inline Gate x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return make("X", 1, 2, m);
}

inline Gate y() {
    Mat m(2, 2);
    m << 0, cdouble(0, -1), cdouble(0, 1), 0;
    return make("Y", 1, 2, m);
}

inline Gate z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return make("Z", 1, 2, m);
}

inline Gate h() {
    Mat m(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return make("H", 1, 2, m);
}

inline Gate ph(double phi) {
    Mat m(2, 2);
    m << 1, 0, 0, std::polar(1.0, phi);
    return make("Ph", 1, 2, m, {phi});
}

inline Gate s() { Gate g = ph(kPi / 2); g.name = "S"; g.params.clear(); return g; }
inline Gate t() { Gate g = ph(kPi / 4); g.name = "T"; g.params.clear(); return g; }

inline Gate rx(double theta) {
    Mat m(2, 2);
    double c = std::cos(theta / 2), sn = std::sin(theta / 2);
    m << c, cdouble(0, sn), cdouble(0, sn), c;
    return make("Rx", 1, 2, m, {theta});
}

inline Gate ry(double theta) {
    Mat m(2, 2);
    double c = std::cos(theta / 2), sn = std::sin(theta / 2);
    m << c, sn, -sn, c;
    return make("Ry", 1, 2, m, {theta});
}

inline Gate rz(double theta) {
    Mat m(2, 2);
    m << std::polar(1.0, theta / 2), 0, 0, std::polar(1.0, -theta / 2);
    return make("Rz", 1, 2, m, {theta});
}

inline Gate cnot() {
    Mat m = Mat::Identity(4, 4);
    m(2, 2) = m(3, 3) = 0;
    m(2, 3) = m(3, 2) = 1;
    return make("CNOT", 2, 2, m);
}

inline Gate cz() {
    Mat m = Mat::Identity(4, 4);
    m(3, 3) = -1;
    return make("CZ", 2, 2, m);
}

inline Gate cph(double phi) {
    Mat m = Mat::Identity(4, 4);
    m(3, 3) = std::polar(1.0, phi);
    return make("CPh", 2, 2, m, {phi});
}

inline Gate swap() {
    Mat m = Mat::Identity(4, 4);
    m(1, 1) = m(2, 2) = 0;
    m(1, 2) = m(2, 1) = 1;
    return make("SWAP", 2, 2, m);
}

/// SWAP followed by CZ: commutes fermionic modes under Jordan-Wigner.
inline Gate fswap() {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = -1;
    return make("fSWAP", 2, 2, m);
}

inline Gate ccnot() {
    Mat m = Mat::Identity(8, 8);
    m(6, 6) = m(7, 7) = 0;
    m(6, 7) = m(7, 6) = 1;
    return make("CCNOT", 3, 2, m);
}

/// Approximate Toffoli; equals CCNOT except CCNOT_a|101> = -|101>.
inline Gate ccnot_a() {
    Gate g = ccnot();
    g.name = "CCNOTa";
    g.matrix(5, 5) = -1;
    return g;
}

/// Approximate Toffoli; equals CCNOT except CCNOT_b|100> = -|100>.
inline Gate ccnot_b() {
    Gate g = ccnot();
    g.name = "CCNOTb";
    g.matrix(4, 4) = -1;
    return g;
}

/// Qudit Fourier gate, entries omega^{kl}/sqrt(d); equals H for d=2.
inline Gate fourier(int d) {
    if (d < 2) throw ParameterError("fourier: d >= 2 required");
    Mat m(d, d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) m(k, l) = std::polar(1.0 / std::sqrt(double(d)), 2.0 * kPi * k * l / d);
    return make("F", 1, d, m, {double(d)});
}

/// Generalized CZ, phase omega^{kl} on |k l>.
inline Gate generalized_cz(int d) {
    if (d < 2) throw ParameterError("generalized_cz: d >= 2 required");
    Mat m = Mat::Zero(d * d, d * d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) m(k * d + l, k * d + l) = std::polar(1.0, 2.0 * kPi * k * l / d);
    return make("GCZ", 2, d, m, {double(d)});
}

/// Generalized CZ raised to an integer weight (graph edges with weight > 1).
inline Gate generalized_cz_pow(int d, int w) {
    Gate g = generalized_cz(d);
    Mat m = Mat::Identity(d * d, d * d);
    for (int i = 0; i < w; ++i) m = g.matrix * m;
    return make("GCZ^" + std::to_string(w), 2, d, m, {double(d), double(w)});
}

/// Fourier-transform building block with twiddle phase 2 pi k / n.
inline Gate fourier_block(int k, int n) {
    if (k < 0 || k >= n) throw ParameterError("fourier_block: need 0 <= k < n");
    cdouble w = std::polar(1.0, 2.0 * kPi * k / n);
    double s = 1.0 / std::sqrt(2.0);
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = s;
    m(1, 2) = s * w;
    m(2, 1) = s;
    m(2, 2) = -s * w;
    m(3, 3) = -w;
    return make("Fk", 2, 2, m, {double(k), double(n)});
}

inline double bogoliubov_angle(int k, int n, double J, double gamma, double lambda) {
    double num = J * gamma * std::sin(2.0 * kPi * k / n);
    double den = J * std::cos(2.0 * kPi * k / n) + lambda;
    if (num == 0.0) return 0.0;
    return 2.0 * std::atan2(num, den);
}

/// Bogoliubov pair-rotation block; identity when gamma = 0.
inline Gate bogoliubov_block(int k, int n, double J, double gamma, double lambda) {
    if (k <= -n / 2 || k > n / 2) throw ParameterError("bogoliubov_block: mode index out of range");
    double th = bogoliubov_angle(k, n, J, gamma, lambda);
    Mat m = Mat::Identity(4, 4);
    m(0, 0) = std::cos(th / 2);
    m(3, 3) = std::cos(th / 2);
    m(0, 3) = cdouble(0, std::sin(th / 2));
    m(3, 0) = cdouble(0, std::sin(th / 2));
    return make("Bk", 2, 2, m, {double(k), double(n), J, gamma, lambda});
}

/// Fermionic FFT butterfly consistent with top-first Jordan-Wigner ordering:
/// top wire in carries the even-half mode e_k, bottom the odd-half o_k;
/// outputs are b_k = (e_k + w^k o_k)/sqrt2 on top and b_{k+n/2} below.
inline Gate fft_butterfly(int k, int n) {
    if (k < 0 || k >= n) throw ParameterError("fft_butterfly: need 0 <= k < n");
    cdouble w = std::polar(1.0, 2.0 * kPi * k / n);
    double s = 1.0 / std::sqrt(2.0);
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = -w * s;
    m(1, 2) = s;
    m(2, 1) = w * s;
    m(2, 2) = s;
    m(3, 3) = -w;
    return make("FFTb", 2, 2, m, {double(k), double(n)});
}

/// Two-mode pair rotation with explicit angle (the Bogoliubov stage of the
/// disentangling circuit uses this with its own angle convention).
inline Gate pair_rotation(double theta) {
    Mat m = Mat::Identity(4, 4);
    m(0, 0) = std::cos(theta / 2);
    m(3, 3) = std::cos(theta / 2);
    m(0, 3) = cdouble(0, std::sin(theta / 2));
    m(3, 0) = cdouble(0, std::sin(theta / 2));
    return make("PairRot", 2, 2, m, {theta});
}

/// Qutrit controlled adder |i>|j> -> |i>|i+j mod 3> as a native qudit gate.
inline Gate c3_adder_qutrit() {
    Mat m = Mat::Zero(9, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i * 3 + (i + j) % 3, i * 3 + j) = 1;
    return make("C3", 2, 3, m);
}

/// Raw-matrix gate (serialized entry-wise).
inline Gate raw(const std::string& name, int arity, int d, Mat m) { return make(name, arity, d, std::move(m)); }

}  // namespace gates

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

/// ZYZ factors of U = e^{i delta} Rz(alpha) Ry(theta) Rz(beta).
struct ZYZ {
    double delta, alpha, theta, beta;
};

inline ZYZ zyz_decompose(const Mat& u) {
    if (u.rows() != 2 || u.cols() != 2) throw DimensionError("zyz_decompose: need 2x2");
    if ((u.adjoint() * u - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10)
        throw ParameterError("zyz_decompose: input is not unitary");
    cdouble det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    double delta = std::arg(det) / 2.0;
    Mat v = std::polar(1.0, -delta) * u;  // SU(2): [[a, b], [-conj(b), conj(a)]]
    cdouble a = v(0, 0), b = v(0, 1);
    double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
    double half_sum = 0.0, half_diff = 0.0;
    if (std::abs(a) > 1e-14) half_sum = std::arg(a);
    if (std::abs(b) > 1e-14) half_diff = std::arg(b);
    if (std::abs(a) <= 1e-14) half_sum = half_diff;   // alpha+beta unconstrained
    if (std::abs(b) <= 1e-14) half_diff = 0.0;        // alpha-beta unconstrained
    return {delta, half_sum + half_diff, theta, half_sum - half_diff};
}

/// Controlled-U on two qubits (control 0, target 1) from the ABC lemma:
/// U = e^{i delta} A X B X C with A B C = I.
struct ControlledUnitary {
    Circuit circuit;  ///< steps: C, CNOT, B, CNOT, A, Ph(delta) on control
    Mat A, B, C;
};

inline ControlledUnitary decompose_controlled_unitary(const Mat& u) {
    ZYZ f = zyz_decompose(u);
    Mat A = gates::rz(f.alpha).matrix * gates::ry(f.theta / 2).matrix;
    Mat B = gates::ry(-f.theta / 2).matrix * gates::rz(-(f.alpha + f.beta) / 2).matrix;
    Mat C = gates::rz((f.beta - f.alpha) / 2).matrix;
    ControlledUnitary out;
    out.A = A;
    out.B = B;
    out.C = C;
    out.circuit.n_sites = 2;
    out.circuit.local_dim = 2;
    out.circuit.add(gates::raw("C", 1, 2, C), {1});
    out.circuit.add(gates::cnot(), {0, 1});
    out.circuit.add(gates::raw("B", 1, 2, B), {1});
    out.circuit.add(gates::cnot(), {0, 1});
    out.circuit.add(gates::raw("A", 1, 2, A), {1});
    out.circuit.add(gates::ph(f.delta), {0});
    return out;
}

/// Three flavors of the Toffoli as explicit circuits on qubits (0,1 controls,
/// 2 target): the exact decomposition and the two sign-approximate variants.
struct ToffoliVariants {
    Circuit exact, a, b;
};

inline ToffoliVariants toffoli_variants() {
    using namespace gates;
    ToffoliVariants out;
    for (Circuit* c : {&out.exact, &out.a, &out.b}) {
        c->n_sites = 3;
        c->local_dim = 2;
    }
    // Exact: standard T-depth decomposition with six CNOTs.
    Circuit& e = out.exact;
    e.add(h(), {2});
    e.add(cnot(), {1, 2});
    e.add(t().dagger(), {2});
    e.add(cnot(), {0, 2});
    e.add(t(), {2});
    e.add(cnot(), {1, 2});
    e.add(t().dagger(), {2});
    e.add(cnot(), {0, 2});
    e.add(t(), {1});
    e.add(t(), {2});
    e.add(cnot(), {0, 1});
    e.add(h(), {2});
    e.add(t(), {0});
    e.add(t().dagger(), {1});
    e.add(cnot(), {0, 1});
    // Variant a: CZ ladder conjugated by Ry rotations, sign -1 on |101>.
    Circuit& a = out.a;
    a.add(ry(-3 * kPi / 4), {2});
    a.add(cz(), {1, 2});
    a.add(ry(3 * kPi / 4), {2});
    a.add(cz(), {0, 2});
    a.add(ry(-3 * kPi / 4), {2});
    a.add(cz(), {1, 2});
    a.add(ry(3 * kPi / 4), {2});
    // Variant b: CNOT ladder conjugated by Ry(+-pi/4), sign -1 on |100>.
    Circuit& b = out.b;
    b.add(ry(kPi / 4), {2});
    b.add(cnot(), {1, 2});
    b.add(ry(kPi / 4), {2});
    b.add(cnot(), {0, 2});
    b.add(ry(-kPi / 4), {2});
    b.add(cnot(), {1, 2});
    b.add(ry(-kPi / 4), {2});
    return out;
}

// ---------------------------------------------------------------------------
// Qudit-on-qubit encodings
// ---------------------------------------------------------------------------

/// Binary map |k>_d onto ceil(log2 d) qubits; kets beyond d-1 form the
/// invalid subspace that verifiers project out.
struct QuditEncoding {
    int qudit_dim;
    int qubits_per_qudit;

    explicit QuditEncoding(int d) : qudit_dim(d) {
        if (d < 2) throw ParameterError("QuditEncoding: d >= 2 required");
        qubits_per_qudit = 1;
        while ((1 << qubits_per_qudit) < d) ++qubits_per_qudit;
    }

    /// Embeds an n-qudit state into n*m qubits.
    StateVector embed(const StateVector& psi) const {
        if (psi.local_dim() != qudit_dim) throw DimensionError("QuditEncoding::embed: dim mismatch");
        int n = psi.n_sites();
        int m = qubits_per_qudit;
        StateVector out(n * m, 2);
        out.amplitudes().setZero();
        for (long i = 0; i < psi.dim(); ++i) {
            auto dig = psi.digits_of(i);
            long qidx = 0;
            for (int s = 0; s < n; ++s)
                for (int bbit = m - 1; bbit >= 0; --bbit) qidx = qidx * 2 + ((dig[s] >> bbit) & 1);
            out.amplitudes()(qidx) = psi.amp(i);
        }
        return out;
    }

    /// Extracts the encoded qudit state; weight outside the valid subspace is
    /// reported through *leakage when requested.
    StateVector extract(const StateVector& qubits, int n_qudits, double* leakage = nullptr) const {
        int m = qubits_per_qudit;
        if (qubits.n_sites() != n_qudits * m || qubits.local_dim() != 2)
            throw DimensionError("QuditEncoding::extract: dim mismatch");
        StateVector out(n_qudits, qudit_dim);
        out.amplitudes().setZero();
        double valid = 0.0;
        for (long q = 0; q < qubits.dim(); ++q) {
            auto bits = qubits.digits_of(q);
            bool ok = true;
            long idx = 0;
            for (int s = 0; s < n_qudits && ok; ++s) {
                int v = 0;
                for (int bbit = 0; bbit < m; ++bbit) v = v * 2 + bits[s * m + bbit];
                if (v >= qudit_dim) ok = false;
                idx = idx * qudit_dim + v;
            }
            if (ok) {
                out.amplitudes()(idx) = qubits.amp(q);
                valid += std::norm(qubits.amp(q));
            }
        }
        if (leakage) *leakage = 1.0 - valid;
        return out;
    }
};

enum class ToffoliVariant { exact, a, b };

/// Qutrit controlled adder compiled onto 4 qubits: control pair (0,1), target
/// pair (2,3). Each control sector is a CNOT followed by two Toffolis; the
/// variant-a build needs trailing CZ corrections to cancel its stray signs.
/// On the invalid |11> kets the circuit acts as whatever unitary the gate
/// pattern produces; only unitarity is guaranteed there, and verifiers
/// project that subspace out.
inline Circuit c3_adder(const QuditEncoding& enc, ToffoliVariant variant = ToffoliVariant::exact) {
    if (enc.qudit_dim != 3) throw DimensionError("c3_adder: encoding must be for d=3");
    using namespace gates;
    Gate tof = variant == ToffoliVariant::exact ? ccnot() : (variant == ToffoliVariant::a ? ccnot_a() : ccnot_b());
    Circuit c;
    c.n_sites = 4;
    c.local_dim = 2;
    // control |01> (value 1): +1 on the target pair
    c.add(cnot(), {1, 2});
    c.add(tof, {1, 2, 3});
    c.add(tof, {1, 3, 2});
    // control |10> (value 2): +2 on the target pair
    c.add(cnot(), {0, 3});
    c.add(tof, {0, 3, 2});
    c.add(tof, {0, 2, 3});
    if (variant == ToffoliVariant::a) {
        c.add(cz(), {1, 2});
        c.add(cz(), {0, 3});
    }
    return c;
}

// ---------------------------------------------------------------------------
// JSON serialization: {n_sites, local_dim, steps:[{name, params, targets}]}
// ---------------------------------------------------------------------------

namespace detail {

inline Gate gate_from_name(const std::string& name, const std::vector<double>& params, int d) {
    using namespace gates;
    if (name == "I") return identity(d);
    if (name == "X") return x();
    if (name == "Y") return y();
    if (name == "Z") return z();
    if (name == "H") return h();
    if (name == "S") return s();
    if (name == "S+") return s().dagger();
    if (name == "T") return t();
    if (name == "T+") return t().dagger();
    if (name == "Ph") return ph(params.at(0));
    if (name == "Rx") return rx(params.at(0));
    if (name == "Ry") return ry(params.at(0));
    if (name == "Rz") return rz(params.at(0));
    if (name == "CNOT") return cnot();
    if (name == "CZ") return cz();
    if (name == "CPh") return cph(params.at(0));
    if (name == "SWAP") return swap();
    if (name == "fSWAP") return fswap();
    if (name == "CCNOT") return ccnot();
    if (name == "CCNOTa") return ccnot_a();
    if (name == "CCNOTb") return ccnot_b();
    if (name == "F") return fourier(static_cast<int>(params.at(0)));
    if (name == "GCZ") return generalized_cz(static_cast<int>(params.at(0)));
    if (name == "Fk") return fourier_block(static_cast<int>(params.at(0)), static_cast<int>(params.at(1)));
    if (name == "Bk")
        return bogoliubov_block(static_cast<int>(params.at(0)), static_cast<int>(params.at(1)), params.at(2),
                                params.at(3), params.at(4));
    if (name == "FFTb") return fft_butterfly(static_cast<int>(params.at(0)), static_cast<int>(params.at(1)));
    if (name == "PairRot") return pair_rotation(params.at(0));
    if (name == "C3") return c3_adder_qutrit();
    throw ParameterError("gate_from_name: unknown gate " + name);
}

}  // namespace detail

inline nlohmann::json circuit_to_json(const Circuit& c) {
    nlohmann::json j;
    j["n_sites"] = c.n_sites;
    j["local_dim"] = c.local_dim;
    j["steps"] = nlohmann::json::array();
    for (const auto& s : c.steps) {
        nlohmann::json js;
        bool named = true;
        try {
            Gate probe = detail::gate_from_name(s.gate.name, s.gate.params, s.gate.local_dim);
            named = (probe.matrix - s.gate.matrix).cwiseAbs().maxCoeff() < 1e-14;
        } catch (const std::exception&) {
            named = false;
        }
        if (named) {
            js["name"] = s.gate.name;
            js["params"] = s.gate.params;
        } else {
            // Raw gates round-trip through flattened re/im entries.
            js["name"] = "raw:" + s.gate.name;
            std::vector<double> flat;
            flat.push_back(s.gate.arity);
            for (long r = 0; r < s.gate.matrix.rows(); ++r)
                for (long cc = 0; cc < s.gate.matrix.cols(); ++cc) {
                    flat.push_back(s.gate.matrix(r, cc).real());
                    flat.push_back(s.gate.matrix(r, cc).imag());
                }
            js["params"] = flat;
        }
        js["targets"] = s.targets;
        j["steps"].push_back(js);
    }
    return j;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
    Circuit c;
    c.n_sites = j.at("n_sites").get<int>();
    c.local_dim = j.at("local_dim").get<int>();
    for (const auto& js : j.at("steps")) {
        std::string name = js.at("name").get<std::string>();
        std::vector<double> params = js.at("params").get<std::vector<double>>();
        std::vector<int> targets = js.at("targets").get<std::vector<int>>();
        if (name.rfind("raw:", 0) == 0) {
            int arity = static_cast<int>(params.at(0));
            long side = static_cast<long>(ipow(c.local_dim, arity));
            Mat m(side, side);
            std::size_t p = 1;
            for (long r = 0; r < side; ++r)
                for (long cc = 0; cc < side; ++cc) {
                    m(r, cc) = cdouble(params.at(p), params.at(p + 1));
                    p += 2;
                }
            c.add(gates::raw(name.substr(4), arity, c.local_dim, std::move(m)), targets);
        } else {
            c.add(detail::gate_from_name(name, params, c.local_dim), targets);
        }
    }
    return c;
}

}  // namespace maxent
