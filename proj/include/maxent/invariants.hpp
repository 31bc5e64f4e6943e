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

/// Polynomial entanglement invariants of two-, three- and four-qubit states:
/// HDet2 (concurrence/2), HDet3 (3-tangle) and the quartic invariants S, T
/// with HDet4 = S^3 - 27 T^2, plus the special-state catalog, spin-chain
/// sweeps (Ising, XXZ, Haldane-Shastry), thermal invariants and random-state
/// baselines.
///
/// The HDet chain works through nested discriminants: the 2-qubit
/// determinant becomes a quadratic P3(y) under c_ij -> b_ij0 + b_ij1 y, and
/// the discriminant of P3 becomes the quartic P4(x) under
/// b_ijk -> t_ijk0 + t_ijk1 x. S and T are read off the coefficients of
/// P4 = a0 x^4 + 4 a1 x^3 + 6 a2 x^2 + 4 a3 x + a4.

#pragma once

#include <array>
#include <random>

#include "maxent/optim.hpp"
#include "maxent/qstate.hpp"

namespace maxent {
namespace inv {

// ---------------------------------------------------------------------------
// Hyperdeterminants
// ---------------------------------------------------------------------------

/// |c00 c11 - c01 c10| of a normalized two-qubit state; equals concurrence/2.
inline double hdet2(const StateVector& psi) {
    if (psi.n_sites() != 2 || psi.local_dim() != 2) throw DimensionError("hdet2: need a two-qubit state");
    return std::abs(psi.amp(0) * psi.amp(3) - psi.amp(1) * psi.amp(2));
}

namespace detail {

/// Quadratic coefficients (A y^2 + B y + C) of P3 for eight 3-index
/// amplitudes b[ijk] (index = 4i + 2j + k).
struct P3Coeffs {
    cdouble A, B, C;
};

inline P3Coeffs p3_coeffs(const std::array<cdouble, 8>& b) {
    P3Coeffs p;
    p.A = b[1] * b[7] - b[3] * b[5];
    p.B = b[0] * b[7] + b[1] * b[6] - b[2] * b[5] - b[3] * b[4];
    p.C = b[0] * b[6] - b[2] * b[4];
    return p;
}

inline cdouble p3_discriminant(const std::array<cdouble, 8>& b) {
    P3Coeffs p = p3_coeffs(b);
    return p.B * p.B - 4.0 * p.A * p.C;
}

}  // namespace detail

/// 3-tangle of a normalized three-qubit state: 4 |disc(P3)|.
inline double hdet3(const StateVector& psi) {
    if (psi.n_sites() != 3 || psi.local_dim() != 2) throw DimensionError("hdet3: need a three-qubit state");
    std::array<cdouble, 8> b;
    for (int i = 0; i < 8; ++i) b[i] = psi.amp(i);
    return 4.0 * std::abs(detail::p3_discriminant(b));
}

/// Coefficients of P4(x) = a0 x^4 + 4 a1 x^3 + 6 a2 x^2 + 4 a3 x + a4.
struct QuarticForm {
    cdouble a0, a1, a2, a3, a4;

    cdouble evaluate(cdouble x) const {
        return a0 * x * x * x * x + 4.0 * a1 * x * x * x + 6.0 * a2 * x * x + 4.0 * a3 * x + a4;
    }
};

struct InvariantTriple {
    cdouble S, T, hdet4;
};

namespace detail {

inline cdouble p4_value(const StateVector& psi, cdouble x) {
    std::array<cdouble, 8> b;
    for (int i = 0; i < 8; ++i) b[i] = psi.amp(2 * i) + psi.amp(2 * i + 1) * x;
    return p3_discriminant(b);
}

}  // namespace detail

/// Quartic form via evaluation at x in {0, +-1, +-2} and a 5x5 Vandermonde
/// solve (the direct symbolic expansion lives in the test suite as an
/// independent oracle).
inline QuarticForm quartic_form(const StateVector& psi) {
    if (psi.n_sites() != 4 || psi.local_dim() != 2) throw DimensionError("quartic_form: need a four-qubit state");
    const std::array<double, 5> xs = {0.0, 1.0, -1.0, 2.0, -2.0};
    Eigen::Matrix<cdouble, 5, 5> vand;
    Eigen::Matrix<cdouble, 5, 1> rhs;
    for (int r = 0; r < 5; ++r) {
        double x = xs[r];
        vand(r, 0) = x * x * x * x;
        vand(r, 1) = 4.0 * x * x * x;
        vand(r, 2) = 6.0 * x * x;
        vand(r, 3) = 4.0 * x;
        vand(r, 4) = 1.0;
        rhs(r) = detail::p4_value(psi, x);
    }
    Eigen::Matrix<cdouble, 5, 1> sol = vand.fullPivLu().solve(rhs);
    return {sol(0), sol(1), sol(2), sol(3), sol(4)};
}

inline InvariantTriple invariants_from_quartic(const QuarticForm& q) {
    InvariantTriple t;
    t.S = 3.0 * q.a2 * q.a2 - 4.0 * q.a1 * q.a3 + q.a0 * q.a4;
    t.T = -q.a2 * q.a2 * q.a2 + 2.0 * q.a1 * q.a2 * q.a3 - q.a0 * q.a3 * q.a3 - q.a1 * q.a1 * q.a4 +
          q.a0 * q.a2 * q.a4;
    t.hdet4 = t.S * t.S * t.S - 27.0 * t.T * t.T;
    return t;
}

inline InvariantTriple invariants_st(const StateVector& psi) { return invariants_from_quartic(quartic_form(psi)); }

// ---------------------------------------------------------------------------
// Special states
// ---------------------------------------------------------------------------

namespace states {

inline StateVector from_terms(int n, const std::vector<std::pair<std::vector<int>, cdouble>>& terms) {
    StateVector s(n, 2);
    s.amplitudes().setZero();
    for (const auto& [digits, amp] : terms) s.amplitudes()(s.index_of(digits)) += amp;
    return s.normalize();
}

inline StateVector ghz(int n, int d = 2) {
    StateVector s(n, d);
    s.amplitudes().setZero();
    for (int k = 0; k < d; ++k) s.amplitudes()(s.index_of(std::vector<int>(n, k))) = 1.0;
    return s.normalize();
}

inline StateVector w4() {
    return from_terms(4, {{{0, 0, 0, 1}, 1}, {{0, 0, 1, 0}, 1}, {{0, 1, 0, 0}, 1}, {{1, 0, 0, 0}, 1}});
}

inline StateVector cluster1() {
    return from_terms(4, {{{0, 0, 0, 0}, 1}, {{0, 0, 1, 1}, 1}, {{1, 1, 0, 0}, 1}, {{1, 1, 1, 1}, -1}});
}

inline StateVector cluster2() {
    return from_terms(4, {{{0, 0, 0, 0}, 1}, {{0, 1, 1, 0}, 1}, {{1, 0, 0, 1}, 1}, {{1, 1, 1, 1}, -1}});
}

inline StateVector cluster3() {
    return from_terms(4, {{{0, 0, 0, 0}, 1}, {{0, 1, 0, 1}, 1}, {{1, 0, 1, 0}, 1}, {{1, 1, 1, 1}, -1}});
}

inline StateVector yc() {
    return from_terms(4, {{{0, 0, 0, 0}, 1},
                          {{0, 0, 1, 1}, -1},
                          {{0, 1, 0, 1}, -1},
                          {{0, 1, 1, 0}, 1},
                          {{1, 0, 0, 1}, 1},
                          {{1, 0, 1, 0}, 1},
                          {{1, 1, 0, 0}, 1},
                          {{1, 1, 1, 1}, 1}});
}

/// Numerically found maximizer of |HDet4|.
inline StateVector hd() {
    return from_terms(4, {{{1, 0, 0, 0}, 1},
                          {{0, 1, 0, 0}, 1},
                          {{0, 0, 1, 0}, 1},
                          {{0, 0, 0, 1}, 1},
                          {{1, 1, 1, 1}, std::sqrt(2.0)}});
}

/// Same invariants as |HD>, built on third roots of unity.
inline StateVector l_state() {
    cdouble w = std::polar(1.0, 2 * kPi / 3);
    cdouble w2 = w * w;
    return from_terms(4, {{{0, 0, 0, 0}, 1.0 + w},
                          {{1, 1, 1, 1}, 1.0 + w},
                          {{0, 0, 1, 1}, 1.0 - w},
                          {{1, 1, 0, 0}, 1.0 - w},
                          {{0, 1, 0, 1}, w2},
                          {{0, 1, 1, 0}, w2},
                          {{1, 0, 0, 1}, w2},
                          {{1, 0, 1, 0}, w2}});
}

inline StateVector g_abcd(cdouble a, cdouble b, cdouble c, cdouble d) {
    return from_terms(4, {{{0, 0, 0, 0}, (a + d) / 2.0},
                          {{1, 1, 1, 1}, (a + d) / 2.0},
                          {{0, 0, 1, 1}, (a - d) / 2.0},
                          {{1, 1, 0, 0}, (a - d) / 2.0},
                          {{0, 1, 0, 1}, (b + c) / 2.0},
                          {{1, 0, 1, 0}, (b + c) / 2.0},
                          {{0, 1, 1, 0}, (b - c) / 2.0},
                          {{1, 0, 0, 1}, (b - c) / 2.0}});
}

inline StateVector l_abc2(cdouble a, cdouble b, cdouble c) {
    return from_terms(4, {{{0, 0, 0, 0}, (a + b) / 2.0},
                          {{1, 1, 1, 1}, (a + b) / 2.0},
                          {{0, 0, 1, 1}, (a - b) / 2.0},
                          {{1, 1, 0, 0}, (a - b) / 2.0},
                          {{0, 1, 0, 1}, c},
                          {{1, 0, 1, 0}, c},
                          {{0, 1, 1, 0}, 1}});
}

inline StateVector l_a2b2(cdouble a, cdouble b) {
    return from_terms(4, {{{0, 0, 0, 0}, a},
                          {{1, 1, 1, 1}, a},
                          {{0, 1, 0, 1}, b},
                          {{1, 0, 1, 0}, b},
                          {{0, 1, 1, 0}, 1},
                          {{0, 0, 1, 1}, 1}});
}

inline StateVector l_a2_03(cdouble a) {
    return from_terms(4, {{{0, 0, 0, 0}, a}, {{1, 1, 1, 1}, a}, {{0, 0, 1, 1}, 1}, {{0, 1, 0, 1}, 1}, {{0, 1, 1, 0}, 1}});
}

}  // namespace states

/// Closed-form S, T, HDet4 of the G_abcd family, for the normalized ket.
inline InvariantTriple gabcd_invariants(cdouble a, cdouble b, cdouble c, cdouble d) {
    cdouble a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
    cdouble S = ((b2 - c2) * (b2 - c2) * (a2 - d2) * (a2 - d2) +
                 (a2 - b2) * (b2 - c2) * (a2 - d2) * (c2 - d2) +
                 (a2 - b2) * (a2 - b2) * (c2 - d2) * (c2 - d2)) /
                12.0;
    cdouble X = (a * c + b * d) * (a * c + b * d) + (a * b + c * d) * (a * b + c * d) -
                2.0 * (b * c + a * d) * (b * c + a * d);
    cdouble T = X *
                (X * X - 9.0 * (b - c) * (b - c) * (b + c) * (b + c) * (a - d) * (a - d) * (a + d) * (a + d)) /
                1728.0;
    cdouble H = ((a2 - b2) * (a2 - c2) * (b2 - c2) * (a2 - d2) * (b2 - d2) * (c2 - d2));
    H = H * H / 256.0;
    double nrm = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    double n4 = std::pow(nrm, 4), n6 = std::pow(nrm, 6), n12 = std::pow(nrm, 12);
    return {S / n4, T / n6, H / n12};
}

// ---------------------------------------------------------------------------
// Spin-chain eigensystems (n = 4)
// ---------------------------------------------------------------------------

inline Mat pauli(int which) {
    Mat m(2, 2);
    switch (which) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, cdouble(0, -1), cdouble(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

/// sigma_w on site i of an n-site chain.
inline Mat site_op(int which, int i, int n) {
    Mat m = Mat::Identity(1, 1);
    for (int s = 0; s < n; ++s) m = kron(m, s == i ? pauli(which) : pauli(0));
    return m;
}

/// Transverse Ising chain H = -J sum sx sx - lambda sum sz, periodic.
inline Mat ising_hamiltonian(double lambda, int n = 4, double J = 1.0) {
    long dim = static_cast<long>(ipow(2, n));
    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        h -= J * site_op(1, i, n) * site_op(1, (i + 1) % n, n);
        h -= lambda * site_op(3, i, n);
    }
    return h;
}

/// XXZ chain H = J sum (sx sx + sy sy + Delta sz sz), periodic.
inline Mat xxz_hamiltonian(double delta, int n = 4, double J = 1.0) {
    long dim = static_cast<long>(ipow(2, n));
    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        h += J * (site_op(1, i, n) * site_op(1, j, n) + site_op(2, i, n) * site_op(2, j, n) +
                  delta * site_op(3, i, n) * site_op(3, j, n));
    }
    return h;
}

/// Haldane-Shastry Hamiltonian (pi^2/n^2) sum_{i>j} S_i.S_j / sin^2(pi(i-j)/n).
inline Mat hs_hamiltonian(int n = 4) {
    long dim = static_cast<long>(ipow(2, n));
    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            double w = std::sin(kPi * (i - j) / n);
            double coupling = (kPi * kPi) / (n * n) / (w * w) / 4.0;  // S = sigma/2
            for (int axis = 1; axis <= 3; ++axis) h += coupling * site_op(axis, i, n) * site_op(axis, j, n);
        }
    return h;
}

struct Eigenstate {
    int level;       ///< family label, 0..15, ordered by energy on the labeled range
    double energy;
    StateVector state;
};

namespace detail {

inline StateVector unit(int n, const std::vector<std::pair<std::vector<int>, cdouble>>& terms) {
    return states::from_terms(n, terms);
}

/// Diagonalizes H restricted to the span of orthonormal basis columns.
inline std::vector<std::pair<double, StateVector>> sector_diagonalize(const Mat& h,
                                                                      const std::vector<StateVector>& basis) {
    int m = static_cast<int>(basis.size());
    Mat hb(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) hb(i, j) = basis[i].amplitudes().dot(h * basis[j].amplitudes());
    Eigen::SelfAdjointEigenSolver<Mat> es(hb);
    std::vector<std::pair<double, StateVector>> out;
    for (int k = 0; k < m; ++k) {
        Vec v = Vec::Zero(basis[0].dim());
        for (int i = 0; i < m; ++i) v += es.eigenvectors()(i, k) * basis[i].amplitudes();
        out.emplace_back(es.eigenvalues()(k), StateVector(basis[0].n_sites(), 2, v).normalized());
    }
    return out;
}

}  // namespace detail

/// The 16 Ising eigenstates with the canonical (analytic) bases inside the
/// degenerate clusters, so each level carries well-defined invariants.
/// Valid labeling range: 0 <= lambda <= 2/sqrt(3); the sector states remain
/// exact eigenstates beyond it (only the energy ordering changes).
inline std::vector<Eigenstate> ising_eigensystem(double lambda) {
    using detail::unit;
    Mat h = ising_hamiltonian(lambda);
    std::vector<Eigenstate> out(16, Eigenstate{0, 0.0, StateVector(4, 2)});

    // Even sector: |0000>, symmetrized two-flip pair states, |1111>.
    std::vector<StateVector> sectorA = {
        unit(4, {{{0, 0, 0, 0}, 1}}),
        unit(4, {{{0, 0, 1, 1}, 1}, {{0, 1, 1, 0}, 1}, {{1, 0, 0, 1}, 1}, {{1, 1, 0, 0}, 1}}),
        unit(4, {{{0, 1, 0, 1}, 1}, {{1, 0, 1, 0}, 1}}),
        unit(4, {{{1, 1, 1, 1}, 1}})};
    auto evA = detail::sector_diagonalize(h, sectorA);  // ascending: levels 0, 2, 13, 15
    out[0] = {0, evA[0].first, evA[0].second};
    out[2] = {2, evA[1].first, evA[1].second};
    out[13] = {13, evA[2].first, evA[2].second};
    out[15] = {15, evA[3].first, evA[3].second};

    // Odd sectors built on the symmetric/antisymmetric one-flip combinations.
    std::vector<StateVector> plus = {
        unit(4, {{{0, 0, 0, 1}, 1}, {{0, 0, 1, 0}, 1}, {{0, 1, 0, 0}, 1}, {{1, 0, 0, 0}, 1}}),
        unit(4, {{{1, 1, 0, 1}, 1}, {{1, 1, 1, 0}, 1}, {{0, 1, 1, 1}, 1}, {{1, 0, 1, 1}, 1}})};
    auto evP = detail::sector_diagonalize(h, plus);  // levels 1, 10
    out[1] = {1, evP[0].first, evP[0].second};
    out[10] = {10, evP[1].first, evP[1].second};

    std::vector<StateVector> minus = {
        unit(4, {{{0, 0, 0, 1}, 1}, {{0, 0, 1, 0}, -1}, {{0, 1, 0, 0}, 1}, {{1, 0, 0, 0}, -1}}),
        unit(4, {{{1, 1, 0, 1}, 1}, {{1, 1, 1, 0}, -1}, {{0, 1, 1, 1}, 1}, {{1, 0, 1, 1}, -1}})};
    auto evM = detail::sector_diagonalize(h, minus);  // levels 5, 14
    out[5] = {5, evM[0].first, evM[0].second};
    out[14] = {14, evM[1].first, evM[1].second};

    // Fixed eigenstates (lambda independent kets).
    out[3] = {3, -2 * lambda, unit(4, {{{0, 0, 1, 0}, 1}, {{1, 0, 0, 0}, -1}})};
    out[4] = {4, -2 * lambda, unit(4, {{{0, 0, 0, 1}, 1}, {{0, 1, 0, 0}, -1}})};
    out[6] = {6, 0.0, unit(4, {{{0, 0, 1, 1}, 1}, {{1, 1, 0, 0}, -1}})};
    out[7] = {7, 0.0, unit(4, {{{0, 0, 1, 1}, 1}, {{0, 1, 1, 0}, -1}})};
    out[8] = {8, 0.0, unit(4, {{{0, 0, 1, 1}, 1}, {{1, 0, 0, 1}, -1}})};
    out[9] = {9, 0.0, unit(4, {{{0, 1, 0, 1}, 1}, {{1, 0, 1, 0}, -1}})};
    out[11] = {11, 2 * lambda, unit(4, {{{1, 0, 1, 1}, 1}, {{1, 1, 1, 0}, -1}})};
    out[12] = {12, 2 * lambda, unit(4, {{{0, 1, 1, 1}, 1}, {{1, 1, 0, 1}, -1}})};
    return out;
}

/// XXZ eigensystem from the analytic table; labels are stable across
/// degeneracies and level crossings.
inline std::vector<Eigenstate> xxz_eigensystem(double delta) {
    using detail::unit;
    std::vector<Eigenstate> out;
    double root = std::sqrt(8.0 + delta * delta);

    auto psim_pair = [&](int sign, const std::vector<int>& pair_state) {
        // |Psi+->_{12}|ab>_{34} + |ab>_{12}|Psi+->_{34} shapes
        int a = pair_state[0], b = pair_state[1];
        return unit(4, {{{0, 1, a, b}, 1},
                        {{1, 0, a, b}, double(sign)},
                        {{a, b, 0, 1}, 1},
                        {{a, b, 1, 0}, double(sign)}});
    };

    out.push_back({0, -4.0, psim_pair(-1, {1, 1})});
    out.push_back({1, -4.0, psim_pair(-1, {0, 0})});
    out.push_back({2, 4.0, psim_pair(+1, {1, 1})});
    out.push_back({3, 4.0, psim_pair(+1, {0, 0})});
    // E = 0: six pair-factorized states plus the |0011>-|1100> singlet-like one
    out.push_back({4, 0.0, unit(4, {{{0, 1, 1, 1}, 1}, {{1, 1, 0, 1}, -1}})});  // |Psi->_13 |11>_24
    out.push_back({5, 0.0, unit(4, {{{1, 0, 1, 1}, 1}, {{1, 1, 1, 0}, -1}})});  // |11>_13 |Psi->_24
    out.push_back({6, 0.0, unit(4, {{{0, 1, 1, 0}, 1}, {{1, 1, 0, 0}, -1}})});  // |Psi->_13 |10>_24
    out.push_back({7, 0.0, unit(4, {{{1, 0, 0, 1}, 1}, {{1, 1, 0, 0}, -1}})});  // |10>_13 |Psi->_24
    out.push_back({8, 0.0, unit(4, {{{0, 0, 1, 0}, 1}, {{1, 0, 0, 0}, -1}})});  // |Psi->_13 |00>_24
    out.push_back({9, 0.0, unit(4, {{{0, 0, 0, 1}, 1}, {{0, 1, 0, 0}, -1}})});  // |00>_13 |Psi->_24
    out.push_back({10, 0.0, unit(4, {{{0, 0, 1, 1}, 1}, {{1, 1, 0, 0}, -1}})});
    out.push_back({11, -4.0 * delta, unit(4, {{{0, 1, 0, 1}, 1}, {{1, 0, 1, 0}, -1}})});
    out.push_back({12, 4.0 * delta, unit(4, {{{0, 0, 0, 0}, 1}})});
    out.push_back({13, 4.0 * delta, unit(4, {{{1, 1, 1, 1}, 1}})});
    for (int sgn : {-1, +1}) {
        // coefficient -(Delta + sgn*root)/2 pairs with energy -2(Delta + sgn*root)
        double coeff = -(delta + sgn * root) / 2.0;
        StateVector s = unit(4, {{{0, 0, 1, 1}, 1},
                                 {{0, 1, 1, 0}, 1},
                                 {{1, 1, 0, 0}, 1},
                                 {{1, 0, 0, 1}, 1},
                                 {{0, 1, 0, 1}, coeff},
                                 {{1, 0, 1, 0}, coeff}});
        out.push_back({sgn < 0 ? 14 : 15, -2.0 * (delta + sgn * root), s});
    }
    return out;
}

/// XXZ S_+- and T_+- closed forms; the minus branch is the ground state for
/// Delta > -1.
inline cdouble xxz_S(double delta, int sign) {
    double root = std::sqrt(8.0 + delta * delta);
    double p = delta + sign * root;
    double q = 4.0 - delta * (delta - sign * root);
    double r = 8.0 + delta * (delta + sign * root);
    return std::pow(p, 4) * q * q / (256.0 * 3.0 * std::pow(r, 4));
}

inline cdouble xxz_T(double delta, int sign) {
    double root = std::sqrt(8.0 + delta * delta);
    double p = delta + sign * root;
    double q = 4.0 - delta * (delta - sign * root);
    double r = 8.0 + delta * (delta + sign * root);
    return std::pow(p, 6) * q * q * q / (4096.0 * 27.0 * std::pow(r, 6));
}

// ---------------------------------------------------------------------------
// Haldane-Shastry wave functions
// ---------------------------------------------------------------------------

/// Generalized (alpha) and dimerized (delta) HS wave function on n = 4 sites,
/// built directly from the defining product over pair distances.
inline StateVector hs_state(double alpha, double dimer_delta = 0.0, int n = 4) {
    StateVector out(n, 2);
    out.amplitudes().setZero();
    std::vector<double> theta(n);
    for (int j = 0; j < n; ++j) {
        int site = j + 1;  // formulas index sites 1..n
        theta[j] = kPi / n * (site + dimer_delta * ((site % 2 == 0) ? 1.0 : -1.0));
    }
    // Log magnitudes first: at the dimer points two sites coincide and the
    // raw products overflow, so everything is referenced to the maximum.
    std::vector<double> logmags(out.dim(), -std::numeric_limits<double>::infinity());
    std::vector<double> phases(out.dim(), 0.0);
    double logmax = -std::numeric_limits<double>::infinity();
    for (long idx = 0; idx < out.dim(); ++idx) {
        auto digits = out.digits_of(idx);
        int total = 0;
        std::vector<int> s(n);
        for (int j = 0; j < n; ++j) {
            s[j] = digits[j] == 0 ? 1 : -1;
            total += s[j];
        }
        if (total != 0) continue;
        double logmag = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                double dist = std::abs(2.0 * std::sin(theta[i] - theta[j]));
                logmag += alpha * s[i] * s[j] * std::log(std::max(dist, 1e-300));
            }
        logmags[idx] = logmag;
        logmax = std::max(logmax, logmag);
        for (int j = 0; j < n; j += 2) phases[idx] += kPi / 2 * s[j];  // odd sites 1,3 are indices 0,2
    }
    for (long idx = 0; idx < out.dim(); ++idx)
        if (std::isfinite(logmags[idx]))
            out.amplitudes()(idx) = std::polar(std::exp(logmags[idx] - logmax), phases[idx]);
    return out.normalize();
}

inline cdouble hs_S(double alpha) {
    double p16 = std::pow(16.0, alpha);
    return std::pow(4.0, 4 * alpha - 3) * (p16 - 4.0) * (p16 - 4.0) / (3.0 * std::pow(2.0 + p16, 4));
}

inline cdouble hs_T(double alpha) {
    double p16 = std::pow(16.0, alpha);
    return -std::pow(8.0, 4 * alpha - 3) * std::pow(p16 - 4.0, 3) / (27.0 * std::pow(2.0 + p16, 6));
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class ChainModel { ising, xxz, haldane_shastry, hs_dimerized };

struct SweepRecord {
    double param   = 0.0;
    double param2  = 0.0;  ///< alpha for the dimerized sweep
    int level      = 0;
    double energy  = 0.0;
    cdouble S, T, hdet4;
};

inline std::vector<SweepRecord> chain_sweep(ChainModel model, const std::vector<double>& grid,
                                            double alpha_for_dimer = 0.25) {
    std::vector<SweepRecord> records;
    for (double p : grid) {
        switch (model) {
            case ChainModel::ising: {
                if (p < 0.0) throw ParameterError("chain_sweep: Ising grid requires lambda >= 0");
                for (const auto& es : ising_eigensystem(p)) {
                    auto t = invariants_st(es.state);
                    records.push_back({p, 0.0, es.level, es.energy, t.S, t.T, t.hdet4});
                }
                break;
            }
            case ChainModel::xxz: {
                for (const auto& es : xxz_eigensystem(p)) {
                    auto t = invariants_st(es.state);
                    records.push_back({p, 0.0, es.level, es.energy, t.S, t.T, t.hdet4});
                }
                break;
            }
            case ChainModel::haldane_shastry: {
                auto t = invariants_st(hs_state(p));
                records.push_back({p, 0.0, 0, 0.0, t.S, t.T, t.hdet4});
                break;
            }
            case ChainModel::hs_dimerized: {
                auto t = invariants_st(hs_state(alpha_for_dimer, p));
                records.push_back({p, alpha_for_dimer, 0, 0.0, t.S, t.T, t.hdet4});
                break;
            }
        }
    }
    return records;
}

// ---------------------------------------------------------------------------
// Thermal invariants
// ---------------------------------------------------------------------------

enum class ThermalQuantity { S, T, hdet4 };

inline cdouble pick(const InvariantTriple& t, ThermalQuantity q) {
    switch (q) {
        case ThermalQuantity::S: return t.S;
        case ThermalQuantity::T: return t.T;
        default: return t.hdet4;
    }
}

/// Boltzmann-weighted invariant over a supplied eigensystem (canonical bases
/// keep degenerate levels well defined).
inline cdouble thermal_invariant(const std::vector<Eigenstate>& eigensystem, double beta, ThermalQuantity q) {
    if (beta < 0.0) throw ParameterError("thermal_invariant: beta >= 0 required");
    double emin = eigensystem.front().energy;
    for (const auto& e : eigensystem) emin = std::min(emin, e.energy);
    double z = 0.0;
    cdouble acc = 0.0;
    for (const auto& e : eigensystem) {
        double w = std::exp(-beta * (e.energy - emin));
        acc += w * pick(invariants_st(e.state), q);
        z += w;
    }
    return acc / z;
}

/// Dense-Hamiltonian variant. With degeneracy_search on, each degenerate
/// eigenspace contributes the minimum |quantity| over unit superpositions,
/// located by multi-start Nelder-Mead on hypersphere coordinates (heuristic,
/// not a certified global minimum).
inline cdouble thermal_invariant(const Mat& hamiltonian, double beta, ThermalQuantity q, bool degeneracy_search,
                                 int restarts = 32, std::uint64_t seed = 12345) {
    if (beta < 0.0) throw ParameterError("thermal_invariant: beta >= 0 required");
    if (hamiltonian.rows() != 16) throw DimensionError("thermal_invariant: 16x16 Hamiltonian expected");
    Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian);
    RVec energies = es.eigenvalues();
    Mat vecs = es.eigenvectors();

    std::vector<std::pair<int, int>> clusters;  // [first, last] index ranges
    int start = 0;
    for (int i = 1; i <= 16; ++i) {
        if (i == 16 || energies(i) - energies(start) > 1e-8) {
            clusters.emplace_back(start, i - 1);
            start = i;
        }
    }

    double z = 0.0;
    cdouble acc = 0.0;
    double emin = energies(0);
    for (auto [lo, hi] : clusters) {
        int g = hi - lo + 1;
        double w = std::exp(-beta * (energies(lo) - emin));
        cdouble value;
        if (g == 1 || !degeneracy_search) {
            cdouble sum = 0.0;
            for (int i = lo; i <= hi; ++i)
                sum += pick(invariants_st(StateVector(4, 2, vecs.col(i))), q);
            value = sum / double(g);
        } else {
            // minimize |quantity| over the degenerate subspace
            auto objective = [&](const RVec& params) {
                Vec combo = Vec::Zero(16);
                for (int i = 0; i < g; ++i)
                    combo += cdouble(params(2 * i), params(2 * i + 1)) * vecs.col(lo + i);
                double nn = combo.norm();
                if (nn < 1e-12) return 1e6;
                combo /= nn;
                return std::abs(pick(invariants_st(StateVector(4, 2, combo)), q));
            };
            NelderMeadOptions opt;
            opt.max_iterations = 400;
            opt.ftol = 1e-10;
            auto best = multistart_minimize(objective, 2 * g, restarts, seed, opt);
            value = best.value;
        }
        acc += double(g) * w * value;
        z += double(g) * w;
    }
    return acc / z;
}

/// Thermal-superposition minimum: one pure state assembled from all levels
/// with Boltzmann amplitude weights, the quantity minimized jointly over the
/// per-level unit coefficient vectors (including the phases of non-degenerate
/// levels). This is the variant whose high-temperature limit decays to zero.
inline double thermal_invariant_joint(const Mat& hamiltonian, double beta, ThermalQuantity q, int restarts = 16,
                                      std::uint64_t seed = 12345) {
    if (beta < 0.0) throw ParameterError("thermal_invariant_joint: beta >= 0 required");
    if (hamiltonian.rows() != 16) throw DimensionError("thermal_invariant_joint: 16x16 Hamiltonian expected");
    Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian);
    RVec energies = es.eigenvalues();
    Mat vecs = es.eigenvectors();

    std::vector<std::pair<int, int>> clusters;
    int start = 0;
    for (int i = 1; i <= 16; ++i) {
        if (i == 16 || energies(i) - energies(start) > 1e-8) {
            clusters.emplace_back(start, i - 1);
            start = i;
        }
    }
    double emin = energies(0);
    auto objective = [&](const RVec& params) {
        Vec psi = Vec::Zero(16);
        int p = 0;
        for (auto [lo, hi] : clusters) {
            int g = hi - lo + 1;
            Vec combo = Vec::Zero(16);
            for (int i = 0; i < g; ++i) combo += cdouble(params(p + 2 * i), params(p + 2 * i + 1)) * vecs.col(lo + i);
            p += 2 * g;
            double nn = combo.norm();
            if (nn < 1e-12) {  // parameterization singularity: keep the level present
                combo = vecs.col(lo);
                nn = 1.0;
            }
            psi += std::exp(-beta * (energies(lo) - emin)) * combo / nn;
        }
        double nn = psi.norm();
        if (nn < 1e-12) return 1e6;
        return std::abs(pick(invariants_st(StateVector(4, 2, psi / nn)), q));
    };
    NelderMeadOptions opt;
    opt.max_iterations = 800;
    opt.ftol = 1e-12;
    std::vector<RVec> hints;
    RVec plain = RVec::Zero(32);
    for (int i = 0; i < 16; ++i) plain(2 * i) = 1.0;  // the solver basis itself
    hints.push_back(plain);
    auto best = multistart_minimize(objective, 32, restarts, seed, opt, hints);
    return best.value;
}

// ---------------------------------------------------------------------------
// Random baselines
// ---------------------------------------------------------------------------

enum class RandomPrior { flat, haar, goe, gue, gse };

struct BaselineSummary {
    double mean_abs_hdet4 = 0.0;
    double fraction_above = 0.0;  ///< fraction with |hdet4| > threshold
    double threshold = 1e-8;
    std::size_t n_samples = 0;
};

namespace detail {

inline StateVector sample_state(RandomPrior prior, std::mt19937_64& rng) {
    const int dim = 16;
    switch (prior) {
        case RandomPrior::flat: {
            // Signed uniform parts; the positive-quadrant variant collapses
            // |hdet4| by three orders of magnitude and misses the reported
            // statistics.
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            Vec a(dim);
            for (int i = 0; i < dim; ++i) a(i) = cdouble(u(rng), u(rng));
            return StateVector(4, 2, a).normalized();
        }
        case RandomPrior::haar: {
            std::normal_distribution<double> g(0.0, 1.0);
            Vec a(dim);
            for (int i = 0; i < dim; ++i) a(i) = cdouble(g(rng), g(rng));
            return StateVector(4, 2, a).normalized();
        }
        case RandomPrior::goe: {
            std::normal_distribution<double> gd(0.0, 1.0), go(0.0, std::sqrt(0.5));
            Mat h = Mat::Zero(dim, dim);
            for (int i = 0; i < dim; ++i) {
                h(i, i) = gd(rng);
                for (int j = 0; j < i; ++j) h(i, j) = h(j, i) = go(rng);
            }
            Eigen::SelfAdjointEigenSolver<Mat> es(h);
            return StateVector(4, 2, es.eigenvectors().col(0)).normalized();
        }
        case RandomPrior::gue: {
            std::normal_distribution<double> gd(0.0, 1.0), go(0.0, std::sqrt(0.5));
            Mat h = Mat::Zero(dim, dim);
            for (int i = 0; i < dim; ++i) {
                h(i, i) = gd(rng);
                for (int j = 0; j < i; ++j) {
                    h(i, j) = cdouble(go(rng), go(rng));
                    h(j, i) = std::conj(h(i, j));
                }
            }
            Eigen::SelfAdjointEigenSolver<Mat> es(h);
            return StateVector(4, 2, es.eigenvectors().col(0)).normalized();
        }
        case RandomPrior::gse:
        default: {
            // Quaternion self-dual 16x16: A symmetric real, B, C, D real
            // antisymmetric, H = A x 1 + i B x e1 + i C x e2 + i D x e3.
            const int m = 8;
            std::normal_distribution<double> gd(0.0, 1.0), go(0.0, std::sqrt(0.5));
            Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m), B = A, C = A, D = A;
            for (int i = 0; i < m; ++i) {
                A(i, i) = gd(rng);
                for (int j = 0; j < i; ++j) {
                    A(i, j) = A(j, i) = go(rng);
                    B(i, j) = go(rng); B(j, i) = -B(i, j);
                    C(i, j) = go(rng); C(j, i) = -C(i, j);
                    D(i, j) = go(rng); D(j, i) = -D(i, j);
                }
            }
            Mat h = Mat::Zero(dim, dim);
            const cdouble I(0, 1);
            // quaternion units as 2x2 blocks: e1 = i sz, e2 = i sy, e3 = i sx
            h.block(0, 0, m, m) = A.cast<cdouble>() + I * B.cast<cdouble>();
            h.block(m, m, m, m) = A.cast<cdouble>() - I * B.cast<cdouble>();
            h.block(0, m, m, m) = C.cast<cdouble>() + I * D.cast<cdouble>();
            h.block(m, 0, m, m) = -C.cast<cdouble>() + I * D.cast<cdouble>();
            Eigen::SelfAdjointEigenSolver<Mat> es(h);
            return StateVector(4, 2, es.eigenvectors().col(0)).normalized();
        }
    }
}

}  // namespace detail

/// Seeded ensemble summary; per-sample seeds come from the master seed so the
/// result is independent of the worker count.
inline BaselineSummary random_baseline(RandomPrior prior, std::size_t n_samples, std::uint64_t seed,
                                       double threshold = 1e-8) {
    std::vector<double> abs_h(n_samples);
    parallel_for(n_samples, [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(seed, i));
        abs_h[i] = std::abs(invariants_st(detail::sample_state(prior, rng)).hdet4);
    });
    BaselineSummary out;
    out.threshold = threshold;
    out.n_samples = n_samples;
    std::size_t above = 0;
    double sum = 0.0;
    for (double v : abs_h) {
        sum += v;
        if (v > threshold) ++above;
    }
    out.mean_abs_hdet4 = sum / double(n_samples);
    out.fraction_above = double(above) / double(n_samples);
    return out;
}

}  // namespace inv
}  // namespace maxent
