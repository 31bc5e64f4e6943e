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

/// Bell operators as multilinear polynomials in per-party setting labels,
/// classical (local-realistic) bounds by exhaustive deterministic-strategy
/// enumeration, quantum bounds from exact eigenvalues, and the
/// phase-then-Fourier settings optimizer.

#pragma once

#include <optional>
#include <random>

#include "maxent/optim.hpp"
#include "maxent/qcircuit.hpp"
#include "maxent/qstate.hpp"

namespace maxent {
namespace bell {

enum class Part { hermitian, antihermitian, full };

/// Classical outcome model: dichotomic +-1, Hermitian qutrit outcomes
/// {-1, 0, +1}, or d-th roots of unity (unitary settings).
enum class OutcomeModel { pm_one, spin_symmetric, root_of_unity };

struct BellTerm {
    cdouble coeff;
    std::vector<int> setting;  ///< per party, which setting label
    std::vector<int> power;    ///< per party, exponent (0 = party absent)
};

struct BellOperator {
    std::string name;
    int n_parties = 2;
    int n_settings = 2;
    int outcomes = 2;
    Part part = Part::hermitian;
    OutcomeModel model = OutcomeModel::pm_one;
    std::vector<BellTerm> terms;
    cdouble constant = 0.0;  ///< additive multiple of the identity

    void add_term(cdouble coeff, std::vector<int> setting, std::vector<int> power) {
        if (static_cast<int>(setting.size()) != n_parties || static_cast<int>(power.size()) != n_parties)
            throw DimensionError("BellOperator::add_term: per-party lists must have n_parties entries");
        for (int s : setting)
            if (s < 0 || s >= n_settings) throw ParameterError("BellOperator::add_term: setting index out of range");
        terms.push_back({coeff, std::move(setting), std::move(power)});
    }

    /// Convenience: unit powers, parties indexed by the settings tuple.
    void add_product(cdouble coeff, const std::vector<int>& setting) {
        add_term(coeff, setting, std::vector<int>(n_parties, 1));
    }
};

/// Per-party, per-setting measurement operators.
using SettingsAssignment = std::vector<std::vector<Mat>>;

struct BoundReport {
    std::string name;
    double lr_max = 0.0;
    double lr_min = 0.0;
    double qm = 0.0;
    double ratio = 0.0;
    SettingsAssignment settings;
    Vec optimal_state;
    double purity = 0.0;  ///< Tr rho^2 of the floor(n/2)-site reduction of the optimal state
};

// ---------------------------------------------------------------------------
// Classical bounds by enumeration
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<cdouble> outcome_values(OutcomeModel model, int d) {
    switch (model) {
        case OutcomeModel::pm_one: return {1.0, -1.0};
        case OutcomeModel::spin_symmetric: {
            if (d != 3) throw ParameterError("spin_symmetric outcomes implemented for d = 3");
            return {1.0, 0.0, -1.0};
        }
        default: {
            std::vector<cdouble> v(d);
            for (int k = 0; k < d; ++k) v[k] = std::polar(1.0, 2.0 * kPi * k / d);
            return v;
        }
    }
}

inline double designated_value(cdouble full, Part part) {
    switch (part) {
        case Part::hermitian: return full.real();
        case Part::antihermitian: return full.imag();
        default: return full.real();
    }
}

}  // namespace detail

/// Exact max/min of the designated part over all deterministic outcome
/// assignments. Sound and complete for the sizes in use; the assignment
/// space d_out^(n s) is capped at 1e8.
inline std::pair<double, double> classical_bound(const BellOperator& op) {
    auto values = detail::outcome_values(op.model, op.outcomes);
    const int n_out = static_cast<int>(values.size());
    const int slots = op.n_parties * op.n_settings;
    double total = std::pow(double(n_out), slots);
    if (total > 1e8) throw EnumerationBudgetError("classical_bound: assignment space exceeds 1e8");

    const std::size_t count = static_cast<std::size_t>(total);
    std::vector<int> assign(slots, 0);
    double best_max = -std::numeric_limits<double>::infinity();
    double best_min = std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rem = idx;
        for (int s = 0; s < slots; ++s) {
            assign[s] = static_cast<int>(rem % n_out);
            rem /= n_out;
        }
        cdouble acc = op.constant;
        for (const auto& term : op.terms) {
            cdouble prod = term.coeff;
            for (int p = 0; p < op.n_parties; ++p) {
                int pw = term.power[p];
                if (pw == 0) continue;
                cdouble v = values[assign[p * op.n_settings + term.setting[p]]];
                for (int e = 0; e < pw; ++e) prod *= v;
            }
            acc += prod;
        }
        double val = detail::designated_value(acc, op.part);
        best_max = std::max(best_max, val);
        best_min = std::min(best_min, val);
    }
    return {best_max, best_min};
}

// ---------------------------------------------------------------------------
// Operator assembly and quantum bounds
// ---------------------------------------------------------------------------

inline Mat assemble(const BellOperator& op, const SettingsAssignment& settings) {
    if (static_cast<int>(settings.size()) != op.n_parties)
        throw DimensionError("assemble: settings must cover every party");
    const int d = static_cast<int>(settings[0][0].rows());
    const long dim = static_cast<long>(ipow(d, op.n_parties));
    Mat b = Mat::Identity(dim, dim) * op.constant;
    for (const auto& term : op.terms) {
        Mat factor = Mat::Identity(1, 1);
        for (int p = 0; p < op.n_parties; ++p) {
            Mat local = Mat::Identity(d, d);
            for (int e = 0; e < term.power[p]; ++e) local = local * settings[p][term.setting[p]];
            factor = kron(factor, local);
        }
        b += term.coeff * factor;
    }
    return b;
}

inline Mat designated_part(const Mat& b, Part part) {
    switch (part) {
        case Part::hermitian: return (b + b.adjoint()) / 2.0;
        case Part::antihermitian: return (b - b.adjoint()) / cdouble(0.0, 2.0);
        default: return b;
    }
}

/// Largest eigenvalue of the designated part with the given settings.
inline double quantum_bound_exact(const BellOperator& op, const SettingsAssignment& settings) {
    Mat part = designated_part(assemble(op, settings), op.part);
    Eigen::SelfAdjointEigenSolver<Mat> es(part, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

// ---------------------------------------------------------------------------
// Settings optimizer: phase shift followed by a Fourier transform
// ---------------------------------------------------------------------------

namespace detail {

inline Mat base_observable(OutcomeModel model, int d) {
    if (model == OutcomeModel::root_of_unity) {
        Mat z = Mat::Zero(d, d);
        for (int k = 0; k < d; ++k) z(k, k) = std::polar(1.0, 2.0 * kPi * k / d);
        return z;
    }
    if (model == OutcomeModel::pm_one) {
        Mat z(2, 2);
        z << 1, 0, 0, -1;
        return z;
    }
    Mat l3 = Mat::Zero(3, 3);  // qutrit outcomes {1, -1, 0}
    l3(0, 0) = 1;
    l3(1, 1) = -1;
    return l3;
}

/// Setting operator (F U(phi))^dagger Pi (F U(phi)) for one phase vector.
inline Mat setting_from_phases(const Mat& pi_base, const RVec& phases, int d) {
    Mat fu = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            fu(k, l) = std::polar(1.0 / std::sqrt(double(d)), 2.0 * kPi * k * l / d + (l > 0 ? phases(l - 1) : 0.0));
    return fu.adjoint() * pi_base * fu;
}

/// Lanczos with full reorthogonalization for the largest eigenvalue of a
/// Hermitian operator given through its matvec.
inline double lanczos_max_eig(const std::function<Vec(const Vec&)>& matvec, long dim, int max_iter = 60,
                              double tol = 1e-9) {
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(dim);
    for (long i = 0; i < dim; ++i) v(i) = cdouble(g(rng), g(rng));
    v /= v.norm();
    std::vector<Vec> basis;
    std::vector<double> alpha, beta;
    double prev = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
        basis.push_back(v);
        Vec w = matvec(v);
        double a = std::real(v.dot(w));
        alpha.push_back(a);
        w -= a * v;
        if (!beta.empty()) w -= beta.back() * basis[basis.size() - 2];
        for (const auto& u : basis) w -= u.dot(w) * u;  // full reorthogonalization
        double b = w.norm();
        // tridiagonal eigenvalue
        long m = static_cast<long>(alpha.size());
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
        for (long i = 0; i < m; ++i) {
            tri(i, i) = alpha[i];
            if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta.size() > static_cast<std::size_t>(i) ? beta[i] : 0.0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri, Eigen::EigenvaluesOnly);
        double cur = es.eigenvalues().maxCoeff();
        if (b < 1e-12 || std::abs(cur - prev) < tol) return cur;
        prev = cur;
        beta.push_back(b);
        v = w / b;
    }
    return prev;
}

/// Matrix-free application of the designated part of the assembled operator.
inline Vec apply_designated(const BellOperator& op, const SettingsAssignment& settings, Part part, const Vec& x) {
    const int d = static_cast<int>(settings[0][0].rows());
    const int n = op.n_parties;
    StateVector psi(n, d, x);
    Vec acc = op.constant * x;
    auto apply_term_with = [&](const BellTerm& term, bool dag) {
        StateVector cur = psi;
        for (int p = 0; p < n; ++p) {
            if (term.power[p] == 0) continue;
            Mat local = Mat::Identity(d, d);
            for (int e = 0; e < term.power[p]; ++e) local = local * settings[p][term.setting[p]];
            if (dag) local = local.adjoint().eval();
            Gate g{"s", 1, d, local, {}};
            apply_gate(cur, g, {p});
        }
        return cur.amplitudes();
    };
    for (const auto& term : op.terms) {
        if (part == Part::hermitian) {
            acc += 0.5 * term.coeff * apply_term_with(term, false);
            acc += 0.5 * std::conj(term.coeff) * apply_term_with(term, true);
        } else if (part == Part::antihermitian) {
            acc += term.coeff / cdouble(0, 2) * apply_term_with(term, false);
            acc -= std::conj(term.coeff) / cdouble(0, 2) * apply_term_with(term, true);
        } else {
            acc += term.coeff * apply_term_with(term, false);
        }
    }
    return acc;
}

}  // namespace detail

struct OptimizeOptions {
    int restarts = 64;
    std::uint64_t seed = 20260810;
    bool symmetric = false;  ///< share one phase vector set across parties
    int nm_iterations = 400;
};

/// Builds the settings for a phase-parameter vector. Layout: for each party
/// (or once if symmetric), for each setting, (d-1) phases.
inline SettingsAssignment settings_from_parameters(const RVec& params, const BellOperator& op, bool symmetric) {
    const int d = op.outcomes;
    Mat pi_base = detail::base_observable(op.model, d);
    SettingsAssignment settings(op.n_parties, std::vector<Mat>(op.n_settings));
    int per_party = op.n_settings * (d - 1);
    for (int p = 0; p < op.n_parties; ++p) {
        int base = symmetric ? 0 : p * per_party;
        for (int s = 0; s < op.n_settings; ++s) {
            RVec phases = params.segment(base + s * (d - 1), d - 1);
            settings[p][s] = detail::setting_from_phases(pi_base, phases, d);
        }
    }
    return settings;
}

/// Multi-start derivative-free maximization of the largest eigenvalue over
/// the phase parameterization. Deterministic for a fixed seed. Alongside the
/// random restarts it always tries the zero vector and the alternating
/// (0, pi, 0, ...) pattern per setting, which generate the shift-type and
/// MOS-type optima.
inline BoundReport quantum_bound_optimize(const BellOperator& op, const OptimizeOptions& options = {}) {
    const int d = op.outcomes;
    const int per_party = op.n_settings * (d - 1);
    const int dim_params = options.symmetric ? per_party : op.n_parties * per_party;
    const long hilbert = static_cast<long>(ipow(d, op.n_parties));

    auto largest = [&](const SettingsAssignment& settings) {
        if (hilbert <= 256) {
            Mat part = designated_part(assemble(op, settings), op.part);
            Eigen::SelfAdjointEigenSolver<Mat> es(part, Eigen::EigenvaluesOnly);
            return es.eigenvalues().maxCoeff();
        }
        auto mv = [&](const Vec& x) { return detail::apply_designated(op, settings, op.part, x); };
        return detail::lanczos_max_eig(mv, hilbert);
    };
    auto objective = [&](const RVec& params) { return -largest(settings_from_parameters(params, op, options.symmetric)); };

    std::vector<RVec> hints;
    {
        // alternating phase patterns per setting: the pi pattern generates the
        // MOS-type settings, the pi/2 pattern the x/y-type pair
        for (double step : {kPi, kPi / 2}) {
            for (int mask = 1; mask < (1 << op.n_settings); ++mask) {
                RVec h = RVec::Zero(dim_params);
                int copies = options.symmetric ? 1 : op.n_parties;
                for (int c = 0; c < copies; ++c)
                    for (int s = 0; s < op.n_settings; ++s)
                        if (mask & (1 << s))
                            for (int k = 0; k < d - 1; ++k)
                                h(c * per_party + s * (d - 1) + k) = (k % 2 == 0) ? step : 0.0;
                hints.push_back(h);
            }
        }
    }
    NelderMeadOptions nm;
    nm.max_iterations = options.nm_iterations;
    nm.ftol = 1e-9;
    auto best = multistart_minimize(objective, dim_params, options.restarts, options.seed, nm, hints);

    BoundReport report;
    report.name = op.name;
    report.settings = settings_from_parameters(best.point, op, options.symmetric);
    Mat part = designated_part(assemble(op, report.settings), op.part);
    Eigen::SelfAdjointEigenSolver<Mat> es(part);
    long arg = 0;
    es.eigenvalues().maxCoeff(&arg);
    report.qm = es.eigenvalues()(arg);
    report.optimal_state = es.eigenvectors().col(arg);
    auto lr = classical_bound(op);
    report.lr_max = lr.first;
    report.lr_min = lr.second;
    report.ratio = report.qm / report.lr_max;
    // purity diagnostic of the floor(n/2)-site reduction
    StateVector psi(op.n_parties, d, report.optimal_state);
    std::vector<int> keep(op.n_parties / 2);
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = static_cast<int>(i);
    report.purity = partial_trace(psi, keep).purity();
    return report;
}

// ---------------------------------------------------------------------------
// Operator catalog
// ---------------------------------------------------------------------------

/// CHSH: a(b + b') + a'(b - b').
inline BellOperator chsh() {
    BellOperator op;
    op.name = "CHSH";
    op.n_parties = 2;
    op.n_settings = 2;
    op.outcomes = 2;
    op.model = OutcomeModel::pm_one;
    op.part = Part::hermitian;
    op.add_product(1.0, {0, 0});
    op.add_product(1.0, {0, 1});
    op.add_product(1.0, {1, 0});
    op.add_product(-1.0, {1, 1});
    return op;
}

/// Svetlichny S3 (sum of the two three-party Mermin polynomials, unnormalized):
/// LR bound 4, quantum bound 4 sqrt 2.
inline BellOperator svetlichny3() {
    BellOperator op;
    op.name = "Svetlichny3";
    op.n_parties = 3;
    op.n_settings = 2;
    op.outcomes = 2;
    op.model = OutcomeModel::pm_one;
    op.part = Part::hermitian;
    const double by_primes[4] = {-1.0, +1.0, +1.0, -1.0};
    for (int mask = 0; mask < 8; ++mask) {
        int primes = ((mask >> 2) & 1) + ((mask >> 1) & 1) + (mask & 1);
        op.add_product(by_primes[primes], {(mask >> 2) & 1, (mask >> 1) & 1, mask & 1});
    }
    return op;
}

/// Normalized Mermin polynomial via the recursion
/// M_n = M_{n-1}(a_n + a'_n)/2 + M'_{n-1}(a_n - a'_n)/2.
inline BellOperator mermin(int n) {
    if (n < 1) throw ParameterError("mermin: n >= 1");
    struct Term {
        cdouble c;
        std::vector<int> setting;
    };
    std::vector<Term> m = {{1.0, {0}}}, mp = {{1.0, {1}}};
    for (int k = 2; k <= n; ++k) {
        std::vector<Term> next, nextp;
        auto extend = [](const std::vector<Term>& src, int s, cdouble scale, std::vector<Term>& dst) {
            for (const auto& t : src) {
                Term nt = t;
                nt.c *= scale;
                nt.setting.push_back(s);
                dst.push_back(nt);
            }
        };
        extend(m, 0, 0.5, next);
        extend(m, 1, 0.5, next);
        extend(mp, 0, 0.5, next);
        extend(mp, 1, -0.5, next);
        // the primed polynomial swaps every observable, so the difference
        // term enters with the opposite sign
        extend(mp, 0, 0.5, nextp);
        extend(mp, 1, 0.5, nextp);
        extend(m, 0, -0.5, nextp);
        extend(m, 1, 0.5, nextp);
        m = std::move(next);
        mp = std::move(nextp);
    }
    BellOperator op;
    op.name = "Mermin" + std::to_string(n);
    op.n_parties = n;
    op.n_settings = 2;
    op.outcomes = 2;
    op.model = OutcomeModel::pm_one;
    op.part = Part::hermitian;
    // collect duplicate monomials
    std::map<std::vector<int>, cdouble> collected;
    for (const auto& t : m) collected[t.setting] += t.c;
    for (const auto& [setting, c] : collected)
        if (std::abs(c) > 1e-15) op.add_product(c, setting);
    return op;
}

/// Hermitian-settings CGLMP operator for d = 3 (outcomes {-1, 0, +1}).
inline BellOperator cglmp3_hermitian() {
    BellOperator op;
    op.name = "CGLMP3-H";
    op.n_parties = 2;
    op.n_settings = 2;
    op.outcomes = 3;
    op.model = OutcomeModel::spin_symmetric;
    op.part = Part::hermitian;
    op.constant = 2.0;
    auto add = [&](double c, int sa, int pa, int sb, int pb) {
        op.add_term(c, {sa, sb}, {pa, pb});
    };
    add(-3.0, 0, 2, 0, 0);   // -3 a^2
    add(-3.0, 0, 0, 1, 2);   // -3 b'^2
    add(9.0 / 4, 0, 2, 0, 2);
    add(-9.0 / 4, 1, 2, 0, 2);
    add(9.0 / 4, 0, 2, 1, 2);
    add(9.0 / 4, 1, 2, 1, 2);
    add(3.0 / 4, 0, 1, 0, 1);
    add(3.0 / 4, 0, 2, 0, 1);
    add(-3.0 / 4, 1, 1, 0, 1);
    add(-3.0 / 4, 1, 2, 0, 1);
    add(-3.0 / 4, 0, 1, 0, 2);
    add(3.0 / 4, 1, 1, 0, 2);
    add(3.0 / 4, 0, 1, 1, 1);
    add(-3.0 / 4, 0, 2, 1, 1);
    add(3.0 / 4, 1, 1, 1, 1);
    add(3.0 / 4, 1, 2, 1, 1);
    add(3.0 / 4, 0, 1, 1, 2);
    add(-3.0 / 4, 1, 1, 1, 2);
    return op;
}

/// Unitary-settings CGLMP forms. The d=3 operator is the compact
/// anti-Hermitian expression; d=4 and d=5 expand the probability inequality
/// into setting powers, p(x = y + j) = (1/d) sum_m w^{-mj} x^m y^{-m}, which
/// regroups into the Hermitian/anti-Hermitian (ab)^k blocks and carries the
/// classical bound 2 by construction.
inline BellOperator cglmp(int d) {
    BellOperator op;
    op.n_parties = 2;
    op.n_settings = 2;
    op.outcomes = d;
    op.model = OutcomeModel::root_of_unity;
    if (d == 3) {
        op.name = "CGLMP3";
        op.part = Part::antihermitian;
        cdouble w = std::polar(1.0, 2 * kPi / 3);
        op.add_product(w, {0, 0});
        op.add_product(-1.0, {0, 1});
        op.add_product(-1.0, {1, 0});
        op.add_product(w, {1, 1});
        return op;
    }
    if (d != 4 && d != 5) throw ParameterError("cglmp: d must be 3, 4 or 5");
    op.name = "CGLMP" + std::to_string(d);
    op.part = Part::hermitian;
    // probability p(value(px, sx) - value(py, sy) = j), signed and weighted
    auto add_probability = [&](int px, int sx, int py, int sy, int j, double w) {
        op.constant += w / d;  // m = 0 term
        for (int m = 1; m < d; ++m) {
            cdouble coeff = std::polar(w / d, -2.0 * kPi * m * j / d);
            std::vector<int> setting(2), power(2);
            setting[px] = sx;
            setting[py] = sy;
            power[px] = m;
            power[py] = d - m;
            op.add_term(coeff, setting, power);
        }
    };
    for (int k = 0; k <= d / 2 - 1; ++k) {
        double w = 1.0 - 2.0 * k / (d - 1.0);
        add_probability(0, 0, 1, 0, k, w);            // p(a  = b  + k)
        add_probability(1, 0, 0, 1, k + 1, w);        // p(b  = a' + k + 1)
        add_probability(0, 1, 1, 1, k, w);            // p(a' = b' + k)
        add_probability(1, 1, 0, 0, k, w);            // p(b' = a  + k)
        add_probability(0, 0, 1, 0, -k - 1, -w);      // -p(a  = b  - k - 1)
        add_probability(1, 0, 0, 1, -k, -w);          // -p(b  = a' - k)
        add_probability(0, 1, 1, 1, -k - 1, -w);      // -p(a' = b' - k - 1)
        add_probability(1, 1, 0, 0, -k - 1, -w);      // -p(b' = a  - k - 1)
    }
    return op;
}

/// Symmetric qutrit family from the coefficient table; one coefficient per
/// prime count. Even party numbers designate the anti-Hermitian part, odd
/// ones the Hermitian part.
inline BellOperator qutrit_family(int n) {
    if (n < 2 || n > 6) throw ParameterError("qutrit_family: n in 2..6");
    cdouble w = std::polar(1.0, 2 * kPi / 3);
    cdouble w2 = w * w;
    // one coefficient per prime count; n = 2 carries the CGLMP signs (the
    // unsigned single-prime variant enumerates to different bounds)
    std::vector<std::vector<cdouble>> coeffs = {
        {w, -1.0, w},                         // n = 2
        {1.0, -w2, w, 2.0},                   // n = 3
        {2.0, 1.0, w, 1.0, 2.0},              // n = 4
        {w2, -w2, -w2, -w2, w2, w2},          // n = 5
        {-w, 1.0, -1.0, w, -1.0, 1.0, -w}};   // n = 6
    const auto& c = coeffs[n - 2];
    BellOperator op;
    op.name = "Qutrit" + std::to_string(n);
    op.n_parties = n;
    op.n_settings = 2;
    op.outcomes = 3;
    op.model = OutcomeModel::root_of_unity;
    op.part = (n % 2 == 0) ? Part::antihermitian : Part::hermitian;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> setting(n);
        int primes = 0;
        for (int p = 0; p < n; ++p) {
            setting[p] = (mask >> p) & 1;
            primes += setting[p];
        }
        op.add_product(c[primes], setting);
    }
    return op;
}

/// Maps a maximally entangled state onto a Bell operator: symbol k at party p
/// becomes the k-th setting; coefficients carry over after dropping the
/// uniform normalization. Optional Fourier preprocessing on selected parties.
inline BellOperator state_to_operator(const StateVector& state, const std::vector<int>& fourier_on = {},
                                      Part part = Part::hermitian) {
    StateVector work = state;
    for (int p : fourier_on) apply_gate(work, gates::fourier(state.local_dim()), {p});
    const int n = work.n_sites();
    const int d = work.local_dim();
    double scale = 0.0;
    for (long i = 0; i < work.dim(); ++i) scale = std::max(scale, std::abs(work.amp(i)));
    if (scale <= 0.0) throw ParameterError("state_to_operator: zero state");

    BellOperator op;
    op.name = "FromState";
    op.n_parties = n;
    op.n_settings = d;
    op.outcomes = d;
    op.model = OutcomeModel::root_of_unity;
    op.part = part;
    for (long i = 0; i < work.dim(); ++i) {
        cdouble c = work.amp(i) / scale;
        if (std::abs(c) < 1e-12) continue;
        op.add_product(c, work.digits_of(i));
    }
    return op;
}

// ---------------------------------------------------------------------------
// Named settings
// ---------------------------------------------------------------------------

namespace settings {

/// CHSH optimum: a = sz, a' = sx, b = (sz+sx)/sqrt2, b' = (sz-sx)/sqrt2.
inline SettingsAssignment chsh_pauli() {
    Mat sz(2, 2), sx(2, 2);
    sz << 1, 0, 0, -1;
    sx << 0, 1, 1, 0;
    double r = 1 / std::sqrt(2.0);
    return {{sz, sx}, {r * (sz + sx), r * (sz - sx)}};
}

/// Mermin optimum on GHZ: a_j = sx, a'_j = sy everywhere.
inline SettingsAssignment mermin_xy(int n) {
    Mat sx(2, 2), sy(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, cdouble(0, -1), cdouble(0, 1), 0;
    return SettingsAssignment(n, {sx, sy});
}

/// Weyl-Heisenberg shift matrix X for dimension d.
inline Mat shift(int d) {
    Mat x = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
    return x;
}

/// Clock matrix Z for dimension d.
inline Mat clock(int d) {
    Mat z = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j) z(j, j) = std::polar(1.0, 2 * kPi * j / d);
    return z;
}

/// Multiplet-of-optimal-settings companion to X: shift with -1 entries below
/// the diagonal and +1 in the corner.
inline Mat mos(int d, double phase = 0.0) {
    Mat m = Mat::Zero(d, d);
    m(0, d - 1) = 1.0;
    for (int j = 0; j + 1 < d; ++j) m(j + 1, j) = -1.0;
    return std::polar(1.0, phase) * m;
}

inline SettingsAssignment xz_pair(int n, int d) { return SettingsAssignment(n, {shift(d), clock(d)}); }

inline SettingsAssignment x_mos(int n, int d, double phase = 0.0) {
    return SettingsAssignment(n, {shift(d), mos(d, phase)});
}

}  // namespace settings

// ---------------------------------------------------------------------------
// MUB and MOS diagnostics
// ---------------------------------------------------------------------------

namespace detail {

/// Orthonormal eigenbasis of a (normal) unitary, Gram-Schmidt inside
/// degenerate eigenvalue clusters.
inline Mat unitary_eigenbasis(const Mat& u) {
    if ((u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() > 1e-9)
        throw ParameterError("unitary_eigenbasis: input is not unitary");
    Eigen::ComplexEigenSolver<Mat> es(u);
    Mat v = es.eigenvectors();
    // Gram-Schmidt; eigenvectors of distinct eigenvalues are already orthogonal
    for (long i = 0; i < v.cols(); ++i) {
        for (long j = 0; j < i; ++j) v.col(i) -= v.col(j).dot(v.col(i)) * v.col(j);
        v.col(i).normalize();
    }
    return v;
}

}  // namespace detail

/// True iff all pairwise eigenbasis overlaps satisfy |<phi_i|psi_j>|^2 = 1/d.
inline bool mub_check(const std::vector<Mat>& mats, double tol = 1e-9) {
    if (mats.size() < 2) throw ParameterError("mub_check: need at least two operators");
    const long d = mats[0].rows();
    std::vector<Mat> bases;
    for (const auto& m : mats) bases.push_back(detail::unitary_eigenbasis(m));
    for (std::size_t a = 0; a < bases.size(); ++a)
        for (std::size_t b = a + 1; b < bases.size(); ++b)
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j) {
                    double ov = std::norm(bases[a].col(i).dot(bases[b].col(j)));
                    if (std::abs(ov - 1.0 / double(d)) > tol) return false;
                }
    return true;
}

/// True iff both the commutator and anticommutator of the pair are nilpotent
/// (d-th matrix power vanishing).
inline bool mos_check(const Mat& a, const Mat& b, double tol = 1e-9) {
    if ((a.adjoint() * a - Mat::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff() > 1e-9 ||
        (b.adjoint() * b - Mat::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff() > 1e-9)
        throw ParameterError("mos_check: inputs must be unitary");
    const long d = a.rows();
    Mat comm = a * b - b * a;
    Mat anti = a * b + b * a;
    Mat pc = Mat::Identity(d, d), pa = Mat::Identity(d, d);
    for (long k = 0; k < d; ++k) {
        pc = pc * comm;
        pa = pa * anti;
    }
    return pc.cwiseAbs().maxCoeff() < tol && pa.cwiseAbs().maxCoeff() < tol;
}

}  // namespace bell
}  // namespace maxent
