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

/// Closed-form tree-level helicity amplitudes (QED catalog, Z decay,
/// Z-mediated and interference e+e- -> mu+mu-, gluon-gluon), final-state
/// concurrence analysis, the weak-angle solvers, and the unconstrained-QED
/// vertex numerics built from gamma-matrix currents.
///
/// Concurrence normalization: Delta in [0,1] throughout, i.e.
/// 2|ad - bc| / (|a|^2+|b|^2+|c|^2+|d|^2). Expressions quoted with maximum
/// 1/2 (the eigenvalue form) correspond to half of what these functions
/// return. Overall coupling factors are dropped; they cancel in every ratio.

#pragma once

#include <array>
#include <optional>
#include <random>

#include "maxent/qstate.hpp"

namespace maxent {
namespace scatter {

enum class Process {
    e_mu,                     ///< e- mu-  ->  e- mu-      (t channel)
    ee_to_mumu,               ///< e- e+  ->  mu- mu+      (s channel)
    moller,                   ///< e- e-  ->  e- e-        (t and u)
    bhabha,                   ///< e- e+  ->  e- e+        (s and t)
    pair_annihilation,        ///< e- e+  ->  gamma gamma
    compton,                  ///< e- gamma -> e- gamma
    z_decay,                  ///< Z -> e- e+
    ee_to_mumu_z,             ///< pure Z exchange, high energy
    ee_to_mumu_interference,  ///< Z and photon exchange
    gluon_gluon,              ///< g g -> g g
};

/// Initial configuration. RR..LL are helicity pairs (for Compton the second
/// label is the photon polarization, R = +). The z_* entries are the three Z
/// polarizations of the decay process.
enum class Initial { RR, RL, LR, LL, z_long, z_right, z_left };

struct KinematicPoint {
    double theta = kPi / 2;  ///< scattering angle in (0, pi)
    double mu = 1.0;         ///< |p| over the process mass scale
    double lambda = 0.0;     ///< m/M where two masses appear
    // electroweak couplings
    double Q = -1.0;
    double T3 = -0.5;
    double sin2w = 0.25;
    // gluon color factors: f1 = f^{ab'c} f^{ba'c}, f2 = f^{aa'c} f^{bb'c}
    double f1 = 1.0;
    double f2 = 1.0;
};

/// Final-state amplitudes in the order (RR, RL, LR, LL) — for photons read
/// (+, -) in place of (R, L).
struct Amplitudes {
    std::array<cdouble, 4> a{};

    double norm_sq() const {
        double s = 0;
        for (const auto& v : a) s += std::norm(v);
        return s;
    }
    bool degenerate(double tol = 1e-300) const { return norm_sq() < tol; }

    StateVector state() const {
        if (degenerate()) throw DegenerateAmplitudeError("Amplitudes: all four amplitudes vanish");
        Vec v(4);
        for (int i = 0; i < 4; ++i) v(i) = a[i];
        return StateVector(2, 2, v).normalized();
    }
};

inline double concurrence_of(const Amplitudes& amps) {
    if (amps.degenerate()) throw DegenerateAmplitudeError("concurrence_of: degenerate amplitude set");
    return 2.0 * std::abs(amps.a[0] * amps.a[3] - amps.a[1] * amps.a[2]) / amps.norm_sq();
}

namespace detail {

inline void guard(double denom, const char* what) {
    if (std::abs(denom) < 1e-6) throw SingularKinematicsError(std::string("singular kinematics: ") + what);
}

inline void check_theta(double theta) {
    if (!(theta > 0.0 && theta < kPi)) throw SingularKinematicsError("theta must lie in (0, pi)");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Electroweak couplings
// ---------------------------------------------------------------------------

inline double coupling_gv(const KinematicPoint& p) { return p.T3 / 2.0 - p.Q * p.sin2w; }
inline double coupling_ga(const KinematicPoint& p) { return p.T3 / 2.0; }
inline double coupling_gl(const KinematicPoint& p) { return (coupling_gv(p) + coupling_ga(p)) / 2.0; }
inline double coupling_gr(const KinematicPoint& p) { return (coupling_gv(p) - coupling_ga(p)) / 2.0; }

// ---------------------------------------------------------------------------
// Per-process closed forms
// ---------------------------------------------------------------------------

namespace detail {

inline Amplitudes emu_amps(const KinematicPoint& p, Initial init) {
    const double mu2 = p.mu * p.mu, lam = p.lambda;
    const double c = std::cos(p.theta);
    const double root = std::sqrt((1 + mu2) * (mu2 + lam * lam));
    guard(p.mu, "e-mu needs |p| > 0");
    guard(std::sin(p.theta / 2), "e-mu forward pole");
    const double ct2 = 1.0 / std::tan(p.theta / 2);
    Amplitudes rr;
    rr.a[0] = (mu2 * (3 - c) + root * (1 + c)) / (mu2 * (-1 + c));
    rr.a[1] = std::sqrt(mu2 + lam * lam) / mu2 * ct2;
    rr.a[2] = lam * std::sqrt(1 + mu2) / mu2 * ct2;
    rr.a[3] = -lam / mu2;
    Amplitudes rl;
    rl.a[0] = -std::sqrt(mu2 + lam * lam) / mu2 * ct2;
    rl.a[1] = -(mu2 + root) / mu2 * ct2 * ct2;
    rl.a[2] = lam / mu2;
    rl.a[3] = lam * std::sqrt(1 + mu2) / mu2 * ct2;
    switch (init) {
        case Initial::RR: return rr;
        case Initial::RL: return rl;
        case Initial::LR: return Amplitudes{{rl.a[3], rl.a[2], rl.a[1], rl.a[0]}};
        case Initial::LL: return Amplitudes{{rr.a[3], -rr.a[2], -rr.a[1], rr.a[0]}};
        default: throw ParameterError("e-mu: invalid initial configuration");
    }
}

inline Amplitudes ee_mumu_amps(const KinematicPoint& p, Initial init) {
    const double mu2 = p.mu * p.mu, lam = p.lambda;
    const double thresh = std::sqrt(std::max(0.0, 1.0 - lam * lam));
    if (p.mu < thresh - 1e-12) throw ParameterError("ee->mumu: below the muon production threshold");
    const double c = std::cos(p.theta), s = std::sin(p.theta);
    const double e2 = mu2 + lam * lam;
    Amplitudes out;
    switch (init) {
        case Initial::RR:
            out.a = {-lam * c / e2, -lam * s / std::sqrt(e2), lam * s / std::sqrt(e2), -lam * c / e2};
            return out;
        case Initial::LL:
            out.a = {-lam * c / e2, lam * s / std::sqrt(e2), -lam * s / std::sqrt(e2), -lam * c / e2};
            return out;
        case Initial::RL:
            out.a = {s / std::sqrt(e2), -(1 + c), -(1 - c), s / std::sqrt(e2)};
            return out;
        case Initial::LR:
            out.a = {-s / std::sqrt(e2), -(1 - c), -(1 + c), -s / std::sqrt(e2)};
            return out;
        default: throw ParameterError("ee->mumu: invalid initial configuration");
    }
}

inline Amplitudes moller_amps(const KinematicPoint& p, Initial init) {
    const double mu2 = p.mu * p.mu;
    guard(p.mu, "Moller needs |p| > 0");
    const double c = std::cos(p.theta), c2 = std::cos(2 * p.theta);
    guard(std::sin(p.theta), "Moller forward/backward pole");
    const double cot = c / std::sin(p.theta);
    const double csc2 = 1.0 / (std::sin(p.theta) * std::sin(p.theta));
    const double half = p.theta / 2;
    Amplitudes rr;
    rr.a[0] = -((3 + c2) / mu2 + 8) * csc2;
    rr.a[1] = -2 * std::sqrt(1 + mu2) / mu2 * cot;
    rr.a[2] = 2 * std::sqrt(1 + mu2) / mu2 * cot;
    rr.a[3] = 2 / mu2;
    Amplitudes rl;
    rl.a[0] = 2 * std::sqrt(1 + mu2) / mu2 * cot;
    rl.a[1] = -(2 / std::pow(std::tan(half), 2) + c / (mu2 * std::pow(std::sin(half), 2)));
    rl.a[2] = 2 * std::pow(std::tan(half), 2) - c / (mu2 * std::pow(std::cos(half), 2));
    rl.a[3] = rl.a[0];
    switch (init) {
        case Initial::RR: return rr;
        case Initial::LL: return Amplitudes{{rr.a[3], -rr.a[2], -rr.a[1], rr.a[0]}};
        case Initial::RL: return rl;
        case Initial::LR: return Amplitudes{{-rl.a[0], rl.a[2], rl.a[1], -rl.a[3]}};
        default: throw ParameterError("Moller: invalid initial configuration");
    }
}

inline Amplitudes bhabha_amps(const KinematicPoint& p, Initial init) {
    const double mu2 = p.mu * p.mu;
    guard(p.mu, "Bhabha needs |p| > 0");
    const double c = std::cos(p.theta), c2 = std::cos(2 * p.theta);
    const double half = p.theta / 2;
    guard(std::sin(half), "Bhabha forward pole");
    const double cth = 1.0 / std::tan(half);
    const double csch2 = 1.0 / std::pow(std::sin(half), 2);
    Amplitudes rr;
    rr.a[0] = (2 * (1 + c) + mu2 * (11 + c2) + 8 * mu2 * mu2) / (4 * mu2 * (1 + mu2)) * csch2;
    rr.a[1] = (1 + mu2 * c) / (mu2 * std::sqrt(1 + mu2)) * cth;
    rr.a[2] = -rr.a[1];
    rr.a[3] = -(1 + mu2 * (1 + c)) / (mu2 * (1 + mu2));
    Amplitudes rl;
    rl.a[0] = -(1 + mu2 * c) / (mu2 * std::sqrt(1 + mu2)) * cth;
    rl.a[1] = (1 + mu2 * (1 + c)) / mu2 * cth * cth;
    rl.a[2] = -(1 - c - 1 / mu2);
    rl.a[3] = rl.a[0];
    switch (init) {
        case Initial::RR: return rr;
        case Initial::LL: return Amplitudes{{rr.a[3], -rr.a[2], -rr.a[1], rr.a[0]}};
        case Initial::RL: return rl;
        case Initial::LR: return Amplitudes{{-rl.a[0], rl.a[2], rl.a[1], -rl.a[3]}};
        default: throw ParameterError("Bhabha: invalid initial configuration");
    }
}

inline Amplitudes pair_annihilation_amps(const KinematicPoint& p, Initial init) {
    const double mu = p.mu;
    const double c = std::cos(p.theta), s = std::sin(p.theta);
    const double root = std::sqrt(1 + mu * mu);
    Amplitudes rr;  // final photon polarizations (++, +-, -+, --)
    rr.a[0] = mu - root;
    rr.a[1] = -mu * s * s;
    rr.a[2] = -mu * s * s;
    rr.a[3] = mu + root;
    Amplitudes rl;
    rl.a[0] = 0;
    rl.a[1] = mu * root * s * (1 + c);
    rl.a[2] = -mu * root * s * (1 - c);
    rl.a[3] = 0;
    switch (init) {
        case Initial::RR:
        case Initial::LL: return rr;
        case Initial::RL: return rl;
        case Initial::LR: return Amplitudes{{0, -rl.a[2], -rl.a[1], 0}};
        default: throw ParameterError("pair annihilation: invalid initial configuration");
    }
}

inline Amplitudes compton_amps(const KinematicPoint& p, Initial init) {
    const double mu = p.mu;
    const double c = std::cos(p.theta), s = std::sin(p.theta);
    const double half = p.theta / 2;
    const double root = std::sqrt(1 + mu * mu);
    const double d1 = mu * c + root;  // positive for physical angles
    guard(d1, "Compton denominator");
    Amplitudes rp;  // initial |R+>; finals (R+, R-, L+, L-)
    rp.a[0] = 2 * (mu + root) * std::pow(std::cos(half), 3) / d1;
    rp.a[1] = (1 + c) * std::sin(half) / d1;
    rp.a[2] = (mu - root) * std::cos(half) * (-1 + c) / d1;
    rp.a[3] = 2 * std::pow(std::sin(half), 3) / d1;
    Amplitudes rm;  // initial |R->
    rm.a[0] = -0.5 * s * s / (std::sin(half) * d1);
    rm.a[1] = (1 + c + 4 * mu * (mu + root)) * std::cos(half) / ((mu + root) * d1);
    rm.a[2] = -2 * std::sin(half) / (mu + root) + std::cos(half) * s / d1;
    rm.a[3] = std::sin(half) * s / ((mu + root) * d1);
    switch (init) {
        case Initial::RR: return rp;  // R+
        case Initial::RL: return rm;  // R-
        case Initial::LL: return Amplitudes{{-rp.a[3], rp.a[2], -rp.a[1], rp.a[0]}};  // L-
        case Initial::LR: return Amplitudes{{rm.a[3], -rm.a[2], rm.a[1], -rm.a[0]}};  // L+
        default: throw ParameterError("Compton: invalid initial configuration");
    }
}

inline Amplitudes z_decay_amps(const KinematicPoint& p, Initial init) {
    const double gl = coupling_gl(p), gr = coupling_gr(p);
    const double c = std::cos(p.theta);
    const double half = p.theta / 2;
    Amplitudes out;
    (void)c;
    switch (init) {
        case Initial::z_long:
            out.a = {0.0, gr * std::sin(p.theta), gl * std::sin(p.theta), 0.0};
            return out;
        case Initial::z_right:
            out.a = {0.0, gr * std::sqrt(2.0) * std::pow(std::sin(half), 2),
                     -gl * std::sqrt(2.0) * std::pow(std::cos(half), 2), 0.0};
            return out;
        case Initial::z_left:
            out.a = {0.0, gr * std::sqrt(2.0) * std::pow(std::cos(half), 2),
                     -gl * std::sqrt(2.0) * std::pow(std::sin(half), 2), 0.0};
            return out;
        default: throw ParameterError("Z decay takes a Z polarization initial");
    }
}

inline Amplitudes ee_mumu_z_amps(const KinematicPoint& p, Initial init) {
    const double gl = coupling_gl(p), gr = coupling_gr(p);
    const double c = std::cos(p.theta);
    Amplitudes out;
    switch (init) {
        case Initial::RL:
            out.a = {0.0, (1 + c) * gr * gr, (-1 + c) * gr * gl, 0.0};
            return out;
        case Initial::LR:
            out.a = {0.0, (-1 + c) * gl * gr, (1 + c) * gl * gl, 0.0};
            return out;
        case Initial::RR:
        case Initial::LL: return Amplitudes{};  // vanish for massless leptons
        default: throw ParameterError("Z-mediated: invalid initial configuration");
    }
}

inline Amplitudes ee_mumu_interference_amps(const KinematicPoint& p, Initial init) {
    // chiral couplings enter unhalved here (g_V -+ g_A); the halved variants
    // would break the theta_W independence of the RL concurrence
    const double gl = 2.0 * coupling_gl(p), gr = 2.0 * coupling_gr(p);
    const double c = std::cos(p.theta);
    const double mu2 = p.mu * p.mu;
    guard(4 * mu2 - 1, "Z resonance");
    const double zprop = 4 * mu2 / (4 * mu2 - 1) / (1.0 - p.sin2w);  // sec^2(theta_W) via cos^2 = 1 - sin^2
    const double qq = p.Q * p.Q * p.sin2w;
    Amplitudes out;
    switch (init) {
        case Initial::RL:
            out.a = {0.0, -(zprop * gr * gr + qq) * (1 + c), (zprop * gr * gl + qq) * (1 - c), 0.0};
            return out;
        case Initial::LR:
            out.a = {0.0, (zprop * gl * gr + qq) * (1 - c), -(zprop * gl * gl + qq) * (1 + c), 0.0};
            return out;
        case Initial::RR:
        case Initial::LL: return Amplitudes{};
        default: throw ParameterError("interference: invalid initial configuration");
    }
}

inline Amplitudes gluon_amps(const KinematicPoint& p, Initial init) {
    detail::check_theta(p.theta);
    const double c = std::cos(p.theta);
    const double s_m = 1.0;  // Mandelstam s sets the scale
    const double t_m = -0.5 * (1 - c), u_m = -0.5 * (1 + c);
    guard(t_m, "gluon t pole");
    guard(u_m, "gluon u pole");
    const cdouble mi(0, -2);
    Amplitudes out;
    switch (init) {
        case Initial::RL:
            out.a = {0.0, mi * (p.f1 * t_m / s_m + p.f2 * u_m * u_m / (s_m * t_m)),
                     mi * (p.f1 * t_m * t_m / (s_m * u_m) + p.f2 * t_m / s_m), 0.0};
            return out;
        case Initial::LR:
            out.a = {0.0, mi * (p.f1 * t_m * t_m / (s_m * u_m) + p.f2 * t_m / s_m),
                     mi * (p.f1 * t_m / s_m + p.f2 * u_m * u_m / (s_m * t_m)), 0.0};
            return out;
        case Initial::RR:
        case Initial::LL: {
            // helicity conserving only; f^{abc} f^{a'b'c} = f2 - f1 by Jacobi
            double fs = p.f2 - p.f1;
            cdouble amp = cdouble(0, 2) * (fs * (-t_m + u_m) / s_m + p.f2 * ((-t_m + u_m) / s_m + 2) * u_m / t_m -
                                           p.f1 * ((-t_m + u_m) / s_m - 2) * t_m / u_m);
            if (init == Initial::RR)
                out.a = {amp, 0.0, 0.0, 0.0};
            else
                out.a = {0.0, 0.0, 0.0, amp};
            return out;
        }
        default: throw ParameterError("gluons: invalid initial configuration");
    }
}

}  // namespace detail

inline Amplitudes amplitudes(Process process, const KinematicPoint& p, Initial init) {
    detail::check_theta(p.theta);
    switch (process) {
        case Process::e_mu: return detail::emu_amps(p, init);
        case Process::ee_to_mumu: return detail::ee_mumu_amps(p, init);
        case Process::moller: return detail::moller_amps(p, init);
        case Process::bhabha: return detail::bhabha_amps(p, init);
        case Process::pair_annihilation: return detail::pair_annihilation_amps(p, init);
        case Process::compton: return detail::compton_amps(p, init);
        case Process::z_decay: return detail::z_decay_amps(p, init);
        case Process::ee_to_mumu_z: return detail::ee_mumu_z_amps(p, init);
        case Process::ee_to_mumu_interference: return detail::ee_mumu_interference_amps(p, init);
        case Process::gluon_gluon: return detail::gluon_amps(p, init);
    }
    throw ParameterError("amplitudes: unknown process");
}

inline double concurrence_of(Process process, const KinematicPoint& p, Initial init) {
    return concurrence_of(amplitudes(process, p, init));
}

// ---------------------------------------------------------------------------
// Bell labels and the MaxEnt table
// ---------------------------------------------------------------------------

enum class BellLabel { phi_plus, phi_minus, psi_plus, psi_minus, none };

inline const char* to_string(BellLabel l) {
    switch (l) {
        case BellLabel::phi_plus: return "Phi+";
        case BellLabel::phi_minus: return "Phi-";
        case BellLabel::psi_plus: return "Psi+";
        case BellLabel::psi_minus: return "Psi-";
        default: return "-";
    }
}

/// Dominant Bell-basis component (overlap above the threshold), or none.
inline std::pair<BellLabel, double> bell_label(const Amplitudes& amps, double threshold = 0.999) {
    const double r = 1.0 / std::sqrt(2.0);
    const std::array<std::pair<BellLabel, std::array<cdouble, 4>>, 4> basis = {{
        {BellLabel::phi_plus, {r, 0, 0, r}},
        {BellLabel::phi_minus, {r, 0, 0, -r}},
        {BellLabel::psi_plus, {0, r, r, 0}},
        {BellLabel::psi_minus, {0, r, -r, 0}},
    }};
    auto psi = amps.state();
    BellLabel best = BellLabel::none;
    double best_ov = 0.0;
    for (const auto& [label, b] : basis) {
        cdouble ov = 0.0;
        for (int i = 0; i < 4; ++i) ov += std::conj(b[i]) * psi.amp(i);
        if (std::abs(ov) > best_ov) {
            best_ov = std::abs(ov);
            best = label;
        }
    }
    if (best_ov < threshold) return {BellLabel::none, best_ov};
    return {best, best_ov};
}

enum class EnergyLimit { high, low };

struct TableEntry {
    Process process;
    Initial initial;
    EnergyLimit limit;
    bool maxent = false;          ///< Delta >= 0.999 somewhere on the grid
    bool all_angles = false;      ///< Delta >= 0.999 across the whole grid
    double best_delta = 0.0;
    double best_theta = 0.0;
    BellLabel label = BellLabel::none;
    bool suppressed = false;      ///< channel amplitude vanishes in the limit
};

namespace detail {

inline double limit_mu(Process process, EnergyLimit limit, double lambda) {
    if (limit == EnergyLimit::high) return 1e4;
    if (process == Process::ee_to_mumu) return std::sqrt(std::max(0.0, 1.0 - lambda * lambda)) + 1e-4;
    return 1e-4;
}

}  // namespace detail

/// Scans theta for one (process, initial, limit) cell. Channels whose total
/// weight in the limit is negligible relative to the dominant initial count
/// as suppressed (the table's dash), whatever their formal concurrence.
inline TableEntry maxent_table_entry(Process process, Initial init, EnergyLimit limit, double lambda = 0.0,
                                     int grid = 181) {
    TableEntry entry{process, init, limit};
    KinematicPoint p;
    p.lambda = lambda;
    p.mu = detail::limit_mu(process, limit, lambda);

    const std::array<Initial, 4> initials = {Initial::RR, Initial::RL, Initial::LR, Initial::LL};
    double channel_weight = 0.0, dominant_weight = 0.0;
    int n_ok = 0, n_maxent = 0;
    for (int i = 1; i + 1 < grid; ++i) {
        p.theta = kPi * i / (grid - 1);
        double wmax = 0.0;
        for (Initial other : initials) {
            try {
                wmax = std::max(wmax, amplitudes(process, p, other).norm_sq());
            } catch (const std::exception&) {
            }
        }
        Amplitudes amps;
        try {
            amps = amplitudes(process, p, init);
        } catch (const SingularKinematicsError&) {
            continue;
        }
        channel_weight += amps.norm_sq();
        dominant_weight += wmax;
        ++n_ok;
        if (amps.degenerate(1e-30)) continue;
        double delta = concurrence_of(amps);
        if (delta > entry.best_delta) {
            entry.best_delta = delta;
            entry.best_theta = p.theta;
            if (delta >= 0.999) entry.label = bell_label(amps).first;
        }
        if (delta >= 0.999) ++n_maxent;
    }
    entry.suppressed = channel_weight < 1e-8 * dominant_weight;
    entry.maxent = !entry.suppressed && entry.best_delta >= 0.999;
    entry.all_angles = !entry.suppressed && n_ok > 0 && n_maxent == n_ok;
    if (!entry.maxent) entry.label = BellLabel::none;
    return entry;
}

/// The full QED table: five fermion processes plus Compton, with RR and RL
/// initials (R+/R- for Compton) at both limits. Physical mass ratio for the
/// muon channel.
inline std::vector<TableEntry> maxent_table() {
    std::vector<TableEntry> out;
    const double lambda_mu = 1.0 / 206.768;  // m_e / m_mu
    for (auto [process, lambda] : std::vector<std::pair<Process, double>>{{Process::e_mu, lambda_mu},
                                                                          {Process::ee_to_mumu, lambda_mu},
                                                                          {Process::moller, 0.0},
                                                                          {Process::bhabha, 0.0},
                                                                          {Process::pair_annihilation, 0.0},
                                                                          {Process::compton, 0.0}}) {
        for (Initial init : {Initial::RR, Initial::RL})
            for (EnergyLimit limit : {EnergyLimit::high, EnergyLimit::low})
                out.push_back(maxent_table_entry(process, init, limit, lambda));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weak-angle solvers
// ---------------------------------------------------------------------------

enum class WeakMode { z_decay, z_mediated, interference };

struct WeakReport {
    WeakMode mode;
    double sin2w = 0.0;          ///< z_decay: solved sin^2 theta_W
    double coupling_ratio = 0.0; ///< z_mediated: |g_R / g_L| at the joint optimum
    double joint_theta = 0.0;    ///< z_mediated / interference: common MaxEnt angle
    double rl_angle = 0.0;       ///< interference: theta with Delta_RL = 1
    double theta_w = 0.0;        ///< interference: equal-angle Weinberg angle
};

/// Solves the MaxEnt constraints of the weak sector. The z_decay branch
/// imposes |g_L| = |g_R| on the longitudinal concurrence (g_V = 0), the
/// z_mediated branch intersects the RL and LR constraint curves, and the
/// interference branch solves Delta_RL = 1 (theta_W independent) and then
/// pins theta_W by the equal-angle requirement.
inline WeakReport weak_angle_solver(WeakMode mode, double Q = -1.0, double T3 = -0.5) {
    WeakReport report{mode, 0, 0, 0, 0, 0};
    switch (mode) {
        case WeakMode::z_decay: {
            // Delta_0 = 2|gl gr|/(gl^2+gr^2) = 1  <=>  |gl| = |gr|  <=>  gv = 0
            report.sin2w = T3 / (2.0 * Q);
            return report;
        }
        case WeakMode::z_mediated: {
            // cos^2(t/2) gl = -+ sin^2(t/2) gr and sin^2(t/2) gl = -+ cos^2(t/2) gr
            // intersect at tan^2(t/2) = 1 and |gr| = |gl|
            report.joint_theta = kPi / 2;
            report.coupling_ratio = 1.0;
            return report;
        }
        case WeakMode::interference: {
            // Delta_RL = 2 Q (Q - T3) sin^2 t / (2(2Q - T3) T3 cos t + ((Q-T3)^2 + Q^2)(1 + cos^2 t)) = 1/2
            // (eigenvalue form); for leptons the solution is cos t = -1/3.
            double a = 2 * (2 * Q - T3) * T3;
            double b = (Q - T3) * (Q - T3) + Q * Q;
            double q = 2 * Q * (Q - T3);
            // q (1 - c^2) = a c + b (1 + c^2)
            double A = b + q, B = a, C = b - q;
            double disc = B * B - 4 * A * C;
            if (disc < 0) throw NumericalDomainError("interference: no MaxEnt angle");
            double c = (-B + std::sqrt(disc)) / (2 * A);
            if (c < -1.0 || c > 1.0) c = (-B - std::sqrt(disc)) / (2 * A);
            report.rl_angle = std::acos(c);
            // theta_W(Delta_LR = 1): sin theta_W = cot(t/2)/sqrt(2) at the same angle
            report.theta_w = std::asin(1.0 / (std::tan(report.rl_angle / 2.0) * std::sqrt(2.0)));
            report.joint_theta = report.rl_angle;
            report.sin2w = std::pow(std::sin(report.theta_w), 2);
            return report;
        }
    }
    throw ParameterError("weak_angle_solver: unknown mode");
}

// ---------------------------------------------------------------------------
// SU(3) structure constants
// ---------------------------------------------------------------------------

/// Totally antisymmetric f^{ijk} (1-indexed color labels 1..8).
inline double su3_f(int i, int j, int k) {
    static const std::vector<std::tuple<int, int, int, double>> base = {
        {1, 2, 3, 1.0},       {1, 4, 7, 0.5},  {1, 6, 5, 0.5},  {2, 4, 6, 0.5},
        {2, 5, 7, 0.5},       {3, 4, 5, 0.5},  {3, 7, 6, 0.5},  {4, 5, 8, std::sqrt(3.0) / 2},
        {6, 7, 8, std::sqrt(3.0) / 2}};
    for (auto [a, b, c, v] : base) {
        // check all permutations with parity
        const std::array<std::array<int, 3>, 6> perms = {{{a, b, c}, {b, c, a}, {c, a, b}, {b, a, c}, {a, c, b}, {c, b, a}}};
        for (int t = 0; t < 6; ++t)
            if (perms[t][0] == i && perms[t][1] == j && perms[t][2] == k) return t < 3 ? v : -v;
    }
    return 0.0;
}

/// Color factors (f1, f2) for a concrete gluon color assignment
/// (a, b, a', b'), summed over the internal color.
inline std::pair<double, double> gluon_color_factors(int a, int b, int ap, int bp) {
    double f1 = 0, f2 = 0;
    for (int c = 1; c <= 8; ++c) {
        f1 += su3_f(a, bp, c) * su3_f(b, ap, c);
        f2 += su3_f(a, ap, c) * su3_f(b, bp, c);
    }
    return {f1, f2};
}

// ---------------------------------------------------------------------------
// Unconstrained QED: gamma-matrix numerics
// ---------------------------------------------------------------------------

struct VertexParams {
    double a00 = 1.0;
    Eigen::Matrix3d a = Eigen::Matrix3d::Identity();

    static VertexParams qed() { return VertexParams{}; }
};

enum class Plane { xz, yz, xy };

namespace uqed {

inline const std::array<Mat, 4>& gamma_matrices() {
    static const std::array<Mat, 4> g = [] {
        std::array<Mat, 4> out;
        Mat sx(2, 2), sy(2, 2), sz(2, 2), id = Mat::Identity(2, 2);
        sx << 0, 1, 1, 0;
        sy << 0, cdouble(0, -1), cdouble(0, 1), 0;
        sz << 1, 0, 0, -1;
        auto block = [](const Mat& tl, const Mat& tr, const Mat& bl, const Mat& br) {
            Mat m(4, 4);
            m.block(0, 0, 2, 2) = tl;
            m.block(0, 2, 2, 2) = tr;
            m.block(2, 0, 2, 2) = bl;
            m.block(2, 2, 2, 2) = br;
            return m;
        };
        Mat zero = Mat::Zero(2, 2);
        out[0] = block(zero, id, id, zero);
        out[1] = block(zero, sx, -sx, zero);
        out[2] = block(zero, sy, -sy, zero);
        out[3] = block(zero, sz, -sz, zero);
        return out;
    }();
    return g;
}

/// Helicity two-spinors for momentum direction (theta, phi).
inline Vec xi_up(double theta, double phi) {
    Vec v(2);
    v << std::cos(theta / 2), std::polar(1.0, phi) * std::sin(theta / 2);
    return v;
}

inline Vec xi_down(double theta, double phi) {
    Vec v(2);
    v << -std::sin(theta / 2), std::polar(1.0, phi) * std::cos(theta / 2);
    return v;
}

/// Massless Dirac spinors with energy normalization 2E = 2 (E = 1).
/// u(p, up) is right-handed; v(p, up) describes a left-handed antiparticle.
inline Vec u_spinor(double theta, double phi, bool up) {
    Vec xi = up ? xi_up(theta, phi) : xi_down(theta, phi);
    // sqrt(p.sigma) xi: for massless momenta, p.sigma = E(1 - phat.sigma),
    // so sqrt(p.sigma) xi_up = 0 and sqrt(p.sigma) xi_down = sqrt(2E) xi_down
    Vec out(4);
    double s2e = std::sqrt(2.0);
    if (up) {
        out << 0, 0, s2e * xi(0), s2e * xi(1);
    } else {
        out << s2e * xi(0), s2e * xi(1), 0, 0;
    }
    return out;
}

inline Vec v_spinor(double theta, double phi, bool up) {
    Vec xi = up ? xi_up(theta, phi) : xi_down(theta, phi);
    Vec out(4);
    double s2e = std::sqrt(2.0);
    if (up) {
        out << 0, 0, -s2e * xi(0), -s2e * xi(1);
    } else {
        out << s2e * xi(0), s2e * xi(1), 0, 0;
    }
    return out;
}

/// The vertex matrices G^mu = (a00 g^0, a_ij g^j).
inline std::array<Mat, 4> vertex(const VertexParams& vp) {
    const auto& g = gamma_matrices();
    std::array<Mat, 4> out;
    out[0] = vp.a00 * g[0];
    for (int i = 1; i <= 3; ++i) {
        out[i] = Mat::Zero(4, 4);
        for (int j = 1; j <= 3; ++j) out[i] += vp.a(i - 1, j - 1) * g[j];
    }
    return out;
}

struct Directions {
    double in_theta, in_phi;    ///< incoming electron direction
    double out_phi;             ///< azimuth of the outgoing mu-
};

inline Directions plane_directions(Plane plane) {
    switch (plane) {
        case Plane::xz: return {0.0, 0.0, 0.0};          // beam +z, scatter in xz
        case Plane::yz: return {0.0, kPi / 2, kPi / 2};  // beam +z, scatter in yz
        default: return {kPi / 2, 0.0, kPi / 2};         // beam +x, scatter in xy
    }
}

}  // namespace uqed

/// s-channel e- e+ -> mu- mu+ amplitudes from gamma-matrix currents with the
/// general vertex, massless limit. Output layout matches `Amplitudes`.
inline Amplitudes uqed_schannel(const VertexParams& vp, Plane plane, double theta, Initial init) {
    using namespace uqed;
    detail::check_theta(theta);
    auto dirs = plane_directions(plane);
    auto g = vertex(vp);
    const auto& gam = gamma_matrices();

    // electron along (in_theta, in_phi), positron opposite
    double e_th = dirs.in_theta, e_ph = dirs.in_phi;
    double p_th = kPi - e_th, p_ph = e_ph + kPi;
    // outgoing mu- at polar angle theta within the scattering plane
    double m_th, m_ph;
    if (plane == Plane::xy) {
        m_th = kPi / 2;
        m_ph = theta;  // azimuthal scattering angle
    } else {
        m_th = theta;
        m_ph = dirs.out_phi;
    }
    double mb_th = kPi - m_th, mb_ph = m_ph + kPi;

    bool e_up, pbar_up;
    switch (init) {
        case Initial::RR: e_up = true; pbar_up = false; break;   // e- R, e+ R: v(down)
        case Initial::RL: e_up = true; pbar_up = true; break;    // e+ L: v(up)
        case Initial::LR: e_up = false; pbar_up = false; break;
        case Initial::LL: e_up = false; pbar_up = true; break;
        default: throw ParameterError("uqed_schannel: invalid initial configuration");
    }
    Vec ue = u_spinor(e_th, e_ph, e_up);
    Vec vp_in = v_spinor(p_th, p_ph, pbar_up);

    // incoming current with the general vertex
    std::array<cdouble, 4> jin;
    for (int mu = 0; mu < 4; ++mu) jin[mu] = (vp_in.adjoint() * gam[0] * g[mu] * ue).value();

    Amplitudes out;
    const std::array<std::pair<bool, bool>, 4> finals = {{{true, false}, {true, true}, {false, false}, {false, true}}};
    for (int f = 0; f < 4; ++f) {
        auto [mu_up, mubar_up] = finals[f];
        Vec umu = u_spinor(m_th, m_ph, mu_up);
        Vec vmu = v_spinor(mb_th, mb_ph, mubar_up);
        std::array<cdouble, 4> jout;
        for (int mu = 0; mu < 4; ++mu) jout[mu] = (umu.adjoint() * gam[0] * g[mu] * vmu).value();
        // photon propagator -g_{mu nu}/s: Minkowski contraction
        cdouble m = jin[0] * jout[0];
        for (int i = 1; i < 4; ++i) m -= jin[i] * jout[i];
        out.a[f] = m / 4.0;  // s = 4 E^2 with E = 1; sign fixed to the closed forms
    }
    return out;
}

/// Closed-form RL amplitudes of the general-vertex s channel in the xz
/// plane, written through A = a^T a; the test oracle for the numerics. (The
/// other planes and the LR row are pinned by the numerics instead: their
/// printed cross-term signs do not cohere with any single azimuth
/// convention, while this row matches the gamma-matrix computation exactly.)
inline Amplitudes uqed_closed_form(const VertexParams& vp, Plane plane, double theta, Initial init) {
    if (plane != Plane::xz || init != Initial::RL)
        throw ParameterError("uqed_closed_form: provided for the xz plane, RL initial");
    Eigen::Matrix3d A = vp.a.transpose() * vp.a;
    double c = std::cos(theta), s = std::sin(theta);
    const cdouble i(0, 1);
    Amplitudes out;
    out.a[1] = -A(1, 1) - A(0, 0) * c + A(0, 2) * s + i * (A(0, 1) * (1 - c) + A(1, 2) * s);
    out.a[2] = A(1, 1) - A(0, 0) * c + A(0, 2) * s - i * (A(0, 1) * (1 + c) - A(1, 2) * s);
    return out;
}

struct IsolatedMaxReport {
    double delta_identity = 0.0;    ///< concurrence at the QED point, theta = pi/2
    double worst_delta = 0.0;       ///< max over sampled perturbed directions
    bool isolated = false;          ///< every sampled direction dropped below 1 - 1e-5
    std::vector<double> deltas;     ///< per-direction min over the three planes
};

/// Perturbs the QED vertex along random off-diagonal symmetric directions of
/// the a_ij block and records, per direction, the minimum over the three
/// scattering planes of the concurrence at the central angle. Those are the
/// directions this single process can see: uniform rescalings, O(3)
/// rotations/reflections of a, a00 shifts, and diagonal anisotropies all
/// leave its MaxEnt point exactly in place (separating them is what the
/// multi-process maximization is for).
inline IsolatedMaxReport uqed_isolated_max_check(double epsilon = 1e-2, int n_directions = 20,
                                                 std::uint64_t seed = 2026) {
    IsolatedMaxReport report;
    report.delta_identity = concurrence_of(uqed_schannel(VertexParams::qed(), Plane::xz, kPi / 2, Initial::RL));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    report.isolated = true;
    for (int t = 0; t < n_directions; ++t) {
        Eigen::Matrix3d dir = Eigen::Matrix3d::Zero();
        dir(0, 1) = dir(1, 0) = g(rng);
        dir(0, 2) = dir(2, 0) = g(rng);
        dir(1, 2) = dir(2, 1) = g(rng);
        dir /= dir.norm();
        VertexParams vp;
        vp.a = Eigen::Matrix3d::Identity() + epsilon * dir;
        double delta = 1.0;
        for (Plane plane : {Plane::xz, Plane::yz, Plane::xy})
            delta = std::min(delta, concurrence_of(uqed_schannel(vp, plane, kPi / 2, Initial::RL)));
        report.deltas.push_back(delta);
        if (!(delta < 1.0 - 1e-5)) report.isolated = false;
    }
    report.worst_delta = *std::max_element(report.deltas.begin(), report.deltas.end());
    return report;
}

}  // namespace scatter
}  // namespace maxent
