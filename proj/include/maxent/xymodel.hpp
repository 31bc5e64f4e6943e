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

/// Exact gate-level diagonalization of the XY chain: the disentangling
/// circuit (Bogoliubov + fermionic fast Fourier blocks over Jordan-Wigner
/// modes), mode spectrum, magnetization, exact time evolution and thermal
/// expectation values.
///
/// The ground truth for verification is the modified XY Hamiltonian whose
/// string terms cancel the periodic boundary after Jordan-Wigner. The field
/// term enters as -lambda sum sigma_z (spins aligned with +z are favored),
/// which keeps the ground-ket table, the saturation magnetization and the
/// closed-form transverse magnetization mutually consistent.

#pragma once

#include <random>

#include "maxent/invariants.hpp"
#include "maxent/qcircuit.hpp"

namespace maxent {
namespace xy {

struct XYParams {
    int n = 4;
    double J = 1.0;
    double gamma = 1.0;
    double lambda = 1.0;
};

inline void check_size(const XYParams& p) {
    if (p.n < 2 || (p.n & (p.n - 1)) != 0)
        throw ParameterError("xy: the Fourier ladder needs n = 2^m (n = 4 is the reference instance)");
}

/// omega_k = sqrt((J cos(2 pi k / n) + lambda)^2 + J^2 gamma^2 sin^2(2 pi k / n)).
inline double omega(const XYParams& p, int k) {
    double c = std::cos(2.0 * kPi * k / p.n), s = std::sin(2.0 * kPi * k / p.n);
    return std::sqrt((p.J * c + p.lambda) * (p.J * c + p.lambda) + p.J * p.J * p.gamma * p.gamma * s * s);
}

/// Mode frequencies indexed k = -n/2+1 .. n/2.
struct Spectrum {
    int n;
    std::vector<double> omegas;  ///< omegas[i] for k = i - n/2 + 1
    double omega_of(int k) const { return omegas.at(k + n / 2 - 1); }
};

inline Spectrum spectrum(const XYParams& p) {
    Spectrum s{p.n, {}};
    for (int k = -p.n / 2 + 1; k <= p.n / 2; ++k) s.omegas.push_back(omega(p, k));
    return s;
}

// ---------------------------------------------------------------------------
// Hamiltonians
// ---------------------------------------------------------------------------

/// Plain periodic XY chain, exposed separately for comparison plots.
inline Mat xy_hamiltonian_periodic(const XYParams& p) {
    using inv::site_op;
    long dim = static_cast<long>(ipow(2, p.n));
    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i < p.n; ++i) {
        int j = (i + 1) % p.n;
        h += p.J * ((1 + p.gamma) / 2 * site_op(1, i, p.n) * site_op(1, j, p.n) +
                    (1 - p.gamma) / 2 * site_op(2, i, p.n) * site_op(2, j, p.n));
        h -= p.lambda * site_op(3, i, p.n);
    }
    return h;
}

/// Angle of the pair rotation that clears the pairing block of mode pair
/// (k, n-k) in this circuit's mode phases: tan(theta) = -Delta_k / xi_k. Its
/// magnitude is half the textbook Bogoliubov angle.
inline double pair_rotation_angle(const XYParams& p, int k) {
    double delta = p.J * p.gamma * std::sin(2.0 * kPi * k / p.n);
    double xi = p.J * std::cos(2.0 * kPi * k / p.n) + p.lambda;
    if (delta == 0.0) return 0.0;
    return -std::atan2(delta, xi);
}

/// Modified XY chain: the boundary bond is replaced by the Jordan-Wigner
/// string bond (note the crossed anisotropy assignment: the sigma_y string
/// carries (1+gamma)/2). This spin operator equals the periodic free-fermion
/// Hamiltonian exactly, which is what the circuit diagonalizes at finite n.
inline Mat xy_hamiltonian_modified(const XYParams& p) {
    using inv::site_op;
    long dim = static_cast<long>(ipow(2, p.n));
    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i + 1 < p.n; ++i) {
        h += p.J * ((1 + p.gamma) / 2 * site_op(1, i, p.n) * site_op(1, i + 1, p.n) +
                    (1 - p.gamma) / 2 * site_op(2, i, p.n) * site_op(2, i + 1, p.n));
    }
    for (int i = 0; i < p.n; ++i) h -= p.lambda * site_op(3, i, p.n);
    Mat stringy = site_op(2, 0, p.n), stringx = site_op(1, 0, p.n);
    for (int i = 1; i + 1 < p.n; ++i) {
        stringy = stringy * site_op(3, i, p.n);
        stringx = stringx * site_op(3, i, p.n);
    }
    stringy = stringy * site_op(2, p.n - 1, p.n);
    stringx = stringx * site_op(1, p.n - 1, p.n);
    h += p.J * ((1 + p.gamma) / 2 * stringy + (1 - p.gamma) / 2 * stringx);
    return h;
}

inline Mat sigma_z_total(int n) {
    using inv::site_op;
    long dim = static_cast<long>(ipow(2, n));
    Mat m = Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i) m += site_op(3, i, n);
    return m;
}

// ---------------------------------------------------------------------------
// Disentangling circuit
// ---------------------------------------------------------------------------

enum class Connectivity { full, linear };

namespace detail {

/// Tracks which label lives on which wire while emitting fSWAPs.
struct WireRouter {
    Circuit& circuit;
    std::vector<int> label_of;  ///< wire -> label
    int fresh = -1;             ///< next intermediate label

    int wire_of(int label) const {
        for (std::size_t w = 0; w < label_of.size(); ++w)
            if (label_of[w] == label) return static_cast<int>(w);
        throw ParameterError("WireRouter: unknown label");
    }

    void fswap_wires(int w) {  // swaps wires w, w+1
        circuit.add(gates::fswap(), {w, w + 1});
        std::swap(label_of[w], label_of[w + 1]);
    }

    /// Moves the wire holding `label` to position `target` by adjacent swaps.
    void bring_to(int label, int target) {
        int w = wire_of(label);
        while (w > target) {
            fswap_wires(w - 1);
            --w;
        }
        while (w < target) {
            fswap_wires(w);
            ++w;
        }
    }
};

/// Forward fermionic fast Fourier transform on the block whose inputs carry
/// `in_labels` (position order within the block). Returns the labels of the
/// block modes k = 0..m-1; intermediate labels are freshly generated so
/// recursive halves never collide. The emitted wire order is the bit-reversal
/// interleaving produced by the butterfly stage.
inline std::vector<int> fft_block(WireRouter& r, int lo, const std::vector<int>& in_labels) {
    const int m = static_cast<int>(in_labels.size());
    if (m == 1) return in_labels;
    std::vector<int> evens, odds;
    for (int j = 0; j < m; ++j) (j % 2 == 0 ? evens : odds).push_back(in_labels[j]);
    std::vector<int> target_order = evens;
    target_order.insert(target_order.end(), odds.begin(), odds.end());
    for (int pos = 0; pos < m; ++pos) r.bring_to(target_order[pos], lo + pos);

    auto top = fft_block(r, lo, evens);
    auto bot = fft_block(r, lo + m / 2, odds);

    std::vector<int> out(m);
    for (int k = 0; k < m / 2; ++k) {
        r.bring_to(top[k], lo + 2 * k);
        r.bring_to(bot[k], lo + 2 * k + 1);
        r.circuit.add(gates::fft_butterfly(k, m), {lo + 2 * k, lo + 2 * k + 1});
        int label_k = r.fresh--;
        int label_k2 = r.fresh--;
        r.label_of[lo + 2 * k] = label_k;
        r.label_of[lo + 2 * k + 1] = label_k2;
        out[k] = label_k;
        out[k + m / 2] = label_k2;
    }
    return out;
}

}  // namespace detail

/// Forward transformation W (positions -> Bogoliubov modes) as a circuit;
/// U_dis is its inverse. Mode k of the final layout lives on the wire
/// recorded in `mode_wire`, with labels folded to -n/2+1 .. n/2.
struct DisentanglingCircuit {
    Circuit udis;            ///< maps computational kets to eigenstates
    Circuit forward;         ///< W = Bog . FFT (positions to modes)
    std::vector<int> mode_of_wire;
};

inline DisentanglingCircuit build_udis(const XYParams& p, Connectivity connectivity = Connectivity::linear) {
    check_size(p);
    Circuit fw;
    fw.n_sites = p.n;
    fw.local_dim = 2;
    detail::WireRouter router{fw, {}, -1};
    router.label_of.resize(p.n);
    std::vector<int> positions(p.n);
    for (int j = 0; j < p.n; ++j) {
        router.label_of[j] = j;
        positions[j] = j;
    }
    auto mode_labels = detail::fft_block(router, 0, positions);
    // rename intermediate labels to the physical mode indices 0..n-1
    for (int k = 0; k < p.n; ++k) router.label_of[router.wire_of(mode_labels[k])] = k;

    // Bogoliubov pairs (k, n-k); modes 0 and n/2 are already diagonal.
    for (int k = 1; k < p.n / 2; ++k) {
        int wk = router.wire_of(k), wmk = router.wire_of(p.n - k);
        int anchor = std::min(wk, wmk);
        router.bring_to(k, anchor);
        router.bring_to(p.n - k, anchor + 1);
        fw.add(gates::pair_rotation(pair_rotation_angle(p, k)), {anchor, anchor + 1});
    }

    DisentanglingCircuit out;
    out.forward = fw;
    out.udis = fw.inverse();
    out.mode_of_wire = router.label_of;
    for (auto& m : out.mode_of_wire)
        if (m > p.n / 2) m -= p.n;  // fold to -n/2+1 .. n/2

    if (connectivity == Connectivity::full && p.n == 4) {
        // Direct layout without routing swaps: the trailing
        // fSWAP . [F0(0,1), F0(2,3)] . fSWAP sandwich becomes two dense
        // three-wire blocks acting on next-nearest pairs.
        const auto& steps = out.udis.steps;
        Circuit compact;
        compact.n_sites = 4;
        compact.local_dim = 2;
        std::vector<Step> tail;
        for (const auto& s : steps) {
            if (s.gate.name.rfind("fSWAP", 0) == 0 || !tail.empty()) {
                tail.push_back(s);
                continue;
            }
            compact.steps.push_back(s);
        }
        // tail = [fSWAP(1,2), G_a, G_b, fSWAP(1,2)] with G_a, G_b disjoint;
        // each conjugated gate spans three contiguous wires
        if (tail.size() == 4) {
            for (std::size_t gi = 1; gi <= 2; ++gi) {
                int lo = std::min({tail[gi].targets[0], tail[gi].targets[1], tail[0].targets[0]});
                int hi = std::max({tail[gi].targets[0], tail[gi].targets[1], tail[0].targets[1]});
                Circuit sub;
                sub.n_sites = hi - lo + 1;
                sub.local_dim = 2;
                auto shifted = [lo](std::vector<int> t) {
                    for (auto& v : t) v -= lo;
                    return t;
                };
                sub.add(tail[0].gate, shifted(tail[0].targets));
                sub.add(tail[gi].gate, shifted(tail[gi].targets));
                sub.add(tail[3].gate, shifted(tail[3].targets));
                std::vector<int> tg;
                for (int t = lo; t <= hi; ++t) tg.push_back(t);
                compact.add(gates::raw("ferm2", sub.n_sites, 2, unitary_of(sub)), tg);
            }
            out.udis = compact;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact diagonal data
// ---------------------------------------------------------------------------

/// Diagonal of U_dis^dagger H U_dis (the per-ket energies E_b) plus the
/// largest off-diagonal magnitude, from the dense Hamiltonian.
struct DiagonalData {
    RVec energies;
    double max_offdiag;
};

inline DiagonalData diagonalize_by_circuit(const XYParams& p, const Circuit& udis) {
    Mat h = xy_hamiltonian_modified(p);
    Mat u = unitary_of(udis);
    Mat d = u.adjoint() * h * u;
    DiagonalData out;
    out.energies = d.diagonal().real();
    Mat off = d;
    off.diagonal().setZero();
    out.max_offdiag = off.cwiseAbs().maxCoeff();
    return out;
}

/// Ground-state transverse magnetization <sum sigma_z>/n via the circuit:
/// picks the computational ket of minimal diagonal energy and applies U_dis.
inline double ground_state_magnetization(const XYParams& p) {
    auto dis = build_udis(p);
    auto diag = diagonalize_by_circuit(p, dis.udis);
    long b0 = 0;
    diag.energies.minCoeff(&b0);
    StateVector ket(p.n, 2);
    ket.amplitudes().setZero();
    ket.amplitudes()(b0) = 1.0;
    auto gs = apply(dis.udis, ket);
    Mat mz = sigma_z_total(p.n);
    return std::real(gs.amplitudes().dot(mz * gs.amplitudes())) / p.n;
}

/// Closed-form transverse magnetization for the all-up initial state of the
/// Ising chain (J = gamma = 1, n = 4).
inline double sigma_z_evolution_closed(double lambda, double t) {
    return (1.0 + 2.0 * lambda * lambda + std::cos(4.0 * t * std::sqrt(1.0 + lambda * lambda))) /
           (2.0 + 2.0 * lambda * lambda);
}

/// Circuit-path evolution of |0000>: rotate into the diagonal basis, attach
/// the relative phase, entangle the Bogoliubov pair, then disentangle.
inline double time_evolve_all_up(const XYParams& p, double t) {
    if (p.n != 4) throw ParameterError("time_evolve_all_up: reference instance is n = 4");
    auto dis = build_udis(p);
    auto diag = diagonalize_by_circuit(p, dis.udis);

    // |0000> = U_dis (cos(phi/2)|b0> + i sin(phi/2)|b1>): read the two-ket
    // decomposition off U_dis^dagger |0000>.
    StateVector all_up(4, 2);
    auto in_diag = apply(dis.udis.inverse(), all_up);
    // evolve with per-ket phases and map back
    for (long b = 0; b < in_diag.dim(); ++b)
        in_diag.amplitudes()(b) *= std::polar(1.0, -diag.energies(b) * t);
    auto evolved = apply(dis.udis, in_diag);
    Mat mz = sigma_z_total(4);
    return std::real(evolved.amplitudes().dot(mz * evolved.amplitudes())) / 4.0;
}

/// Same expectation built from the explicit preparation circuit of the
/// reference instance: Ry on the pair wire, phase, CNOT, then U_dis.
inline double time_evolve_all_up_gates(const XYParams& p, double t) {
    if (p.n != 4) throw ParameterError("time_evolve_all_up_gates: reference instance is n = 4");
    auto dis = build_udis(p);
    auto diag = diagonalize_by_circuit(p, dis.udis);
    // locate the paired kets: U_dis^dagger|0000> is supported on two kets
    StateVector all_up(4, 2);
    auto in_diag = apply(dis.udis.inverse(), all_up);
    long b0 = -1, b1 = -1;
    for (long b = 0; b < in_diag.dim(); ++b) {
        if (std::abs(in_diag.amp(b)) < 1e-12) continue;
        if (b0 < 0)
            b0 = b;
        else
            b1 = b;
    }
    if (b1 < 0) {  // already an eigenstate (gamma = 0 or the trivial corner)
        return std::real(all_up.amplitudes().dot(sigma_z_total(4) * all_up.amplitudes())) / 4.0;
    }
    cdouble a0 = in_diag.amp(b0), a1 = in_diag.amp(b1);
    double phi = 2.0 * std::atan2(std::abs(a1), std::abs(a0));
    double relative = (diag.energies(b0) - diag.energies(b1)) * t + std::arg(a1) - std::arg(a0);

    // the two kets differ in exactly the Bogoliubov pair wires
    auto bits0 = all_up.digits_of(b0), bits1 = all_up.digits_of(b1);
    std::vector<int> flips;
    for (int q = 0; q < 4; ++q)
        if (bits0[q] != bits1[q]) flips.push_back(q);
    if (flips.size() != 2) throw NumericalDomainError("time_evolve_all_up_gates: unexpected pair structure");

    Circuit prep;
    prep.n_sites = 4;
    prep.local_dim = 2;
    prep.add(gates::ry(-phi), {flips[0]});
    prep.add(gates::ph(relative), {flips[0]});
    prep.add(gates::cnot(), {flips[0], flips[1]});
    StateVector seed(4, 2);
    seed.amplitudes().setZero();
    seed.amplitudes()(b0) = 1.0;
    // prep acts relative to |b0>; Ry flips within the pair subspace
    StateVector prepared = apply(prep, seed);
    StateVector evolved = apply(dis.udis, prepared);
    // global dynamical phase on |b0> is unobservable in <sigma_z>
    Mat mz = sigma_z_total(4);
    return std::real(evolved.amplitudes().dot(mz * evolved.amplitudes())) / 4.0;
}

// ---------------------------------------------------------------------------
// Thermal expectation values
// ---------------------------------------------------------------------------

enum class ThermalMode { exact, sampling };

struct ThermalResult {
    double value = 0.0;
    double stderr_est = 0.0;  ///< 0 in exact mode
};

/// <O>_beta over the circuit eigenbasis. Exact mode sums all 2^n kets;
/// sampling mode draws kets from the Boltzmann weights by inverse CDF
/// (n <= 12) and reports the sample mean with its standard error.
inline ThermalResult thermal_expectation(const XYParams& p, double beta, const Mat& observable,
                                         ThermalMode mode = ThermalMode::exact, std::size_t n_samples = 10000,
                                         std::uint64_t seed = 1) {
    if (beta < 0) throw ParameterError("thermal_expectation: beta >= 0 required");
    auto dis = build_udis(p);
    auto diag = diagonalize_by_circuit(p, dis.udis);
    const long dim = static_cast<long>(ipow(2, p.n));

    std::vector<double> ket_value(dim);
    auto eval_ket = [&](long b) {
        StateVector ket(p.n, 2);
        ket.amplitudes().setZero();
        ket.amplitudes()(b) = 1.0;
        auto ev = apply(dis.udis, ket);
        return std::real(ev.amplitudes().dot(observable * ev.amplitudes()));
    };

    double emin = diag.energies.minCoeff();
    if (mode == ThermalMode::exact) {
        double z = 0.0, acc = 0.0;
        for (long b = 0; b < dim; ++b) {
            double w = std::exp(-beta * (diag.energies(b) - emin));
            acc += w * eval_ket(b);
            z += w;
        }
        return {acc / z, 0.0};
    }

    if (p.n > 12) throw ParameterError("thermal_expectation: sampler supports n <= 12");
    std::vector<double> cdf(dim);
    double z = 0.0;
    for (long b = 0; b < dim; ++b) {
        z += std::exp(-beta * (diag.energies(b) - emin));
        cdf[b] = z;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> cache(dim, std::numeric_limits<double>::quiet_NaN());
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        double r = u(rng) * z;
        long b = static_cast<long>(std::lower_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
        if (b >= dim) b = dim - 1;
        if (std::isnan(cache[b])) cache[b] = eval_ket(b);
        sum += cache[b];
        sum_sq += cache[b] * cache[b];
    }
    double mean = sum / double(n_samples);
    double var = std::max(0.0, sum_sq / double(n_samples) - mean * mean);
    return {mean, std::sqrt(var / double(n_samples))};
}

}  // namespace xy
}  // namespace maxent
