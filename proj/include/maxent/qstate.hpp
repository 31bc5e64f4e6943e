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

/// Pure states, density matrices and the entanglement primitives built on
/// them: partial trace, entropies, Schmidt analysis, two-qubit concurrence
/// and majorization. Everything downstream uses the big-endian site
/// convention fixed here: the basis ket |s0 s1 ... s_{n-1}> has amplitude
/// index sum_i s_i * d^(n-1-i), site 0 being the leftmost symbol.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "maxent/core.hpp"

namespace maxent {

class StateVector {
  public:
    // dense simulation only; 2^20 amplitudes is the supported ceiling
    static constexpr double kMaxDim = 1048576.0;

    StateVector(int n_sites, int local_dim)
        : n_sites_(n_sites), local_dim_(local_dim) {
        if (n_sites < 1 || local_dim < 2) throw DimensionError("StateVector: need n_sites >= 1, local_dim >= 2");
        if (n_sites * std::log2(double(local_dim)) > std::log2(kMaxDim) + 1e-9)
            throw DimensionError("StateVector: dimension exceeds the dense-simulation cap (2^20)");
        amps_ = Vec::Zero(static_cast<long>(ipow(local_dim, n_sites)));
        amps_(0) = 1.0;
    }

    StateVector(int n_sites, int local_dim, Vec amplitudes)
        : n_sites_(n_sites), local_dim_(local_dim), amps_(std::move(amplitudes)) {
        if (n_sites < 1 || local_dim < 2) throw DimensionError("StateVector: need n_sites >= 1, local_dim >= 2");
        if (static_cast<std::size_t>(amps_.size()) != ipow(local_dim, n_sites))
            throw DimensionError("StateVector: amplitude length does not match d^n");
    }

    int n_sites() const { return n_sites_; }
    int local_dim() const { return local_dim_; }
    long dim() const { return amps_.size(); }
    const Vec& amplitudes() const { return amps_; }
    Vec& amplitudes() { return amps_; }
    cdouble amp(long i) const { return amps_(i); }

    double norm() const { return amps_.norm(); }

    StateVector& normalize() {
        double n = amps_.norm();
        if (n < 1e-300) throw NumericalDomainError("StateVector::normalize: zero state");
        amps_ /= n;
        return *this;
    }

    StateVector normalized() const {
        StateVector s = *this;
        s.normalize();
        return s;
    }

    /// Amplitude index of |digits[0] digits[1] ...> (site 0 leftmost).
    long index_of(const std::vector<int>& digits) const {
        long idx = 0;
        for (int s : digits) idx = idx * local_dim_ + s;
        return idx;
    }

    std::vector<int> digits_of(long index) const {
        std::vector<int> d(n_sites_);
        for (int i = n_sites_ - 1; i >= 0; --i) {
            d[i] = static_cast<int>(index % local_dim_);
            index /= local_dim_;
        }
        return d;
    }

    cdouble overlap(const StateVector& other) const {
        if (other.dim() != dim()) throw DimensionError("overlap: dimension mismatch");
        return amps_.dot(other.amps_);  // conj(this) . other
    }

    static StateVector basis(int n_sites, int local_dim, const std::vector<int>& digits) {
        StateVector s(n_sites, local_dim);
        s.amps_.setZero();
        s.amps_(s.index_of(digits)) = 1.0;
        return s;
    }

  private:
    int n_sites_;
    int local_dim_;
    Vec amps_;
};

class DensityMatrix {
  public:
    DensityMatrix(int n_sites, int local_dim, Mat m)
        : n_sites_(n_sites), local_dim_(local_dim), m_(std::move(m)) {
        long d = static_cast<long>(ipow(local_dim, n_sites));
        if (m_.rows() != d || m_.cols() != d) throw DimensionError("DensityMatrix: matrix side does not match d^n");
    }

    static DensityMatrix from_pure(const StateVector& psi) {
        return DensityMatrix(psi.n_sites(), psi.local_dim(), psi.amplitudes() * psi.amplitudes().adjoint());
    }

    int n_sites() const { return n_sites_; }
    int local_dim() const { return local_dim_; }
    long dim() const { return m_.rows(); }
    const Mat& matrix() const { return m_; }

    double hermiticity_defect() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }
    double trace_defect() const { return std::abs(m_.trace() - cdouble(1.0, 0.0)); }

    /// Eigenvalues ascending; values in [-1e-10, 0) are clamped to zero,
    /// anything more negative raises a numerical-domain error.
    RVec eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
        RVec ev = es.eigenvalues();
        for (long i = 0; i < ev.size(); ++i) {
            if (ev(i) < -1e-10)
                throw NumericalDomainError("DensityMatrix: eigenvalue below -1e-10: " + std::to_string(ev(i)));
            if (ev(i) < 0.0) ev(i) = 0.0;
        }
        return ev;
    }

    double purity() const { return (m_ * m_).trace().real(); }

  private:
    int n_sites_;
    int local_dim_;
    Mat m_;
};

namespace detail {

inline void check_keep(const std::vector<int>& keep, int n_sites) {
    if (keep.empty()) throw PartitionError("partial_trace: keep set is empty");
    std::set<int> s(keep.begin(), keep.end());
    if (s.size() != keep.size()) throw PartitionError("partial_trace: repeated site index");
    if (*s.begin() < 0 || *s.rbegin() >= n_sites) throw PartitionError("partial_trace: site index out of range");
    if (static_cast<int>(s.size()) == n_sites) throw PartitionError("partial_trace: keep set must be a strict subset");
}

/// Splits a full basis index into (kept digits index, traced digits index).
struct IndexSplit {
    std::vector<int> keep_sites;
    std::vector<int> rest_sites;
    int local_dim;
    int n_sites;

    IndexSplit(std::vector<int> keep, int n, int d) : keep_sites(std::move(keep)), local_dim(d), n_sites(n) {
        std::sort(keep_sites.begin(), keep_sites.end());
        std::set<int> ks(keep_sites.begin(), keep_sites.end());
        for (int i = 0; i < n; ++i)
            if (!ks.count(i)) rest_sites.push_back(i);
    }

    long full_index(long keep_idx, long rest_idx) const {
        std::vector<int> digits(n_sites, 0);
        for (int i = static_cast<int>(keep_sites.size()) - 1; i >= 0; --i) {
            digits[keep_sites[i]] = static_cast<int>(keep_idx % local_dim);
            keep_idx /= local_dim;
        }
        for (int i = static_cast<int>(rest_sites.size()) - 1; i >= 0; --i) {
            digits[rest_sites[i]] = static_cast<int>(rest_idx % local_dim);
            rest_idx /= local_dim;
        }
        long idx = 0;
        for (int s : digits) idx = idx * local_dim + s;
        return idx;
    }
};

}  // namespace detail

inline DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep) {
    detail::check_keep(keep, psi.n_sites());
    detail::IndexSplit split(keep, psi.n_sites(), psi.local_dim());
    long dk = static_cast<long>(ipow(psi.local_dim(), split.keep_sites.size()));
    long dr = static_cast<long>(ipow(psi.local_dim(), split.rest_sites.size()));
    Mat rho = Mat::Zero(dk, dk);
    for (long a = 0; a < dk; ++a)
        for (long b = 0; b <= a; ++b) {
            cdouble acc = 0.0;
            for (long r = 0; r < dr; ++r)
                acc += psi.amp(split.full_index(a, r)) * std::conj(psi.amp(split.full_index(b, r)));
            rho(a, b) = acc;
            rho(b, a) = std::conj(acc);
        }
    return DensityMatrix(static_cast<int>(split.keep_sites.size()), psi.local_dim(), std::move(rho));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    detail::check_keep(keep, rho.n_sites());
    detail::IndexSplit split(keep, rho.n_sites(), rho.local_dim());
    long dk = static_cast<long>(ipow(rho.local_dim(), split.keep_sites.size()));
    long dr = static_cast<long>(ipow(rho.local_dim(), split.rest_sites.size()));
    Mat out = Mat::Zero(dk, dk);
    for (long a = 0; a < dk; ++a)
        for (long b = 0; b < dk; ++b) {
            cdouble acc = 0.0;
            for (long r = 0; r < dr; ++r) acc += rho.matrix()(split.full_index(a, r), split.full_index(b, r));
            out(a, b) = acc;
        }
    return DensityMatrix(static_cast<int>(split.keep_sites.size()), rho.local_dim(), std::move(out));
}

/// Von Neumann entropy. The log base defaults to the local dimension so that
/// maximally mixed k-site reductions read k. Eigenvalues below 1e-14
/// contribute nothing.
inline double von_neumann_entropy(const DensityMatrix& rho, double log_base = 0.0) {
    if (log_base == 0.0) log_base = rho.local_dim();
    if (log_base <= 1.0) throw ParameterError("von_neumann_entropy: log base must exceed 1");
    RVec ev = rho.eigenvalues();
    double s = 0.0;
    for (long i = 0; i < ev.size(); ++i)
        if (ev(i) > 1e-14) s -= ev(i) * std::log(ev(i));
    return s / std::log(log_base);
}

inline double entropy_from_spectrum(const RVec& ev, double log_base) {
    double s = 0.0;
    for (long i = 0; i < ev.size(); ++i)
        if (ev(i) > 1e-14) s -= ev(i) * std::log(ev(i));
    return s / std::log(log_base);
}

enum class EntropyKind { renyi, tsallis };

inline double renyi_tsallis_entropy(const DensityMatrix& rho, double alpha, EntropyKind kind, double log_base = 0.0) {
    if (alpha <= 0.0 || alpha == 1.0) throw ParameterError("renyi_tsallis_entropy: need alpha > 0, alpha != 1");
    if (log_base == 0.0) log_base = rho.local_dim();
    RVec ev = rho.eigenvalues();
    double tr = 0.0;
    for (long i = 0; i < ev.size(); ++i)
        if (ev(i) > 1e-14) tr += std::pow(ev(i), alpha);
    if (kind == EntropyKind::renyi) return std::log(tr) / std::log(log_base) / (1.0 - alpha);
    return (tr - 1.0) / (1.0 - alpha);
}

struct SchmidtDecomposition {
    RVec coefficients;            ///< nonincreasing, nonnegative
    Mat left_basis;               ///< columns |u_i>
    Mat right_basis;              ///< columns |v_i>
    int rank = 0;                 ///< coefficients above rank_tolerance
    static constexpr double rank_tolerance = 1e-10;
};

/// Schmidt decomposition across the bipartition (left sites | rest), via SVD
/// of the reshaped coefficient matrix.
inline SchmidtDecomposition schmidt(const StateVector& psi, const std::vector<int>& left) {
    detail::check_keep(left, psi.n_sites());
    detail::IndexSplit split(left, psi.n_sites(), psi.local_dim());
    long dl = static_cast<long>(ipow(psi.local_dim(), split.keep_sites.size()));
    long dr = static_cast<long>(ipow(psi.local_dim(), split.rest_sites.size()));
    Mat coeff(dl, dr);
    for (long a = 0; a < dl; ++a)
        for (long r = 0; r < dr; ++r) coeff(a, r) = psi.amp(split.full_index(a, r));
    Eigen::JacobiSVD<Mat> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtDecomposition out;
    out.coefficients = svd.singularValues();
    out.left_basis = svd.matrixU();
    out.right_basis = svd.matrixV().conjugate();
    out.rank = 0;
    for (long i = 0; i < out.coefficients.size(); ++i)
        if (out.coefficients(i) > SchmidtDecomposition::rank_tolerance) ++out.rank;
    return out;
}

/// Two-qubit pure-state concurrence 2|ad - bc|.
inline double concurrence(const StateVector& psi) {
    if (psi.n_sites() != 2 || psi.local_dim() != 2) throw DimensionError("concurrence: need a two-qubit state");
    return 2.0 * std::abs(psi.amp(0) * psi.amp(3) - psi.amp(1) * psi.amp(2));
}

/// Prefix-sum dominance of sorted-descending vectors with equal totals.
inline bool majorizes(const std::vector<double>& a, const std::vector<double>& b, double tolerance = 1e-10) {
    if (a.size() != b.size()) throw ParameterError("majorizes: length mismatch");
    double sa = std::accumulate(a.begin(), a.end(), 0.0);
    double sb = std::accumulate(b.begin(), b.end(), 0.0);
    if (std::abs(sa - sb) > 1e-9) throw ParameterError("majorizes: sums differ beyond 1e-9");
    std::vector<double> as = a, bs = b;
    std::sort(as.begin(), as.end(), std::greater<>());
    std::sort(bs.begin(), bs.end(), std::greater<>());
    double pa = 0.0, pb = 0.0;
    for (std::size_t k = 0; k + 1 < as.size(); ++k) {
        pa += as[k];
        pb += bs[k];
        if (pa < pb - tolerance) return false;
    }
    return true;
}

inline std::vector<double> to_std(const RVec& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace maxent
