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

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace maxent {

using cdouble = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PartitionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NumericalDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EnumerationBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonexistenceError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SingularKinematicsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateAmplitudeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integer power for small bases; dims here never exceed 64-bit range.
inline std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    while (exp--) r *= base;
    return r;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// splitmix64 step, used to derive independent per-sample seeds from a master
/// seed so results do not depend on iteration or thread order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = master ^ (index * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL);
    return a ^ splitmix64(s);
}

/// Thread cap taken from MAXENT_THREADS; defaults to hardware concurrency.
inline unsigned max_threads() {
    if (const char* env = std::getenv("MAXENT_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Index-parallel loop. Work items must be independent; each receives its own
/// index so seeded computations stay deterministic under any thread count.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    unsigned nthreads = std::min<std::size_t>(max_threads(), count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += nthreads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace maxent
