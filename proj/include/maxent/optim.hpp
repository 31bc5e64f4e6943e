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

/// Derivative-free minimization: a plain Nelder-Mead simplex with a seeded
/// multi-start wrapper. Deterministic for a fixed seed.

#pragma once

#include <functional>
#include <random>

#include "maxent/core.hpp"

namespace maxent {

struct NelderMeadOptions {
    int max_iterations = 600;
    double ftol = 1e-10;
    double initial_step = 0.5;
};

struct MinimizeResult {
    RVec point;
    double value = 0.0;
    int iterations = 0;
};

inline MinimizeResult nelder_mead(const std::function<double(const RVec&)>& f, const RVec& start,
                                  const NelderMeadOptions& opt = {}) {
    const int n = static_cast<int>(start.size());
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<RVec> pts(n + 1, start);
    std::vector<double> vals(n + 1);
    for (int i = 0; i < n; ++i) pts[i + 1](i) += opt.initial_step;
    for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    std::vector<int> order(n + 1);
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        if (vals[order[n]] - vals[order[0]] < opt.ftol) break;

        RVec centroid = RVec::Zero(n);
        for (int i = 0; i < n; ++i) centroid += pts[order[i]];
        centroid /= double(n);
        int worst = order[n];

        RVec refl = centroid + alpha * (centroid - pts[worst]);
        double frefl = f(refl);
        if (frefl < vals[order[0]]) {
            RVec expd = centroid + gamma * (refl - centroid);
            double fexpd = f(expd);
            if (fexpd < frefl) {
                pts[worst] = expd;
                vals[worst] = fexpd;
            } else {
                pts[worst] = refl;
                vals[worst] = frefl;
            }
        } else if (frefl < vals[order[n - 1]]) {
            pts[worst] = refl;
            vals[worst] = frefl;
        } else {
            RVec contr = centroid + rho * (pts[worst] - centroid);
            double fcontr = f(contr);
            if (fcontr < vals[worst]) {
                pts[worst] = contr;
                vals[worst] = fcontr;
            } else {
                for (int i = 1; i <= n; ++i) {
                    int idx = order[i];
                    pts[idx] = pts[order[0]] + sigma * (pts[idx] - pts[order[0]]);
                    vals[idx] = f(pts[idx]);
                }
            }
        }
    }
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    return {pts[order[0]], vals[order[0]], it};
}

/// Multi-start Nelder-Mead, deterministic for a fixed seed. The zero vector
/// and the caller's hints are probed with one evaluation each and only the
/// most promising few get a full simplex run; every seeded random restart
/// runs unconditionally so exploration is preserved.
inline MinimizeResult multistart_minimize(const std::function<double(const RVec&)>& f, int dim, int restarts,
                                          std::uint64_t seed, const NelderMeadOptions& opt = {},
                                          const std::vector<RVec>& hints = {}) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    MinimizeResult best;
    best.value = std::numeric_limits<double>::infinity();
    auto consider = [&](const RVec& start) {
        MinimizeResult r = nelder_mead(f, start, opt);
        if (r.value < best.value) best = r;
    };

    std::vector<std::pair<double, RVec>> probes;
    probes.emplace_back(f(RVec::Zero(dim)), RVec::Zero(dim));
    for (const auto& h : hints) probes.emplace_back(f(h), h);
    std::stable_sort(probes.begin(), probes.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t hint_runs = std::min<std::size_t>(3, probes.size());
    for (std::size_t i = 0; i < hint_runs; ++i) consider(probes[i].second);

    for (int r = 0; r < restarts; ++r) {
        RVec start(dim);
        for (int i = 0; i < dim; ++i) start(i) = u(rng);
        consider(start);
    }
    return best;
}

}  // namespace maxent
