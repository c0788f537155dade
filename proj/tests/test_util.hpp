// Copyright 2026 The wtk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WTK_TESTS_TEST_UTIL_HPP
#define WTK_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <random>

#include "wtk/protocol.hpp"

namespace wtk::testutil {

using Rng = std::mt19937_64;

// Values frozen from the long-double oracles below.
inline constexpr double kH01 = 0.46899559358928122;          // h(0.1)
inline constexpr double kCascadeCmi = 0.35775077890333667;   // h(0.26) - h(0.1)
inline constexpr double kBscCapacity01 = 0.53100440641071878;  // 1 - h(0.1)
inline constexpr double kKlHalfNine = 0.73696559416620622;   // D((.5,.5) || (.9,.1))

/// High-precision binary entropy, bits.
inline double binaryEntropyOracle(double p) {
    const long double lp = static_cast<long double>(p);
    return static_cast<double>(-lp * std::log2(lp) - (1.0L - lp) * std::log2(1.0L - lp));
}

/// High-precision entropy of an arbitrary vector, bits.
inline double entropyOracle(const Vec& probs) {
    long double h = 0.0L;
    for (Index i = 0; i < probs.size(); ++i) {
        const long double p = static_cast<long double>(probs(i));
        if (p > 1e-300L) h -= p * std::log2(p);
    }
    return static_cast<double>(h);
}

inline Vec randomProbVec(Rng& rng, Index k, double floor = 0.0) {
    std::uniform_real_distribution<double> u(1e-12, 1.0);
    Vec v(k);
    for (Index i = 0; i < k; ++i) v(i) = -std::log(u(rng)) + floor;
    v /= v.sum();
    return v;
}

inline Distribution randomDistribution(Rng& rng, Index k, double floor = 0.0) {
    return Distribution(randomProbVec(rng, k, floor));
}

inline Dmc randomDmc(Rng& rng, Index in, Index out, double floor = 0.0) {
    Mat m(in, out);
    for (Index x = 0; x < in; ++x) m.row(x) = randomProbVec(rng, out, floor).transpose();
    return Dmc(std::move(m));
}

inline WiretapKernel randomWiretapKernel(Rng& rng, Index xs, Index ys, Index zs,
                                         double floor = 0.0) {
    Mat m(xs, ys * zs);
    for (Index x = 0; x < xs; ++x) m.row(x) = randomProbVec(rng, ys * zs, floor).transpose();
    return WiretapKernel(ys, zs, std::move(m));
}

inline WiretapCode randomCode(Rng& rng, Index n, Index msg_count, Index x_size, Index y_size,
                              Index f_size, Index ux_size, Index uy_size) {
    WiretapCode code;
    code.n = n;
    code.msg_count = msg_count;
    code.x_size = x_size;
    code.y_size = y_size;
    code.f_size = f_size;
    code.ux = randomDistribution(rng, ux_size, 0.2);
    code.uy = randomDistribution(rng, uy_size, 0.2);
    std::uint64_t f_hist = static_cast<std::uint64_t>(f_size);
    std::uint64_t y_hist = 1;
    for (Index t = 0; t < n; ++t) {
        std::vector<Index> enc(static_cast<std::size_t>(msg_count) * f_hist *
                               static_cast<std::size_t>(ux_size));
        for (Index& c : enc) c = static_cast<Index>(rng() % static_cast<std::uint64_t>(x_size));
        code.encoder.push_back(std::move(enc));
        std::vector<Index> fb(y_hist * static_cast<std::uint64_t>(uy_size));
        for (Index& c : fb) c = static_cast<Index>(rng() % static_cast<std::uint64_t>(f_size));
        code.feedback.push_back(std::move(fb));
        f_hist *= static_cast<std::uint64_t>(f_size);
        y_hist *= static_cast<std::uint64_t>(y_size);
    }
    code.decoder.resize(y_hist);
    for (Index& c : code.decoder) {
        c = static_cast<Index>(rng() % static_cast<std::uint64_t>(msg_count));
    }
    code.validate();
    return code;
}

/// Exhaustive Neyman-Pearson oracle over deterministic acceptance regions
/// plus one partially accepted boundary outcome.
inline double betaBySubsetSearch(const Vec& p, const Vec& q, double eps) {
    const Index k = p.size();
    const double target = 1.0 - eps;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
        double pm = 0, qm = 0;
        for (Index i = 0; i < k; ++i) {
            if (mask & (1ull << i)) {
                pm += p(i);
                qm += q(i);
            }
        }
        if (pm >= target - 1e-15) best = std::min(best, qm);
        for (Index b = 0; b < k; ++b) {
            if (mask & (1ull << b)) continue;
            if (p(b) < 1e-15) continue;
            const double gamma = (target - pm) / p(b);
            if (gamma >= 0.0 && gamma <= 1.0) best = std::min(best, qm + gamma * q(b));
        }
    }
    return best;
}

}  // namespace wtk::testutil

#endif
