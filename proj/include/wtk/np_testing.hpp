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

#ifndef WTK_NP_TESTING_HPP
#define WTK_NP_TESTING_HPP

#include <optional>
#include <span>
#include <vector>

#include "wtk/joint.hpp"

namespace wtk {

/// Canonical Neyman-Pearson test in threshold form: accept the null for
/// outcomes with log2 p(x) - log2 q(x) above the threshold, randomize with
/// boundary_accept at equality, reject below. Outcomes outside the
/// null support are always rejected.
struct ThresholdTest {
    double log2_ratio_threshold = -infinity<double>();
    double boundary_accept = 1.0;
};

/// Explicit stochastic test: accept-null probability per outcome.
struct BinaryTest {
    Vec accept_null;
};

struct BetaResult {
    /// Optimal type-II error, linear scale. Exactly zero may mean underflow;
    /// log2_beta is the authoritative value in that regime.
    double beta = 1.0;
    double log2_beta = 0.0;
    /// Achieved type-I error of the returned test (== eps up to rounding).
    double type1 = 0.0;
    ThresholdTest threshold;
    /// Materialized only when the outcome space is explicit.
    std::optional<BinaryTest> test;
};

/// Exact beta_eps(P, Q) by likelihood-ratio thresholding with randomization
/// on the boundary group. Equal ratios are merged before randomizing, so the
/// returned test is canonical.
BetaResult betaExact(const Distribution& p, const Distribution& q, double eps);

/// Same computation on raw probability vectors (flattened joints).
BetaResult betaExactVec(const Vec& p, const Vec& q, double eps);

/// Exact beta_eps(P^n, Q^n) via type classes: outcomes with the same
/// empirical histogram share one likelihood ratio, so the n-fold product
/// reduces to one weighted group per class. Within the materialization cap
/// the classes are sorted explicitly; above it a two-pass streaming
/// histogram select is used (same value, bounded memory).
BetaResult betaProductIid(const Distribution& p, const Distribution& q, double eps, Index n,
                          const Caps& caps = {});

struct SteinPoint {
    Index n;
    double beta;
    double log2_beta;
    double exponent;  // -(1/n) log2 beta
};

/// Exponent series -(1/n) log2 beta_eps(P^n, Q^n) for the given n values;
/// converges to D(P||Q).
std::vector<SteinPoint> steinExponentCurve(const Distribution& p, const Distribution& q,
                                           double eps, std::span<const Index> n_values,
                                           const Caps& caps = {});

/// Number of type classes (compositions) of n over an alphabet of size k;
/// throws SizeOverflow beyond 2^62.
std::uint64_t typeClassCount(Index k, Index n);

}  // namespace wtk

#endif
