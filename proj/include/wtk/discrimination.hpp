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

#ifndef WTK_DISCRIMINATION_HPP
#define WTK_DISCRIMINATION_HPP

#include <cstdint>

#include "wtk/np_testing.hpp"

namespace wtk {

/// Deterministic adaptive input strategy for an n-shot channel test. The
/// input at step t is a function of the full output history y^{t-1}, the
/// richest feedback an active test can use.
///
/// Histories are ranked in mixed radix with the first output most
/// significant: rank(y^t) = rank(y^{t-1}) * |Y| + y_t. A whole strategy is
/// ranked by listing its table cells (t ascending, history rank ascending)
/// as base-|X| digits, cell 0 least significant.
class AdaptiveStrategy {
 public:
    /// Explicit all-zero tree; the table has sum_t |Y|^t cells, so this form
    /// only exists for horizons within SizeOverflow reach.
    AdaptiveStrategy(Index n, Index x_size, Index y_size);

    /// History-independent strategy, stored compactly (any horizon).
    static AdaptiveStrategy constant(Index n, Index x_size, Index y_size, Index x);
    static AdaptiveStrategy fromRank(Index n, Index x_size, Index y_size, std::uint64_t rank);

    /// Number of deterministic strategies, prod_t |X|^{|Y|^t}; throws
    /// SizeOverflow beyond the cap.
    static std::uint64_t spaceSize(Index n, Index x_size, Index y_size, std::uint64_t cap);

    Index horizon() const { return n_; }
    Index inputSize() const { return x_size_; }
    Index outputSize() const { return y_size_; }

    Index input(Index t, Index history_rank) const {
        return constant_ >= 0 ? constant_ : choice_[t][history_rank];
    }
    void setInput(Index t, Index history_rank, Index x);
    std::uint64_t rank() const;

 private:
    AdaptiveStrategy() = default;
    Index n_ = 0, x_size_ = 0, y_size_ = 0;
    Index constant_ = -1;  // >= 0: compact constant strategy, no tables
    std::vector<std::vector<Index>> choice_;
};

struct DiscriminationResult {
    double beta;
    double log2_beta;
    double exponent;  // -(1/n) log2 beta
    AdaptiveStrategy strategy;
};

/// Exact law of Y^n when the strategy drives the channel.
Joint inducedOutputLaw(const AdaptiveStrategy& strategy, const Dmc& channel,
                       const Caps& caps = {});

/// Minimum beta over every deterministic adaptive strategy (ties broken
/// toward the smallest strategy rank). The test itself may still randomize.
DiscriminationResult betaActiveBruteforce(const Dmc& w, const Dmc& v, double eps, Index n,
                                          const Caps& caps = {});

/// beta for the non-adaptive strategy that repeats x_star; an achievable
/// test, hence an upper bound on the adaptive optimum.
DiscriminationResult betaFixedInput(const Dmc& w, const Dmc& v, double eps, Index n,
                                    Index x_star, const Caps& caps = {});

struct ExponentResult {
    double value;  // max_x D(W_x || V_x) in bits; +inf when a row pair diverges
    Index x_star;
    Distribution p_star;  // point mass on x_star
};

/// Asymptotic discrimination exponent; the maximum over input distributions
/// of D(W||V|P_X) is linear in P_X, so it is attained at a vertex.
ExponentResult discriminationExponent(const Dmc& w, const Dmc& v);

}  // namespace wtk

#endif
