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

#include "wtk/discrimination.hpp"

#include <cmath>
#include <string>

namespace wtk {

namespace {

void checkPair(const Dmc& w, const Dmc& v) {
    if (w.inputSize() != v.inputSize() || w.outputSize() != v.outputSize()) {
        throw AlphabetMismatch("channel discrimination: W and V alphabets differ");
    }
}

std::uint64_t powChecked(std::uint64_t base, Index exp, std::uint64_t cap, const char* what) {
    std::uint64_t r = 1;
    for (Index i = 0; i < exp; ++i) {
        if (r > cap / base) throw SizeOverflow(std::string(what) + " exceeds cap");
        r *= base;
    }
    return r;
}

}  // namespace

AdaptiveStrategy::AdaptiveStrategy(Index n, Index x_size, Index y_size)
    : n_(n), x_size_(x_size), y_size_(y_size) {
    if (n < 1 || x_size < 1 || y_size < 1) throw ParameterDomain("AdaptiveStrategy: bad shape");
    std::uint64_t histories = 1;
    std::uint64_t total = 0;
    choice_.resize(static_cast<std::size_t>(n));
    for (Index t = 0; t < n; ++t) {
        total += histories;
        if (total > (1ull << 26)) {
            throw SizeOverflow("AdaptiveStrategy: explicit tree too large; use constant()");
        }
        choice_[static_cast<std::size_t>(t)].assign(static_cast<std::size_t>(histories), 0);
        if (t + 1 < n) histories *= static_cast<std::uint64_t>(y_size);
    }
}

AdaptiveStrategy AdaptiveStrategy::constant(Index n, Index x_size, Index y_size, Index x) {
    if (n < 1 || x_size < 1 || y_size < 1) throw ParameterDomain("AdaptiveStrategy: bad shape");
    if (x < 0 || x >= x_size) throw IndexOutOfRange("AdaptiveStrategy: input out of range");
    AdaptiveStrategy s;
    s.n_ = n;
    s.x_size_ = x_size;
    s.y_size_ = y_size;
    s.constant_ = x;
    return s;
}

void AdaptiveStrategy::setInput(Index t, Index history_rank, Index x) {
    if (x < 0 || x >= x_size_) throw IndexOutOfRange("AdaptiveStrategy: input out of range");
    if (constant_ >= 0) throw Error("AdaptiveStrategy: compact constant strategies are immutable");
    choice_[static_cast<std::size_t>(t)][static_cast<std::size_t>(history_rank)] = x;
}

std::uint64_t AdaptiveStrategy::spaceSize(Index n, Index x_size, Index y_size,
                                          std::uint64_t cap) {
    std::uint64_t cells = 0;
    std::uint64_t histories = 1;
    for (Index t = 0; t < n; ++t) {
        cells += histories;
        if (cells > 64) break;  // x^65 certainly overflows any sane cap
        if (t + 1 < n) histories *= static_cast<std::uint64_t>(y_size);
    }
    return powChecked(static_cast<std::uint64_t>(x_size), static_cast<Index>(cells), cap,
                      "strategy space");
}

AdaptiveStrategy AdaptiveStrategy::fromRank(Index n, Index x_size, Index y_size,
                                            std::uint64_t rank) {
    AdaptiveStrategy s(n, x_size, y_size);
    for (auto& level : s.choice_) {
        for (Index& c : level) {
            c = static_cast<Index>(rank % static_cast<std::uint64_t>(x_size));
            rank /= static_cast<std::uint64_t>(x_size);
        }
    }
    return s;
}

std::uint64_t AdaptiveStrategy::rank() const {
    if (constant_ >= 0) {
        throw SizeOverflow("AdaptiveStrategy::rank: compact constant form has no explicit rank");
    }
    std::uint64_t r = 0;
    std::uint64_t weight = 1;
    for (const auto& level : choice_) {
        for (const Index c : level) {
            r += weight * static_cast<std::uint64_t>(c);
            weight *= static_cast<std::uint64_t>(x_size_);
        }
    }
    return r;
}

Joint inducedOutputLaw(const AdaptiveStrategy& strategy, const Dmc& channel, const Caps& caps) {
    if (strategy.inputSize() != channel.inputSize() ||
        strategy.outputSize() != channel.outputSize()) {
        throw AlphabetMismatch("inducedOutputLaw: strategy and channel alphabets differ");
    }
    const Index n = strategy.horizon();
    const Index ys = channel.outputSize();
    powChecked(static_cast<std::uint64_t>(ys), n, caps.max_cells, "output law");
    Vec law(1);
    law(0) = 1.0;
    for (Index t = 0; t < n; ++t) {
        Vec next(law.size() * ys);
        for (Index r = 0; r < law.size(); ++r) {
            const Index x = strategy.input(t, r);
            for (Index y = 0; y < ys; ++y) next(r * ys + y) = law(r) * channel(x, y);
        }
        law.swap(next);
    }
    return Joint(std::vector<Index>(static_cast<std::size_t>(n), ys), std::move(law));
}

DiscriminationResult betaActiveBruteforce(const Dmc& w, const Dmc& v, double eps, Index n,
                                          const Caps& caps) {
    checkPair(w, v);
    if (n < 1) throw ParameterDomain("betaActiveBruteforce: n must be >= 1");
    const std::uint64_t space =
        AdaptiveStrategy::spaceSize(n, w.inputSize(), w.outputSize(), caps.max_strategies);
    powChecked(static_cast<std::uint64_t>(w.outputSize()), n, caps.max_cells, "output law");

    DiscriminationResult best{2.0, 1.0, 0.0, AdaptiveStrategy(n, w.inputSize(), w.outputSize())};
    for (std::uint64_t r = 0; r < space; ++r) {
        const AdaptiveStrategy s =
            AdaptiveStrategy::fromRank(n, w.inputSize(), w.outputSize(), r);
        const Joint law_w = inducedOutputLaw(s, w, caps);
        const Joint law_v = inducedOutputLaw(s, v, caps);
        const BetaResult b = betaExactVec(law_w.probs(), law_v.probs(), eps);
        if (b.beta < best.beta) {
            best = DiscriminationResult{b.beta, b.log2_beta,
                                        -b.log2_beta / static_cast<double>(n), s};
        }
    }
    return best;
}

DiscriminationResult betaFixedInput(const Dmc& w, const Dmc& v, double eps, Index n,
                                    Index x_star, const Caps& caps) {
    checkPair(w, v);
    if (x_star < 0 || x_star >= w.inputSize()) {
        throw IndexOutOfRange("betaFixedInput: x_star out of range");
    }
    const BetaResult b = betaProductIid(w.row(x_star), v.row(x_star), eps, n, caps);
    return DiscriminationResult{b.beta, b.log2_beta, -b.log2_beta / static_cast<double>(n),
                                AdaptiveStrategy::constant(n, w.inputSize(), w.outputSize(),
                                                           x_star)};
}

ExponentResult discriminationExponent(const Dmc& w, const Dmc& v) {
    checkPair(w, v);
    double best = -1.0;
    Index x_star = 0;
    for (Index x = 0; x < w.inputSize(); ++x) {
        const double d = klDivergenceBits(w.matrix().row(x), v.matrix().row(x));
        if (d > best) {
            best = d;
            x_star = x;
        }
    }
    return ExponentResult{best, x_star, Distribution::pointMass(w.inputSize(), x_star)};
}

}  // namespace wtk
