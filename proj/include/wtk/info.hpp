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

#ifndef WTK_INFO_HPP
#define WTK_INFO_HPP

#include <Eigen/Core>
#include <cmath>
#include <limits>

#include "wtk/errors.hpp"

namespace wtk {

/// Probabilities below this are treated as exact zero for support decisions.
inline constexpr double kSupportTol = 1e-15;

/// Tolerance for "sums to one" / consistency invariants on stored masses.
inline constexpr double kMassTol = 1e-12;

template <class Scalar>
constexpr Scalar infinity() {
    return std::numeric_limits<Scalar>::infinity();
}

/// Shannon entropy in bits of a probability vector, with 0 log 0 = 0.
/// Accepts any Eigen vector expression.
template <class Derived>
typename Derived::Scalar entropyBits(const Eigen::MatrixBase<Derived>& probs) {
    using Scalar = typename Derived::Scalar;
    Scalar h = 0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        const Scalar p = probs(i);
        if (p >= Scalar(kSupportTol)) h -= p * std::log2(p);
    }
    return h;
}

/// Kullback-Leibler divergence D(p || q) in bits; +inf when p puts mass
/// where q has none (support judged at kSupportTol).
template <class DerivedP, class DerivedQ>
typename DerivedP::Scalar klDivergenceBits(const Eigen::MatrixBase<DerivedP>& p,
                                           const Eigen::MatrixBase<DerivedQ>& q) {
    using Scalar = typename DerivedP::Scalar;
    if (p.size() != q.size()) throw AlphabetMismatch("klDivergenceBits: sizes differ");
    Scalar d = 0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const Scalar pi = p(i);
        if (pi < Scalar(kSupportTol)) continue;
        const Scalar qi = q(i);
        if (qi < Scalar(kSupportTol)) return infinity<Scalar>();
        d += pi * (std::log2(pi) - std::log2(qi));
    }
    return d;
}

/// Total variation distance, 1/2 * sum |p - q|.
template <class DerivedP, class DerivedQ>
typename DerivedP::Scalar totalVariationOf(const Eigen::MatrixBase<DerivedP>& p,
                                           const Eigen::MatrixBase<DerivedQ>& q) {
    if (p.size() != q.size()) throw AlphabetMismatch("totalVariationOf: sizes differ");
    return (p - q).cwiseAbs().sum() / 2;
}

/// Compensated (Neumaier) accumulator; keeps long probability sums at
/// full double precision.
class KahanSum {
 public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

 private:
    double sum_ = 0;
    double comp_ = 0;
};

/// Streaming log2-domain sum: value() = log2(sum_i 2^{l_i}) for the added
/// l_i. Safe for terms far below the double exponent range.
class Log2Sum {
 public:
    void add(double log2_term) {
        if (log2_term == -infinity<double>()) return;
        if (empty_) {
            max_ = log2_term;
            sum_ = 1.0;
            empty_ = false;
            return;
        }
        if (log2_term <= max_) {
            // Terms 2^-80 below the running max cannot move a double sum.
            if (log2_term > max_ - 80.0) sum_ += std::exp2(log2_term - max_);
        } else {
            sum_ = sum_ * std::exp2(max_ - log2_term) + 1.0;
            max_ = log2_term;
        }
    }
    void merge(const Log2Sum& other) {
        if (other.empty_) return;
        if (empty_) {
            *this = other;
            return;
        }
        if (other.max_ <= max_) {
            sum_ += other.sum_ * std::exp2(other.max_ - max_);
        } else {
            sum_ = sum_ * std::exp2(max_ - other.max_) + other.sum_;
            max_ = other.max_;
        }
    }
    bool empty() const { return empty_; }
    double value() const { return empty_ ? -infinity<double>() : max_ + std::log2(sum_); }

 private:
    bool empty_ = true;
    double max_ = 0;
    double sum_ = 0;
};

}  // namespace wtk

#endif
