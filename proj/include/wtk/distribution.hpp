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

#ifndef WTK_DISTRIBUTION_HPP
#define WTK_DISTRIBUTION_HPP

#include <Eigen/Core>
#include <initializer_list>

#include "wtk/info.hpp"

namespace wtk {

using Index = Eigen::Index;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Probability vector over a finite alphabet. Entries are nonnegative and
/// sum to one within kMassTol; construction validates.
class Distribution {
 public:
    explicit Distribution(Vec probs);
    Distribution(std::initializer_list<double> probs) : Distribution(Vec{probs}) {}

    static Distribution uniform(Index alphabet_size);
    static Distribution pointMass(Index alphabet_size, Index x);

    Index size() const { return probs_.size(); }
    double operator()(Index x) const { return probs_(x); }
    const Vec& probs() const { return probs_; }

    bool operator==(const Distribution& other) const { return probs_ == other.probs_; }

 private:
    Vec probs_;
};

/// Discrete memoryless channel: row-stochastic matrix, one row per input.
class Dmc {
 public:
    explicit Dmc(Mat rows);

    Index inputSize() const { return rows_.rows(); }
    Index outputSize() const { return rows_.cols(); }
    double operator()(Index x, Index y) const { return rows_(x, y); }
    const Mat& matrix() const { return rows_; }
    Distribution row(Index x) const { return Distribution(rows_.row(x).transpose()); }

    /// Binary symmetric channel with crossover probability p.
    static Dmc bsc(double crossover);
    static Dmc identity(Index size);

 private:
    Mat rows_;
};

inline double entropyBits(const Distribution& p) { return entropyBits(p.probs()); }

inline double klDivergenceBits(const Distribution& p, const Distribution& q) {
    return klDivergenceBits(p.probs(), q.probs());
}

inline double totalVariation(const Distribution& p, const Distribution& q) {
    return totalVariationOf(p.probs(), q.probs());
}

/// Output distribution of a channel fed with p (the Y-marginal of p * k).
Distribution pushForward(const Distribution& p, const Dmc& k);

}  // namespace wtk

#endif
