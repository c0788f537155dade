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

#include "wtk/distribution.hpp"

#include <cmath>
#include <string>

namespace wtk {

namespace {

void checkMass(const Vec& probs, const char* what) {
    if (probs.size() < 1) throw InvalidDistribution(std::string(what) + ": empty alphabet");
    double sum = 0;
    for (Index i = 0; i < probs.size(); ++i) {
        const double p = probs(i);
        if (!(p >= -kMassTol) || !std::isfinite(p)) {
            throw InvalidDistribution(std::string(what) + ": negative or non-finite entry at " +
                                      std::to_string(i));
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kMassTol) {
        throw InvalidDistribution(std::string(what) + ": mass " + std::to_string(sum) +
                                  " not within 1e-12 of 1");
    }
}

}  // namespace

Distribution::Distribution(Vec probs) : probs_(std::move(probs)) {
    checkMass(probs_, "Distribution");
    // Tiny negative rounding residue is clamped; anything larger was rejected.
    probs_ = probs_.cwiseMax(0.0);
}

Distribution Distribution::uniform(Index alphabet_size) {
    if (alphabet_size < 1) throw InvalidDistribution("uniform: alphabet_size < 1");
    return Distribution(Vec::Constant(alphabet_size, 1.0 / static_cast<double>(alphabet_size)));
}

Distribution Distribution::pointMass(Index alphabet_size, Index x) {
    if (x < 0 || x >= alphabet_size) throw IndexOutOfRange("pointMass: symbol out of range");
    Vec v = Vec::Zero(alphabet_size);
    v(x) = 1.0;
    return Distribution(std::move(v));
}

Dmc::Dmc(Mat rows) : rows_(std::move(rows)) {
    if (rows_.rows() < 1 || rows_.cols() < 1) throw InvalidDistribution("Dmc: empty kernel");
    for (Index x = 0; x < rows_.rows(); ++x) {
        checkMass(rows_.row(x).transpose(), "Dmc row");
    }
    rows_ = rows_.cwiseMax(0.0);
}

Dmc Dmc::bsc(double crossover) {
    if (!(crossover >= 0.0 && crossover <= 1.0)) throw ParameterDomain("bsc: crossover not in [0,1]");
    Mat m(2, 2);
    m << 1.0 - crossover, crossover, crossover, 1.0 - crossover;
    return Dmc(m);
}

Dmc Dmc::identity(Index size) { return Dmc(Mat::Identity(size, size)); }

Distribution pushForward(const Distribution& p, const Dmc& k) {
    if (p.size() != k.inputSize()) throw AlphabetMismatch("pushForward: input size mismatch");
    return Distribution(k.matrix().transpose() * p.probs());
}

}  // namespace wtk
