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

#include "wtk/joint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wtk {

namespace {

std::uint64_t cellCount(const std::vector<Index>& dims) {
    std::uint64_t cells = 1;
    for (Index d : dims) {
        if (d < 1) throw InvalidDistribution("Joint: component size < 1");
        if (cells > (1ull << 62) / static_cast<std::uint64_t>(d)) {
            throw SizeOverflow("Joint: cell count overflows");
        }
        cells *= static_cast<std::uint64_t>(d);
    }
    return cells;
}

}  // namespace

void Joint::initStrides() {
    strides_.assign(dims_.size(), 1);
    for (Index i = static_cast<Index>(dims_.size()) - 2; i >= 0; --i) {
        strides_[i] = strides_[i + 1] * dims_[i + 1];
    }
}

Joint::Joint(std::vector<Index> component_sizes, Vec probs)
    : dims_(std::move(component_sizes)), probs_(std::move(probs)) {
    if (static_cast<std::uint64_t>(probs_.size()) != cellCount(dims_)) {
        throw InvalidDistribution("Joint: probs length does not match component sizes");
    }
    initStrides();
    validate();
    probs_ = probs_.cwiseMax(0.0);
}

Joint Joint::zeros(std::vector<Index> component_sizes, const Caps& caps) {
    const std::uint64_t cells = cellCount(component_sizes);
    if (cells > caps.max_cells) {
        throw SizeOverflow("Joint: " + std::to_string(cells) + " cells exceeds cap " +
                           std::to_string(caps.max_cells));
    }
    Joint j;
    j.dims_ = std::move(component_sizes);
    j.probs_ = Vec::Zero(static_cast<Index>(cells));
    j.initStrides();
    return j;
}

void Joint::validate() const {
    KahanSum sum;
    for (Index i = 0; i < probs_.size(); ++i) {
        const double p = probs_(i);
        if (!(p >= -kMassTol) || !std::isfinite(p)) {
            throw InvalidDistribution("Joint: negative or non-finite cell");
        }
        sum.add(p);
    }
    if (std::abs(sum.value() - 1.0) > kMassTol) {
        throw InvalidDistribution("Joint: mass " + std::to_string(sum.value()) +
                                  " not within 1e-12 of 1");
    }
}

Index Joint::rank(std::span<const Index> idx) const {
    if (idx.size() != dims_.size()) throw IndexOutOfRange("Joint::rank: arity mismatch");
    Index r = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= dims_[i]) throw IndexOutOfRange("Joint::rank: symbol out of range");
        r += idx[i] * strides_[i];
    }
    return r;
}

void Joint::unrank(Index rank, std::span<Index> idx_out) const {
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        idx_out[i] = rank / strides_[i];
        rank %= strides_[i];
    }
}

Joint Joint::marginal(std::span<const Index> keep) const {
    std::vector<bool> seen(dims_.size(), false);
    std::vector<Index> out_dims;
    out_dims.reserve(keep.size());
    for (Index c : keep) {
        if (c < 0 || c >= componentCount()) throw IndexOutOfRange("marginal: bad component index");
        if (seen[static_cast<std::size_t>(c)]) throw IndexOutOfRange("marginal: repeated component");
        seen[static_cast<std::size_t>(c)] = true;
        out_dims.push_back(dims_[static_cast<std::size_t>(c)]);
    }
    Caps unbounded;
    unbounded.max_cells = static_cast<std::uint64_t>(probs_.size());
    Joint out = Joint::zeros(out_dims, unbounded);
    std::vector<Index> idx(dims_.size());
    for (Index r = 0; r < probs_.size(); ++r) {
        unrank(r, idx);
        Index out_r = 0;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            out_r += idx[static_cast<std::size_t>(keep[i])] * out.strides_[i];
        }
        out.probs_(out_r) += probs_(r);
    }
    return out;
}

double totalVariation(const Joint& p, const Joint& q) {
    if (p.componentSizes() != q.componentSizes()) {
        throw AlphabetMismatch("totalVariation: component sizes differ");
    }
    return totalVariationOf(p.probs(), q.probs());
}

double groupEntropyBits(const Joint& joint, std::span<const Index> group) {
    if (group.empty()) return 0.0;
    return entropyBits(joint.marginal(group).probs());
}

double conditionalMutualInformation(const Joint& joint, std::span<const Index> x_group,
                                    std::span<const Index> y_group,
                                    std::span<const Index> z_group) {
    std::vector<bool> used(joint.componentCount(), false);
    auto mark = [&](std::span<const Index> g) {
        for (Index c : g) {
            if (c < 0 || c >= joint.componentCount()) {
                throw IndexOutOfRange("conditionalMutualInformation: bad component");
            }
            if (used[static_cast<std::size_t>(c)]) {
                throw IndexOutOfRange("conditionalMutualInformation: groups overlap");
            }
            used[static_cast<std::size_t>(c)] = true;
        }
    };
    mark(x_group);
    mark(y_group);
    mark(z_group);
    if (x_group.empty() || y_group.empty()) {
        throw IndexOutOfRange("conditionalMutualInformation: X and Y groups must be non-empty");
    }

    std::vector<Index> xz(x_group.begin(), x_group.end());
    xz.insert(xz.end(), z_group.begin(), z_group.end());
    std::vector<Index> yz(y_group.begin(), y_group.end());
    yz.insert(yz.end(), z_group.begin(), z_group.end());
    std::vector<Index> xyz(x_group.begin(), x_group.end());
    xyz.insert(xyz.end(), y_group.begin(), y_group.end());
    xyz.insert(xyz.end(), z_group.begin(), z_group.end());

    const double value = groupEntropyBits(joint, xz) + groupEntropyBits(joint, yz) -
                         groupEntropyBits(joint, xyz) - groupEntropyBits(joint, z_group);
    return std::max(value, 0.0);
}

double conditionalMutualInformation(const Joint& joint, Index x, Index y, Index z) {
    const Index xs[] = {x};
    const Index ys[] = {y};
    const Index zs[] = {z};
    return conditionalMutualInformation(joint, xs, ys, zs);
}

Joint productPower(const Distribution& p, Index n, const Caps& caps) {
    if (n < 1) throw ParameterDomain("productPower: n must be >= 1");
    const Index k = p.size();
    std::uint64_t cells = 1;
    for (Index t = 0; t < n; ++t) {
        cells *= static_cast<std::uint64_t>(k);
        if (cells > caps.max_cells) {
            throw SizeOverflow("productPower: " + std::to_string(k) + "^" + std::to_string(n) +
                               " cells exceeds cap");
        }
    }
    Vec flat = p.probs();
    for (Index t = 1; t < n; ++t) {
        Vec next(flat.size() * k);
        for (Index i = 0; i < flat.size(); ++i) {
            for (Index s = 0; s < k; ++s) next(i * k + s) = flat(i) * p(s);
        }
        flat.swap(next);
    }
    return Joint(std::vector<Index>(static_cast<std::size_t>(n), k), std::move(flat));
}

Joint pushThroughKernel(const Distribution& p, const Dmc& k, const Caps& caps) {
    if (p.size() != k.inputSize()) throw AlphabetMismatch("pushThroughKernel: size mismatch");
    const std::uint64_t cells =
        static_cast<std::uint64_t>(p.size()) * static_cast<std::uint64_t>(k.outputSize());
    if (cells > caps.max_cells) throw SizeOverflow("pushThroughKernel: exceeds cell cap");
    Vec flat(static_cast<Index>(cells));
    for (Index x = 0; x < p.size(); ++x) {
        for (Index y = 0; y < k.outputSize(); ++y) flat(x * k.outputSize() + y) = p(x) * k(x, y);
    }
    return Joint({p.size(), k.outputSize()}, std::move(flat));
}

}  // namespace wtk
