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

#ifndef WTK_JOINT_HPP
#define WTK_JOINT_HPP

#include <span>
#include <vector>

#include "wtk/caps.hpp"
#include "wtk/distribution.hpp"

namespace wtk {

/// Joint distribution over a product alphabet, stored as a flat row-major
/// array with explicit component sizes.
///
/// Cell index arithmetic: for components (i_0, ..., i_{m-1}) with sizes
/// (d_0, ..., d_{m-1}),
///     rank = ((i_0 * d_1 + i_1) * d_2 + i_2) * ... + i_{m-1},
/// i.e. the first component varies slowest and the last fastest.
class Joint {
 public:
    Joint(std::vector<Index> component_sizes, Vec probs);

    /// Unvalidated construction for intermediate accumulation; call
    /// validate() once the mass is in place.
    static Joint zeros(std::vector<Index> component_sizes, const Caps& caps = {});
    void validate() const;

    Index componentCount() const { return static_cast<Index>(dims_.size()); }
    const std::vector<Index>& componentSizes() const { return dims_; }
    Index cells() const { return probs_.size(); }
    const Vec& probs() const { return probs_; }
    double& cell(Index rank) { return probs_(rank); }
    double cell(Index rank) const { return probs_(rank); }

    Index rank(std::span<const Index> idx) const;
    void unrank(Index rank, std::span<Index> idx_out) const;

    /// Marginal onto the given components, in the given order.
    Joint marginal(std::span<const Index> keep) const;
    Joint marginal(std::initializer_list<Index> keep) const {
        return marginal(std::span<const Index>(keep.begin(), keep.size()));
    }

    /// The whole joint flattened to a Distribution over the product alphabet.
    Distribution flatten() const { return Distribution(probs_); }

 private:
    Joint() = default;
    std::vector<Index> dims_;
    std::vector<Index> strides_;
    Vec probs_;
    void initStrides();
};

double totalVariation(const Joint& p, const Joint& q);

/// Entropy in bits of the marginal on a component group; empty group -> 0.
double groupEntropyBits(const Joint& joint, std::span<const Index> group);

/// I(X;Y|Z) in bits for disjoint component groups X, Y, Z of the joint,
/// computed as H(XZ) + H(YZ) - H(XYZ) - H(Z) and clamped at zero.
/// Z may be empty (plain mutual information).
double conditionalMutualInformation(const Joint& joint, std::span<const Index> x_group,
                                    std::span<const Index> y_group,
                                    std::span<const Index> z_group);

/// Three single-component convenience form.
double conditionalMutualInformation(const Joint& joint, Index x, Index y, Index z);

/// n-fold i.i.d. product P^n as a Joint with n equal components.
Joint productPower(const Distribution& p, Index n, const Caps& caps = {});

/// Joint over (input, output) with mass p(x) * k(y|x).
Joint pushThroughKernel(const Distribution& p, const Dmc& k, const Caps& caps = {});

}  // namespace wtk

#endif
