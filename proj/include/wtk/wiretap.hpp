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

#ifndef WTK_WIRETAP_HPP
#define WTK_WIRETAP_HPP

#include <optional>

#include "wtk/discrimination.hpp"

namespace wtk {

/// Channel with one input and two outputs: the receiver sees y, the
/// eavesdropper sees z. Stored as one distribution over (y, z) per input,
/// flattened with z fastest: column index = y * z_size + z.
class WiretapKernel {
 public:
    WiretapKernel(Index y_size, Index z_size, Mat rows);

    /// W(y,z|x) = w1(y|x) * w2(z|y): the eavesdropper sees a noisy copy of
    /// the receiver's output.
    static WiretapKernel cascade(const Dmc& w1, const Dmc& w2);

    Index inputSize() const { return rows_.rows(); }
    Index ySize() const { return y_size_; }
    Index zSize() const { return z_size_; }
    double prob(Index x, Index y, Index z) const { return rows_(x, y * z_size_ + z); }
    const Mat& matrix() const { return rows_; }

    /// The same kernel viewed as a DMC X -> (Y x Z), for channel
    /// discrimination.
    Dmc asJointDmc() const { return Dmc(rows_); }
    Dmc yMarginal() const;  // X -> Y
    Dmc zMarginal() const;  // X -> Z

    /// Joint (X, Y, Z) distribution under input law px.
    Joint jointWith(const Distribution& px, const Caps& caps = {}) const;

 private:
    Index y_size_, z_size_;
    Mat rows_;
};

/// V(y,z|x) = v2(z|x) * v1(y|z): the receiver output depends on the input
/// only through the eavesdropper output. The converse bound quantifies over
/// channels of this shape.
struct FactorizedKernel {
    Dmc v2;  // X -> Z
    Dmc v1;  // Z -> Y
    WiretapKernel compose() const;
};

struct DegradedCheck {
    bool is_degraded;
    std::optional<Dmc> w2;  // witness Z|Y kernel when consistent
    double max_gap;         // largest cross-input disagreement observed
};

/// Tests whether W(y,z|x) = W1(y|x) W2(z|y) for some W2, by checking that
/// the candidate W2(z|y) = W(y,z|x) / W1(y|x) agrees across inputs.
DegradedCheck checkDegraded(const WiretapKernel& w, double tol = 1e-9);

struct MaxCmiOptions {
    double tol = 1e-9;   // duality-gap stopping threshold, bits
    double step = 0.1;   // multiplicative-weights step
    int max_iters = 10'000;
    std::optional<Distribution> init;  // interior start; default uniform
};

struct MaxCmiResult {
    double value;
    Distribution p_star;
    bool converged;  // false: max_iters hit, best iterate returned
    int iterations;
    double gap;  // certified distance to the optimum at the returned iterate
};

/// max over P_X of I(X;Y|Z) for P_XYZ = P_X * W. The objective is a minimum
/// of functions linear in P_X (over receiver-side channels V1), hence
/// concave; the inner minimizer is the induced P_{Y|Z} and the outer ascent
/// is multiplicative-weights. The duality gap max_x g(x) - f certifies the
/// returned value.
MaxCmiResult maxConditionalMutualInformation(const WiretapKernel& w,
                                             const MaxCmiOptions& opts = {});

/// I(X;Y|Z) at a fixed input law, via the closed-form inner minimum.
double cmiAtInput(const WiretapKernel& w, const Distribution& px);

struct MinimaxReport {
    double max_min;  // max over P_X of min over V1
    double min_max;  // min over V1 of max over P_X
    double cmi;      // maxConditionalMutualInformation value
    double max_gap;  // largest pairwise absolute gap
};

/// Numerically verifies the saddle-point chain on a small kernel by
/// independent nested searches. `restarts` jitters the nested minimization
/// start window. Kernel zeros are fine: infinite grid values are skipped by
/// the minimization and zero-mass inputs by the maximization.
MinimaxReport minimaxIdentityCheck(const WiretapKernel& w, int restarts = 3);

struct ConverseBoundReport {
    double eps, delta, eta;
    Index n;
    FactorizedKernel v_used;
    double beta;
    double log2_beta;
    double bound_bits;       // -log2 beta + 2 log2(1/eta), upper bound on log2 N
    double per_symbol_rate;  // bound_bits / n
    bool surrogate;          // best-fixed-input evaluation (n beyond brute force)
    Index x_star;            // fixed input used when surrogate, else -1
};

/// The default comparison channel: V2 is W's X->Z marginal and V1 the
/// induced P_{Y|Z} at the optimizer of maxConditionalMutualInformation,
/// which makes the bound asymptotically tight.
FactorizedKernel defaultConverseChannel(const WiretapKernel& w, const MaxCmiOptions& opts = {});

/// Finite-n converse: log2 N <= -log2 beta_{eps+delta+eta}(W, V, n)
/// + 2 log2(1/eta). Brute-force adaptive beta within caps; otherwise the
/// best-fixed-input value, reported with surrogate = true.
ConverseBoundReport converseBound(const WiretapKernel& w, double eps, double delta, double eta,
                                  Index n, std::optional<FactorizedKernel> v = {},
                                  const Caps& caps = {}, const MaxCmiOptions& cmi_opts = {});

struct SkReductionReport {
    double lhs;  // log2 k
    double rhs;  // -log2 beta + 2 log2(1/eta)
    bool holds;
    double beta;
    double log2_beta;
};

/// Secret-key reduction inequality on an explicit (K, K-hat, Z) joint
/// against a Z-factorized reference q. The hypotheses Pr[K != K-hat] <= eps
/// and TV(P_KZ, unif x P_Z) <= delta are verified before evaluating.
SkReductionReport skReductionCheck(const Joint& joint, Index k_size, double eps, double delta,
                                   double eta, const Joint& q);

/// Secrecy capacity of a degraded wiretap kernel at error eps and leakage
/// delta: max I(X;Y|Z) for eps < 1 - delta, max I(X;Y) above.
double capacityFormula(const WiretapKernel& w, double eps, double delta,
                       const MaxCmiOptions& opts = {}, double degraded_tol = 1e-9);

}  // namespace wtk

#endif
