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

#ifndef WTK_PROTOCOL_HPP
#define WTK_PROTOCOL_HPP

#include "wtk/wiretap.hpp"

namespace wtk {

/// Wiretap code with public feedback, given by explicit tables.
///
/// Timeline: the receiver opens with feedback F_0 (a function of its local
/// randomness U_y); at each step t = 1..n the transmitter sends
/// X_t = enc_t(M, F^{t-1}, U_x), the channel emits (Y_t, Z_t), and for
/// t < n the receiver returns F_t = fb_t(Y^t, U_y). Decoding is a
/// deterministic map on Y^n.
///
/// Sequence ranks are mixed radix with the earliest symbol most
/// significant: rank(s_1..s_t) = rank(s_1..s_{t-1}) * |S| + s_t.
struct WiretapCode {
    Index n = 1;
    Index msg_count = 1;
    Index x_size = 1;
    Index y_size = 1;
    Index f_size = 1;
    Distribution ux{Vec::Ones(1)};  // transmitter-local randomness
    Distribution uy{Vec::Ones(1)};  // receiver-local randomness

    /// encoder[t-1][(m * F^t + f_rank) * |Ux| + u] -> x, for t = 1..n.
    std::vector<std::vector<Index>> encoder;
    /// feedback[t][y_rank * |Uy| + u] -> f, for t = 0..n-1 (y_rank over Y^t).
    std::vector<std::vector<Index>> feedback;
    /// decoder[rank(y^n)] -> message.
    std::vector<Index> decoder;

    void validate() const;

    /// Code that transmits nothing meaningful: constant input, constant
    /// feedback, constant decoding. Useful as a test baseline.
    static WiretapCode trivial(Index n, Index msg_count, Index x_size, Index y_size);
};

/// Exact law of (M, X^n, Y^n, Z^n, F_0..F_{n-1}) under a code and channel,
/// with the local randomness marginalized out.
struct ProtocolJoint {
    Joint joint;
    Index n;

    Index mComponent() const { return 0; }
    Index xComponent(Index t) const { return 1 + t; }
    Index yComponent(Index t) const { return 1 + n + t; }
    Index zComponent(Index t) const { return 1 + 2 * n + t; }
    Index fComponent(Index t) const { return 1 + 3 * n + t; }
};

struct CodeMetrics {
    double error_prob;  // Pr[M != decode(Y^n)]
    double leakage;     // TV(P_{M Z^n F}, P_M x P_{Z^n F})
};

ProtocolJoint executeExact(const WiretapCode& code, const WiretapKernel& channel,
                           const Caps& caps = {});

CodeMetrics codeMetrics(const ProtocolJoint& pj, const WiretapCode& code);

/// I(M; decode(Y^n) | Z^n, F) on the exact joint under the factorized
/// channel v. Zero (up to rounding) for every code when v factorizes.
double factorizationCheck(const WiretapCode& code, const FactorizedKernel& v,
                          const Caps& caps = {});

/// Same quantity under an arbitrary kernel; strictly positive values are
/// possible (and expected) when the kernel does not factorize through Z.
double factorizationCheck(const WiretapCode& code, const WiretapKernel& channel,
                          const Caps& caps = {});

struct ConverseValidation {
    double log_n_messages;  // log2 N
    double bound_bits;
    bool holds;
    double eps;  // measured error probability
    double delta;  // measured leakage
    ConverseBoundReport report;
};

/// Runs the code exactly, measures (eps, delta), and checks the finite-n
/// converse at the measured values. Requires n within brute-force reach of
/// the discrimination module.
ConverseValidation validateConverse(const WiretapCode& code, const WiretapKernel& w, double eta,
                                    std::optional<FactorizedKernel> v = {},
                                    const Caps& caps = {});

struct McResult {
    std::uint64_t trials;
    std::uint64_t seed;
    double error_freq;
    double error_sigma;  // binomial standard error of error_freq
    Joint mzf_empirical;  // empirical (M, Z^n, F) law
    double leakage_estimate;
};

/// Seeded sampling of protocol transcripts; estimates carry their own
/// uncertainty and are reproducible given (seed, trials, threads).
McResult monteCarlo(const WiretapCode& code, const WiretapKernel& channel, std::uint64_t trials,
                    std::uint64_t seed, int threads = 1, const Caps& caps = {});

/// Shape of a deterministic (no local randomness) code family for
/// exhaustive sweeps.
struct CodeShape {
    Index n, msg_count, x_size, y_size, f_size;
};

/// Number of deterministic codes of the given shape. Cells are ordered
/// encoder tables (t ascending, flat index ascending), then feedback
/// tables, then the decoder; ranks are little-endian in that cell order.
std::uint64_t deterministicCodeCount(const CodeShape& shape);
WiretapCode deterministicCodeFromRank(const CodeShape& shape, std::uint64_t rank);

}  // namespace wtk

#endif
