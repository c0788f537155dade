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
//
// End-to-end acceptance suite. Each check prints one PASS/FAIL line; the
// process exits nonzero if any check fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>

#include "wtk/io.hpp"

#include "test_util.hpp"

using namespace wtk;
using namespace wtk::testutil;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d %-38s %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

void run(int number, const std::string& name, const std::function<std::string()>& body) {
    try {
        report(number, name, true, body());
    } catch (const std::exception& e) {
        report(number, name, false, e.what());
    }
}

struct CheckFailure : Error {
    using Error::Error;
};

void need(bool cond, const std::string& message) {
    if (!cond) throw CheckFailure(message);
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

double seconds(const std::chrono::steady_clock::time_point& from) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

// 1. Type-class Stein exponent at n = 2000 within 0.05 bits of D(p||q),
//    under ten seconds.
std::string steinExponent() {
    const Distribution p{0.5, 0.5};
    const Distribution q{0.9, 0.1};
    const auto t0 = std::chrono::steady_clock::now();
    const BetaResult r = betaProductIid(p, q, 0.1, 2000);
    const double elapsed = seconds(t0);
    const double exponent = -r.log2_beta / 2000.0;
    const double gap = std::abs(exponent - kKlHalfNine);
    need(gap <= 0.05, fmt("exponent gap %.4f > 0.05", gap));
    need(elapsed < 10.0, fmt("took %.1f s", elapsed));
    return fmt("exponent %.5f, target %.5f, gap %.4f", exponent, kKlHalfNine, gap);
}

// 2. betaExact equals the exhaustive deterministic-plus-boundary oracle on
//    200 random pairs (alphabets up to 12), and beta(P,P) = 1 - eps exactly.
std::string npOracleEquivalence() {
    Rng rng(10'001);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const Index k = 2 + static_cast<Index>(rng() % 11);
        const Distribution p = randomDistribution(rng, k);
        const Distribution q = randomDistribution(rng, k);
        const double eps = 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
        const double mine = betaExact(p, q, eps).beta;
        const double oracle = betaBySubsetSearch(p.probs(), q.probs(), eps);
        worst = std::max(worst, std::abs(mine - oracle));
    }
    need(worst <= 1e-12, fmt("oracle mismatch %.2e", worst));
    for (int e = 0; e <= 9; ++e) {
        const double eps = e / 10.0;
        const Distribution p = randomDistribution(rng, 5);
        const double beta = betaExact(p, p, eps).beta;
        need(std::abs(beta - (1.0 - eps)) <= 1e-15,
             fmt("beta(P,P) = %.17g at eps = %.1f", beta, eps));
    }
    return fmt("max |beta - oracle| = %.2e over 200 pairs", worst);
}

// 3. Fixed-input exponent reaches max_x D(W_x||V_x) within 0.05 bits by
//    n = 2000 on 50 random binary pairs, and brute-force adaptive beta never
//    exceeds the best non-adaptive beta at n <= 3.
std::string discriminationConsistency() {
    Rng rng(10'002);
    std::uniform_real_distribution<double> row(0.08, 0.92);
    double worst_gap = 0;
    for (int i = 0; i < 50; ++i) {
        Mat mw(2, 2), mv(2, 2);
        const double w0 = row(rng), w1 = row(rng), v0 = row(rng), v1 = row(rng);
        mw << w0, 1 - w0, w1, 1 - w1;
        mv << v0, 1 - v0, v1, 1 - v1;
        const Dmc w(mw), v(mv);
        const ExponentResult target = discriminationExponent(w, v);
        const DiscriminationResult fixed = betaFixedInput(w, v, 0.5, 2000, target.x_star);
        worst_gap = std::max(worst_gap, std::abs(fixed.exponent - target.value));

        const double eps = 0.1 + 0.5 * std::uniform_real_distribution<double>(0, 1)(rng);
        for (Index n : {1, 2, 3}) {
            const DiscriminationResult adaptive = betaActiveBruteforce(w, v, eps, n);
            double best_fixed = 2.0;
            for (Index x = 0; x < 2; ++x) {
                best_fixed = std::min(best_fixed, betaFixedInput(w, v, eps, n, x).beta);
            }
            need(adaptive.beta <= best_fixed + 1e-12,
                 fmt("containment broken: adaptive %.17g > fixed %.17g", adaptive.beta,
                     best_fixed));
        }
    }
    need(worst_gap <= 0.05, fmt("exponent gap %.4f > 0.05", worst_gap));
    return fmt("max exponent gap %.4f over 50 pairs; containment held at n <= 3", worst_gap);
}

// 4. max I(X;Y|Z) on the BSC(0.1) -> BSC(0.2) cascade: closed form within
//    1e-6, uniform maximizer within 1e-4, restart spread within 1e-8.
std::string maxCmiCorrectness() {
    const WiretapKernel w = WiretapKernel::cascade(Dmc::bsc(0.1), Dmc::bsc(0.2));
    const MaxCmiResult base = maxConditionalMutualInformation(w);
    need(std::abs(base.value - kCascadeCmi) <= 1e-6,
         fmt("value %.9f vs closed form %.9f", base.value, kCascadeCmi));
    need(std::abs(base.p_star(0) - 0.5) <= 1e-4, fmt("maximizer %.6f not uniform", base.p_star(0)));
    Rng rng(10'004);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 20; ++i) {
        MaxCmiOptions o;
        o.init = randomDistribution(rng, 2, 0.05);
        const MaxCmiResult r = maxConditionalMutualInformation(w, o);
        lo = std::min(lo, r.value);
        hi = std::max(hi, r.value);
    }
    need(hi - lo <= 1e-8, fmt("restart spread %.2e", hi - lo));
    return fmt("value %.9f, spread %.2e", base.value, hi - lo);
}

// 5. Saddle chain: |max_P min_V1 D - max_P I(X;Y|Z)| <= 1e-6 on 30 random
//    strictly positive 2x2x2 kernels.
std::string minimaxChain() {
    Rng rng(10'005);
    double worst = 0;
    for (int i = 0; i < 30; ++i) {
        const WiretapKernel w = randomWiretapKernel(rng, 2, 2, 2, 0.05);
        const MinimaxReport r = minimaxIdentityCheck(w, 2);
        worst = std::max(worst, std::abs(r.max_min - r.cmi));
    }
    need(worst <= 1e-6, fmt("gap %.2e > 1e-6", worst));
    return fmt("max |max-min - cmi| = %.2e over 30 kernels", worst);
}

// 6. Conditional independence of (M, decoded M) given (Z^n, F) under every
//    factorized channel: 100 random pairs at n <= 3, plus a non-factorized
//    negative control.
std::string factorizationIdentity() {
    Rng rng(10'006);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const Index n = 1 + static_cast<Index>(rng() % 3);
        const Index uxs = 1 + static_cast<Index>(rng() % 2);
        const Index uys = 1 + static_cast<Index>(rng() % 2);
        const Index msgs = 2 + static_cast<Index>(rng() % 2);
        const WiretapCode code = randomCode(rng, n, msgs, 2, 2, 2, uxs, uys);
        const Dmc v2 = randomDmc(rng, 2, 2);
        const Dmc v1 = randomDmc(rng, 2, 2);
        worst = std::max(worst, factorizationCheck(code, FactorizedKernel{v2, v1}));
    }
    need(worst <= 1e-9, fmt("leak %.2e > 1e-9", worst));

    Mat rows = Mat::Zero(2, 4);
    rows(0, 0) = 0.75;
    rows(0, 1) = 0.25;
    rows(1, 2) = 0.25;
    rows(1, 3) = 0.75;
    WiretapCode send = WiretapCode::trivial(1, 2, 2, 2);
    send.encoder[0] = {0, 1};
    send.decoder = {0, 1};
    send.validate();
    const double control = factorizationCheck(send, WiretapKernel(2, 2, rows));
    need(control > 0.01, fmt("negative control %.4f not detected", control));
    return fmt("max leak %.2e over 100 pairs; control %.3f", worst, control);
}

// 7. The finite-n bound holds for every deterministic binary code with
//    N = 2 and n <= 2 on two fixed degraded kernels, for every admissible
//    eta in {0.05, 0.1, 0.2}; under five minutes.
std::string converseExhaustiveCodes() {
    const auto t0 = std::chrono::steady_clock::now();
    const WiretapKernel kernels[] = {
        WiretapKernel::cascade(Dmc::bsc(0.1), Dmc::bsc(0.2)),
        WiretapKernel::cascade(Dmc(Mat{{0.85, 0.15}, {0.05, 0.95}}), Dmc::bsc(0.3)),
    };
    std::uint64_t checked = 0;
    for (const WiretapKernel& w : kernels) {
        const FactorizedKernel v = defaultConverseChannel(w);
        for (Index n : {1, 2}) {
            const CodeShape shape{n, 2, 2, 2, 2};
            const std::uint64_t count = deterministicCodeCount(shape);
            // log2 beta depends on the code only through eps + delta + eta.
            std::unordered_map<std::uint64_t, double> beta_memo;
            for (std::uint64_t rank = 0; rank < count; ++rank) {
                const WiretapCode code = deterministicCodeFromRank(shape, rank);
                const CodeMetrics m = codeMetrics(executeExact(code, w), code);
                for (const double eta : {0.05, 0.1, 0.2}) {
                    const double eps_total = m.error_prob + m.leakage + eta;
                    if (eps_total >= 1.0) continue;
                    std::uint64_t key;
                    std::memcpy(&key, &eps_total, sizeof(key));
                    auto it = beta_memo.find(key);
                    if (it == beta_memo.end()) {
                        const ConverseBoundReport r =
                            converseBound(w, m.error_prob, m.leakage, eta, n, v);
                        it = beta_memo.emplace(key, r.log2_beta).first;
                    }
                    const double bound = -it->second + 2.0 * std::log2(1.0 / eta);
                    need(1.0 <= bound + 1e-9,
                         fmt("code violates the bound: log N = 1 > %.6f (rank %g)", bound,
                             static_cast<double>(rank)));
                    ++checked;
                }
            }
        }
    }
    const double elapsed = seconds(t0);
    need(elapsed < 300.0, fmt("took %.0f s", elapsed));
    return fmt("%.0f (code, eta) checks in %.1f s", static_cast<double>(checked), elapsed);
}

// 8. Secret-key reduction bound on 10^4 random valid (K, K-hat, Z) joints
//    with k <= 4.
std::string skReductionRandomJoints() {
    Rng rng(10'008);
    int valid = 0;
    int attempts = 0;
    while (valid < 10'000 && attempts < 100'000) {
        ++attempts;
        const Index k = 1 + static_cast<Index>(rng() % 4);
        const Index zs = 2 + static_cast<Index>(rng() % 2);
        const Joint joint({k, k, zs}, randomProbVec(rng, k * k * zs));
        double err = 0;
        for (Index a = 0; a < k; ++a) {
            for (Index b = 0; b < k; ++b) {
                if (a == b) continue;
                for (Index z = 0; z < zs; ++z) err += joint.cell((a * k + b) * zs + z);
            }
        }
        const Joint pkz = joint.marginal({0, 2});
        const Joint pz = joint.marginal({2});
        double tv = 0;
        for (Index a = 0; a < k; ++a) {
            for (Index z = 0; z < zs; ++z) {
                tv += std::abs(pkz.cell(a * zs + z) - pz.cell(z) / static_cast<double>(k));
            }
        }
        tv /= 2;
        if (err + tv >= 0.95) continue;
        const double eta =
            (1.0 - err - tv) * (0.1 + 0.8 * std::uniform_real_distribution<double>(0, 1)(rng));
        const Joint pkhz = joint.marginal({1, 2});
        Joint q = Joint::zeros({k, k, zs});
        for (Index z = 0; z < zs; ++z) {
            for (Index a = 0; a < k; ++a) {
                for (Index b = 0; b < k; ++b) {
                    q.cell((a * k + b) * zs + z) =
                        pz.cell(z) < 1e-15
                            ? 0.0
                            : pkz.cell(a * zs + z) * pkhz.cell(b * zs + z) / pz.cell(z);
                }
            }
        }
        q.validate();
        const SkReductionReport r = skReductionCheck(joint, k, err, tv, eta, q);
        need(r.holds, fmt("lhs %.6f > rhs %.6f", r.lhs, r.rhs));
        ++valid;
    }
    need(valid == 10'000, fmt("only %.0f valid instances generated", static_cast<double>(valid)));
    return "10000 valid instances all hold";
}

// 9. Rerunning the selftest command with the same seed produces byte-identical
//    output.
std::string determinism() {
    const char* cli = std::getenv("WTK_CLI");
    need(cli != nullptr, "WTK_CLI must point at the wtk binary");
    const std::string out1 = "/tmp/wtk_acceptance_run1.csv";
    const std::string out2 = "/tmp/wtk_acceptance_run2.csv";
    const std::string base = std::string(cli) + " selftest --seed 321 --out ";
    need(std::system((base + out1).c_str()) == 0, "first selftest run failed");
    need(std::system((base + out2).c_str()) == 0, "second selftest run failed");
    const std::string a = readTextFile(out1);
    const std::string b = readTextFile(out2);
    need(!a.empty() && a == b, "selftest output differs between identical runs");
    return fmt("%.0f identical bytes", static_cast<double>(a.size()));
}

}  // namespace

int main() {
    run(1, "stein-exponent-type-classes", steinExponent);
    run(2, "neyman-pearson-oracle-equivalence", npOracleEquivalence);
    run(3, "channel-discrimination-consistency", discriminationConsistency);
    run(4, "max-cmi-closed-form", maxCmiCorrectness);
    run(5, "minimax-chain", minimaxChain);
    run(6, "factorized-channel-independence", factorizationIdentity);
    run(7, "converse-bound-exhaustive-codes", converseExhaustiveCodes);
    run(8, "sk-reduction-random-joints", skReductionRandomJoints);
    run(9, "selftest-determinism", determinism);
    if (failures == 0) {
        std::printf("all 9 acceptance checks passed\n");
        return 0;
    }
    std::printf("%d acceptance check(s) failed\n", failures);
    return 1;
}
