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

#include "wtk/selftest.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "wtk/io.hpp"

namespace wtk {

namespace {

using Rng = std::mt19937_64;

Vec randomProbVec(Rng& rng, Index k, double floor = 0.0) {
    std::uniform_real_distribution<double> u(1e-12, 1.0);
    Vec v(k);
    for (Index i = 0; i < k; ++i) v(i) = -std::log(u(rng)) + floor;
    v /= v.sum();
    return v;
}

Distribution randomDistribution(Rng& rng, Index k, double floor = 0.0) {
    return Distribution(randomProbVec(rng, k, floor));
}

Dmc randomDmc(Rng& rng, Index in, Index out, double floor = 0.0) {
    Mat m(in, out);
    for (Index x = 0; x < in; ++x) m.row(x) = randomProbVec(rng, out, floor).transpose();
    return Dmc(std::move(m));
}

WiretapKernel randomWiretapKernel(Rng& rng, Index xs, Index ys, Index zs, double floor = 0.0) {
    Mat m(xs, ys * zs);
    for (Index x = 0; x < xs; ++x) m.row(x) = randomProbVec(rng, ys * zs, floor).transpose();
    return WiretapKernel(ys, zs, std::move(m));
}

WiretapCode randomCode(Rng& rng, Index n, Index msg_count, Index x_size, Index y_size,
                       Index f_size, Index ux_size, Index uy_size) {
    WiretapCode code;
    code.n = n;
    code.msg_count = msg_count;
    code.x_size = x_size;
    code.y_size = y_size;
    code.f_size = f_size;
    code.ux = randomDistribution(rng, ux_size, 0.2);
    code.uy = randomDistribution(rng, uy_size, 0.2);
    std::uint64_t f_hist = static_cast<std::uint64_t>(f_size);
    std::uint64_t y_hist = 1;
    for (Index t = 0; t < n; ++t) {
        std::vector<Index> enc(static_cast<std::size_t>(msg_count) * f_hist *
                               static_cast<std::size_t>(ux_size));
        for (Index& c : enc) c = static_cast<Index>(rng() % static_cast<std::uint64_t>(x_size));
        code.encoder.push_back(std::move(enc));
        std::vector<Index> fb(y_hist * static_cast<std::uint64_t>(uy_size));
        for (Index& c : fb) c = static_cast<Index>(rng() % static_cast<std::uint64_t>(f_size));
        code.feedback.push_back(std::move(fb));
        f_hist *= static_cast<std::uint64_t>(f_size);
        y_hist *= static_cast<std::uint64_t>(y_size);
    }
    code.decoder.resize(y_hist);
    for (Index& c : code.decoder) {
        c = static_cast<Index>(rng() % static_cast<std::uint64_t>(msg_count));
    }
    code.validate();
    return code;
}

/// Exhaustive Neyman-Pearson oracle: every deterministic acceptance region
/// plus one partially accepted boundary outcome. Valid for alphabets small
/// enough to enumerate subsets.
double betaBySubsetSearch(const Vec& p, const Vec& q, double eps) {
    const Index k = p.size();
    const double target = 1.0 - eps;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
        double pm = 0, qm = 0;
        for (Index i = 0; i < k; ++i) {
            if (mask & (1ull << i)) {
                pm += p(i);
                qm += q(i);
            }
        }
        if (pm >= target - 1e-15) best = std::min(best, qm);
        for (Index b = 0; b < k; ++b) {
            if (mask & (1ull << b)) continue;
            if (p(b) < 1e-15) {
                if (pm >= target - 1e-15) best = std::min(best, qm);
                continue;
            }
            const double gamma = (target - pm) / p(b);
            if (gamma >= 0.0 && gamma <= 1.0) best = std::min(best, qm + gamma * q(b));
        }
    }
    return best;
}

struct Checker {
    std::vector<PropertyResult>& out;
    void run(const std::string& name, const std::function<std::string()>& body) {
        try {
            std::string detail = body();
            out.push_back({name, true, detail.empty() ? "ok" : detail});
        } catch (const std::exception& e) {
            out.push_back({name, false, e.what()});
        }
    }
};

struct PropertyFailure : Error {
    using Error::Error;
};

void require(bool cond, const std::string& message) {
    if (!cond) throw PropertyFailure(message);
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

}  // namespace

std::vector<PropertyResult> runSelftest(const SelftestOptions& opts) {
    std::vector<PropertyResult> results;
    Checker check{results};
    const int scale = std::max(1, opts.scale);

    check.run("kl_nonnegative", [&] {
        Rng rng(opts.seed ^ 0x11);
        double worst = 0;
        for (int i = 0; i < 40 * scale; ++i) {
            const Index k = 2 + static_cast<Index>(rng() % 5);
            const Distribution p = randomDistribution(rng, k);
            const Distribution q = randomDistribution(rng, k);
            const double d = klDivergenceBits(p, q);
            require(d >= -1e-12, "negative divergence");
            require(std::abs(klDivergenceBits(p, p)) <= 1e-12, "D(p||p) != 0");
            if (std::isfinite(d)) worst = std::max(worst, -d);
        }
        return "min D observed >= " + fmt(-worst);
    });

    check.run("tv_metric", [&] {
        Rng rng(opts.seed ^ 0x22);
        for (int i = 0; i < 40 * scale; ++i) {
            const Index k = 2 + static_cast<Index>(rng() % 5);
            const Distribution a = randomDistribution(rng, k);
            const Distribution b = randomDistribution(rng, k);
            const Distribution c = randomDistribution(rng, k);
            const double ab = totalVariation(a, b);
            require(std::abs(ab - totalVariation(b, a)) <= 1e-15, "asymmetric");
            require(ab >= 0.0 && ab <= 1.0, "out of range");
            require(ab <= totalVariation(a, c) + totalVariation(c, b) + 1e-12, "triangle");
        }
        return std::string();
    });

    check.run("cmi_matches_double_sum", [&] {
        Rng rng(opts.seed ^ 0x33);
        double worst = 0;
        for (int i = 0; i < 20 * scale; ++i) {
            const Index a = 2 + static_cast<Index>(rng() % 2);
            const Index b = 2 + static_cast<Index>(rng() % 2);
            const Index c = 2 + static_cast<Index>(rng() % 2);
            const Joint j({a, b, c}, randomProbVec(rng, a * b * c));
            const double via_entropy = conditionalMutualInformation(j, 0, 1, 2);
            // Direct definition: sum p(x,y,z) log2 [p(x,y|z) / p(x|z)p(y|z)].
            double direct = 0;
            const Joint pz = j.marginal({2});
            const Joint pxz = j.marginal({0, 2});
            const Joint pyz = j.marginal({1, 2});
            for (Index x = 0; x < a; ++x) {
                for (Index y = 0; y < b; ++y) {
                    for (Index z = 0; z < c; ++z) {
                        const double m = j.cell((x * b + y) * c + z);
                        if (m < 1e-15) continue;
                        direct += m * (std::log2(m * pz.cell(z)) -
                                       std::log2(pxz.cell(x * c + z) * pyz.cell(y * c + z)));
                    }
                }
            }
            worst = std::max(worst, std::abs(via_entropy - direct));
        }
        require(worst <= 1e-10, "routes disagree by " + fmt(worst));
        return "max gap " + fmt(worst);
    });

    check.run("product_power_marginals", [&] {
        Rng rng(opts.seed ^ 0x44);
        for (int i = 0; i < 10 * scale; ++i) {
            const Index k = 2 + static_cast<Index>(rng() % 3);
            const Distribution p = randomDistribution(rng, k);
            const Index n = 1 + static_cast<Index>(rng() % 4);
            const Joint pn = productPower(p, n);
            for (Index t = 0; t < n; ++t) {
                const Joint m = pn.marginal({t});
                for (Index s = 0; s < k; ++s) {
                    require(std::abs(m.cell(s) - p(s)) <= 1e-12, "marginal mismatch");
                }
            }
            require(std::abs(entropyBits(pn.probs()) - static_cast<double>(n) * entropyBits(p)) <=
                        1e-9,
                    "entropy chain rule");
        }
        return std::string();
    });

    check.run("np_matches_exhaustive", [&] {
        Rng rng(opts.seed ^ 0x55);
        double worst = 0;
        for (int i = 0; i < 30 * scale; ++i) {
            const Index k = 2 + static_cast<Index>(rng() % 5);
            const Distribution p = randomDistribution(rng, k);
            const Distribution q = randomDistribution(rng, k);
            const double eps = 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
            const BetaResult r = betaExact(p, q, eps);
            const double oracle = betaBySubsetSearch(p.probs(), q.probs(), eps);
            worst = std::max(worst, std::abs(r.beta - oracle));
        }
        require(worst <= 1e-12, "optimum mismatch " + fmt(worst));
        return "max |beta - oracle| = " + fmt(worst);
    });

    check.run("np_identity_pairs", [&] {
        Rng rng(opts.seed ^ 0x66);
        for (int e = 0; e <= 9; ++e) {
            const double eps = e / 10.0;
            const Distribution p = randomDistribution(rng, 4);
            const BetaResult r = betaExact(p, p, eps);
            require(std::abs(r.beta - (1.0 - eps)) <= 1e-15, "beta(P,P) != 1 - eps");
        }
        return std::string();
    });

    check.run("np_monotone_in_eps", [&] {
        Rng rng(opts.seed ^ 0x77);
        for (int i = 0; i < 20 * scale; ++i) {
            const Index k = 2 + static_cast<Index>(rng() % 4);
            const Distribution p = randomDistribution(rng, k);
            const Distribution q = randomDistribution(rng, k);
            double prev = 1.0;
            for (double eps : {0.0, 0.2, 0.4, 0.6, 0.8}) {
                const double b = betaExact(p, q, eps).beta;
                require(b <= prev + 1e-12, "beta increased with eps");
                prev = b;
            }
        }
        return std::string();
    });

    check.run("np_product_equivalence", [&] {
        Rng rng(opts.seed ^ 0x88);
        double worst = 0;
        for (int i = 0; i < 10 * scale; ++i) {
            const Index k = 2 + static_cast<Index>(rng() % 2);
            const Distribution p = randomDistribution(rng, k);
            const Distribution q = randomDistribution(rng, k);
            const double eps = 0.8 * std::uniform_real_distribution<double>(0, 1)(rng);
            const Index n = 3;
            const BetaResult grouped = betaProductIid(p, q, eps, n);
            const Joint pn = productPower(p, n);
            const Joint qn = productPower(q, n);
            const BetaResult explicit_beta = betaExactVec(pn.probs(), qn.probs(), eps);
            const double rel = std::abs(grouped.beta - explicit_beta.beta) /
                               std::max(explicit_beta.beta, 1e-300);
            worst = std::max(worst, rel);
        }
        require(worst <= 1e-11, "type-class and explicit product disagree");
        return "max relative gap " + fmt(worst);
    });

    check.run("np_data_processing", [&] {
        Rng rng(opts.seed ^ 0x99);
        for (int i = 0; i < 20 * scale; ++i) {
            const Index k = 2 + static_cast<Index>(rng() % 3);
            const Index m = 2 + static_cast<Index>(rng() % 3);
            const Distribution p = randomDistribution(rng, k);
            const Distribution q = randomDistribution(rng, k);
            const Dmc kernel = randomDmc(rng, k, m);
            const double eps = 0.8 * std::uniform_real_distribution<double>(0, 1)(rng);
            const double before = betaExact(p, q, eps).beta;
            const double after = betaExact(pushForward(p, kernel), pushForward(q, kernel), eps).beta;
            require(after >= before - 1e-12, "data processing violated");
        }
        return std::string();
    });

    check.run("discrimination_containment", [&] {
        Rng rng(opts.seed ^ 0xaa);
        for (int i = 0; i < 8 * scale; ++i) {
            const Dmc w = randomDmc(rng, 2, 2);
            const Dmc v = randomDmc(rng, 2, 2);
            const double eps = 0.1 + 0.5 * std::uniform_real_distribution<double>(0, 1)(rng);
            const Index n = 2;
            const DiscriminationResult adaptive = betaActiveBruteforce(w, v, eps, n);
            for (Index x = 0; x < 2; ++x) {
                const DiscriminationResult fixed = betaFixedInput(w, v, eps, n, x);
                require(adaptive.beta <= fixed.beta + 1e-12, "adaptive beat by fixed input");
            }
        }
        return std::string();
    });

    check.run("discrimination_identical_channels", [&] {
        Rng rng(opts.seed ^ 0xbb);
        const Dmc w = randomDmc(rng, 2, 2);
        for (double eps : {0.1, 0.3, 0.6}) {
            const DiscriminationResult r = betaActiveBruteforce(w, w, eps, 2);
            require(std::abs(r.beta - (1.0 - eps)) <= 1e-12, "beta(W,W) != 1 - eps");
        }
        return std::string();
    });

    check.run("degraded_cascade_roundtrip", [&] {
        Rng rng(opts.seed ^ 0xcc);
        for (int i = 0; i < 10 * scale; ++i) {
            const Dmc w1 = randomDmc(rng, 2, 2, 0.05);
            const Dmc w2 = randomDmc(rng, 2, 2, 0.05);
            const WiretapKernel w = WiretapKernel::cascade(w1, w2);
            const DegradedCheck c = checkDegraded(w);
            require(c.is_degraded, "cascade not recognized as degraded");
            require((c.w2->matrix() - w2.matrix()).cwiseAbs().maxCoeff() <= 1e-9,
                    "witness differs from the true cascade tail");
        }
        // Generic non-degraded: Z a clean copy of X, Y noisy.
        Mat rows(2, 4);
        rows << 0.9 * 1, 0.9 * 0, 0.1 * 1, 0.1 * 0, 0.1 * 0, 0.1 * 1, 0.9 * 0, 0.9 * 1;
        const WiretapKernel w(2, 2, rows);
        require(!checkDegraded(w).is_degraded, "copy-to-Z kernel misread as degraded");
        return std::string();
    });

    check.run("external_kernel_consistency", [&] {
        std::string detail = "no external kernels";
        for (const std::string& path : opts.kernel_files) {
            const WiretapKernel w = wiretapKernelFromJson(loadJsonFile(path));
            const DegradedCheck c = checkDegraded(w, 1e-9);
            if (c.is_degraded) {
                const WiretapKernel recomposed = WiretapKernel::cascade(w.yMarginal(), *c.w2);
                const double gap = (recomposed.matrix() - w.matrix()).cwiseAbs().maxCoeff();
                require(gap <= 1e-6, path + ": degraded witness does not recompose, gap " +
                                         fmt(gap));
            }
            detail = std::to_string(opts.kernel_files.size()) + " kernel(s) consistent";
        }
        return detail;
    });

    check.run("max_cmi_cascade_closed_form", [&] {
        const WiretapKernel w = WiretapKernel::cascade(Dmc::bsc(0.1), Dmc::bsc(0.2));
        const MaxCmiResult r = maxConditionalMutualInformation(w);
        auto h = [](double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); };
        const double expected = h(0.26) - h(0.1);
        require(std::abs(r.value - expected) <= 1e-6,
                "cascade value off by " + fmt(r.value - expected));
        require(std::abs(r.p_star(0) - 0.5) <= 1e-4, "maximizer not uniform");
        return "value " + fmt(r.value);
    });

    check.run("max_cmi_restart_stability", [&] {
        Rng rng(opts.seed ^ 0xdd);
        const WiretapKernel w = randomWiretapKernel(rng, 2, 2, 2, 0.1);
        double lo = 1e300, hi = -1e300;
        for (int r = 0; r < 5; ++r) {
            MaxCmiOptions o;
            o.init = randomDistribution(rng, 2, 0.2);
            const MaxCmiResult res = maxConditionalMutualInformation(w, o);
            lo = std::min(lo, res.value);
            hi = std::max(hi, res.value);
        }
        require(hi - lo <= 1e-8, "restart spread " + fmt(hi - lo));
        return "spread " + fmt(hi - lo);
    });

    check.run("minimax_identity", [&] {
        Rng rng(opts.seed ^ 0xee);
        double worst = 0;
        for (int i = 0; i < 2 * scale; ++i) {
            const WiretapKernel w = randomWiretapKernel(rng, 2, 2, 2, 0.1);
            worst = std::max(worst, minimaxIdentityCheck(w, 2).max_gap);
        }
        require(worst <= 1e-6, "saddle-point gap " + fmt(worst));
        return "max gap " + fmt(worst);
    });

    check.run("sk_reduction_holds", [&] {
        Rng rng(opts.seed ^ 0xff);
        int checked = 0;
        for (int i = 0; i < 100 * scale; ++i) {
            const Index k = 2 + static_cast<Index>(rng() % 3);
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
                (1.0 - err - tv) * (0.2 + 0.6 * std::uniform_real_distribution<double>(0, 1)(rng));
            // Reference: the joint's own conditional marginals given Z.
            Joint q = Joint::zeros({k, k, zs});
            const Joint pkhz = joint.marginal({1, 2});
            for (Index z = 0; z < zs; ++z) {
                const double mz = pz.cell(z);
                for (Index a = 0; a < k; ++a) {
                    for (Index b = 0; b < k; ++b) {
                        q.cell((a * k + b) * zs + z) =
                            mz < 1e-15 ? 0.0
                                       : pkz.cell(a * zs + z) * pkhz.cell(b * zs + z) / mz;
                    }
                }
            }
            q.validate();
            const SkReductionReport rep = skReductionCheck(joint, k, err, tv, eta, q);
            require(rep.holds, "reduction inequality failed");
            ++checked;
        }
        return std::to_string(checked) + " instances";
    });

    check.run("factorized_channel_independence", [&] {
        Rng rng(opts.seed ^ 0x101);
        double worst = 0;
        for (int i = 0; i < 10 * scale; ++i) {
            const Index n = 1 + static_cast<Index>(rng() % 2);
            const Index uxs = 1 + static_cast<Index>(rng() % 2);
            const Index uys = 1 + static_cast<Index>(rng() % 2);
            const WiretapCode code = randomCode(rng, n, 2, 2, 2, 2, uxs, uys);
            const Dmc v2 = randomDmc(rng, 2, 2, 0.05);
            const Dmc v1 = randomDmc(rng, 2, 2, 0.05);
            worst = std::max(worst, factorizationCheck(code, FactorizedKernel{v2, v1}));
        }
        require(worst <= 1e-9, "leak through factorized channel: " + fmt(worst));

        // Negative control: Y copies X while Z is a noisy copy of X, which
        // does not factorize through Z; sending M in the clear must show up.
        Mat rows(2, 4);
        rows << 0.75, 0.25, 0.0, 0.0, 0.0, 0.0, 0.25, 0.75;
        const WiretapKernel direct(2, 2, rows);
        WiretapCode send = WiretapCode::trivial(1, 2, 2, 2);
        send.encoder[0] = {0, 1};
        send.decoder = {0, 1};
        send.validate();
        const double leak = factorizationCheck(send, direct);
        require(leak > 0.01, "non-factorized control not detected");
        return "max factorized leak " + fmt(worst) + ", control " + fmt(leak);
    });

    check.run("converse_bound_random_codes", [&] {
        Rng rng(opts.seed ^ 0x202);
        const WiretapKernel w = WiretapKernel::cascade(Dmc::bsc(0.1), Dmc::bsc(0.2));
        const FactorizedKernel v = defaultConverseChannel(w);
        int checked = 0;
        for (int i = 0; i < 30 * scale; ++i) {
            const Index n = 1 + static_cast<Index>(rng() % 2);
            const CodeShape shape{n, 2, 2, 2, 2};
            const std::uint64_t count = deterministicCodeCount(shape);
            const WiretapCode code = deterministicCodeFromRank(shape, rng() % count);
            const CodeMetrics m = codeMetrics(executeExact(code, w), code);
            for (double eta : {0.05, 0.1, 0.2}) {
                if (m.error_prob + m.leakage + eta >= 1.0) continue;
                const ConverseValidation val = validateConverse(code, w, eta, v);
                require(val.holds, "converse bound violated by a code");
                ++checked;
            }
        }
        return std::to_string(checked) + " (code, eta) pairs";
    });

    check.run("monte_carlo_matches_exact", [&] {
        Rng rng(opts.seed ^ 0x303);
        const WiretapKernel w = randomWiretapKernel(rng, 2, 2, 2, 0.05);
        const CodeShape shape{2, 2, 2, 2, 2};
        const WiretapCode code =
            deterministicCodeFromRank(shape, rng() % deterministicCodeCount(shape));
        const ProtocolJoint pj = executeExact(code, w);
        std::vector<Index> mzf{pj.mComponent()};
        for (Index t = 0; t < 2; ++t) mzf.push_back(pj.zComponent(t));
        for (Index t = 0; t < 2; ++t) mzf.push_back(pj.fComponent(t));
        const Joint exact = pj.joint.marginal(mzf);
        const std::uint64_t trials = 100000;
        const McResult mc = monteCarlo(code, w, trials, opts.seed + 9);
        for (Index c = 0; c < exact.cells(); ++c) {
            const double pe = exact.cell(c);
            const double sigma = std::sqrt(std::max(pe * (1 - pe), 1e-12) /
                                           static_cast<double>(trials));
            require(std::abs(mc.mzf_empirical.cell(c) - pe) <= 3 * sigma + 1e-9,
                    "cell " + std::to_string(c) + " outside 3-sigma band");
        }
        const CodeMetrics m = codeMetrics(pj, code);
        const double esig = std::sqrt(std::max(m.error_prob * (1 - m.error_prob), 1e-12) /
                                      static_cast<double>(trials));
        require(std::abs(mc.error_freq - m.error_prob) <= 3 * esig + 1e-9,
                "error frequency outside band");
        return std::string();
    });

    check.run("determinism_rerun", [&] {
        const Distribution p{0.5, 0.5};
        const Distribution q{0.9, 0.1};
        const std::vector<Index> ns{1, 8, 64};
        const auto a = steinExponentCurve(p, q, 0.1, ns);
        const auto b = steinExponentCurve(p, q, 0.1, ns);
        for (std::size_t i = 0; i < a.size(); ++i) {
            require(a[i].beta == b[i].beta && a[i].log2_beta == b[i].log2_beta,
                    "stein curve not reproducible");
        }
        const WiretapKernel w = WiretapKernel::cascade(Dmc::bsc(0.1), Dmc::bsc(0.2));
        const MaxCmiResult r1 = maxConditionalMutualInformation(w);
        const MaxCmiResult r2 = maxConditionalMutualInformation(w);
        require(r1.value == r2.value, "optimizer not reproducible");
        return std::string();
    });

    return results;
}

}  // namespace wtk
