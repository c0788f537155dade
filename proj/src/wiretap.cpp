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

#include "wtk/wiretap.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace wtk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Precomputed factorization W(y,z|x) = W2(z|x) W1(y|z,x); every wiretap
/// kernel admits it with W2 the Z-marginal.
struct CmiWork {
    Index xs, ys, zs;
    Mat w2;                 // x by z
    std::vector<Mat> cond;  // per x: z by y, rows W1(.|z,x); uniform where W2 = 0
};

CmiWork buildCmiWork(const WiretapKernel& w) {
    CmiWork work;
    work.xs = w.inputSize();
    work.ys = w.ySize();
    work.zs = w.zSize();
    work.w2 = Mat::Zero(work.xs, work.zs);
    work.cond.assign(static_cast<std::size_t>(work.xs), Mat::Zero(work.zs, work.ys));
    for (Index x = 0; x < work.xs; ++x) {
        for (Index z = 0; z < work.zs; ++z) {
            double mass = 0;
            for (Index y = 0; y < work.ys; ++y) mass += w.prob(x, y, z);
            work.w2(x, z) = mass;
            for (Index y = 0; y < work.ys; ++y) {
                work.cond[static_cast<std::size_t>(x)](z, y) =
                    mass > kSupportTol ? w.prob(x, y, z) / mass : 1.0 / static_cast<double>(work.ys);
            }
        }
    }
    return work;
}

/// Receiver-side channel induced by the input law: V1(y|z) = P(y|z).
Mat inducedV1(const CmiWork& w, const Vec& p) {
    Mat v1 = Mat::Zero(w.zs, w.ys);
    Vec pz = Vec::Zero(w.zs);
    for (Index x = 0; x < w.xs; ++x) {
        for (Index z = 0; z < w.zs; ++z) {
            const double wz = p(x) * w.w2(x, z);
            pz(z) += wz;
            for (Index y = 0; y < w.ys; ++y) {
                v1(z, y) += wz * w.cond[static_cast<std::size_t>(x)](z, y);
            }
        }
    }
    for (Index z = 0; z < w.zs; ++z) {
        if (pz(z) > kSupportTol) {
            v1.row(z) /= pz(z);
        } else {
            v1.row(z).setConstant(1.0 / static_cast<double>(w.ys));
        }
    }
    return v1;
}

/// g(x) = sum_z W2(z|x) D(W1(.|z,x) || V1(.|z)); the objective is
/// f(p, V1) = sum_x p(x) g(x), linear in p for fixed V1.
Vec gradientAgainst(const CmiWork& w, const Mat& v1) {
    Vec g = Vec::Zero(w.xs);
    for (Index x = 0; x < w.xs; ++x) {
        double total = 0;
        for (Index z = 0; z < w.zs; ++z) {
            const double wz = w.w2(x, z);
            if (wz < kSupportTol) continue;
            total += wz * klDivergenceBits(w.cond[static_cast<std::size_t>(x)].row(z), v1.row(z));
        }
        g(x) = total;
    }
    return g;
}

/// max over x of g(x; V1): the inner P_X maximum of the linear objective.
double vertexMax(const CmiWork& w, const Mat& v1) {
    return gradientAgainst(w, v1).maxCoeff();
}

/// I(X;Y|Z) at p: the objective at the induced V1. Inputs with zero mass are
/// skipped so boundary points of the simplex stay finite.
double cmiOf(const CmiWork& w, const Vec& p) {
    const Mat v1 = inducedV1(w, p);
    const Vec g = gradientAgainst(w, v1);
    double f = 0;
    for (Index x = 0; x < w.xs; ++x) {
        if (p(x) >= kSupportTol) f += p(x) * g(x);
    }
    return f;
}

}  // namespace

WiretapKernel::WiretapKernel(Index y_size, Index z_size, Mat rows)
    : y_size_(y_size), z_size_(z_size), rows_(std::move(rows)) {
    if (y_size < 1 || z_size < 1 || rows_.cols() != y_size * z_size) {
        throw InvalidDistribution("WiretapKernel: output shape mismatch");
    }
    rows_ = Dmc(rows_).matrix();  // row-stochastic validation
}

WiretapKernel WiretapKernel::cascade(const Dmc& w1, const Dmc& w2) {
    if (w1.outputSize() != w2.inputSize()) throw AlphabetMismatch("cascade: Y alphabets differ");
    const Index ys = w1.outputSize(), zs = w2.outputSize();
    Mat rows(w1.inputSize(), ys * zs);
    for (Index x = 0; x < w1.inputSize(); ++x) {
        for (Index y = 0; y < ys; ++y) {
            for (Index z = 0; z < zs; ++z) rows(x, y * zs + z) = w1(x, y) * w2(y, z);
        }
    }
    return WiretapKernel(ys, zs, std::move(rows));
}

Dmc WiretapKernel::yMarginal() const {
    Mat m = Mat::Zero(inputSize(), y_size_);
    for (Index x = 0; x < inputSize(); ++x) {
        for (Index y = 0; y < y_size_; ++y) {
            for (Index z = 0; z < z_size_; ++z) m(x, y) += prob(x, y, z);
        }
    }
    return Dmc(std::move(m));
}

Dmc WiretapKernel::zMarginal() const {
    Mat m = Mat::Zero(inputSize(), z_size_);
    for (Index x = 0; x < inputSize(); ++x) {
        for (Index y = 0; y < y_size_; ++y) {
            for (Index z = 0; z < z_size_; ++z) m(x, z) += prob(x, y, z);
        }
    }
    return Dmc(std::move(m));
}

Joint WiretapKernel::jointWith(const Distribution& px, const Caps& caps) const {
    if (px.size() != inputSize()) throw AlphabetMismatch("jointWith: input size mismatch");
    Joint j = Joint::zeros({inputSize(), y_size_, z_size_}, caps);
    for (Index x = 0; x < inputSize(); ++x) {
        for (Index c = 0; c < rows_.cols(); ++c) {
            j.cell(x * rows_.cols() + c) = px(x) * rows_(x, c);
        }
    }
    j.validate();
    return j;
}

WiretapKernel FactorizedKernel::compose() const {
    if (v2.outputSize() != v1.inputSize()) {
        throw AlphabetMismatch("FactorizedKernel: Z alphabets differ");
    }
    const Index ys = v1.outputSize(), zs = v2.outputSize();
    Mat rows(v2.inputSize(), ys * zs);
    for (Index x = 0; x < v2.inputSize(); ++x) {
        for (Index y = 0; y < ys; ++y) {
            for (Index z = 0; z < zs; ++z) rows(x, y * zs + z) = v2(x, z) * v1(z, y);
        }
    }
    return WiretapKernel(ys, zs, std::move(rows));
}

DegradedCheck checkDegraded(const WiretapKernel& w, double tol) {
    const Index xs = w.inputSize(), ys = w.ySize(), zs = w.zSize();
    Mat w1 = Mat::Zero(xs, ys);
    for (Index x = 0; x < xs; ++x) {
        for (Index y = 0; y < ys; ++y) {
            for (Index z = 0; z < zs; ++z) w1(x, y) += w.prob(x, y, z);
        }
    }
    Mat w2 = Mat::Zero(ys, zs);
    double max_gap = 0;
    for (Index y = 0; y < ys; ++y) {
        bool have_candidate = false;
        for (Index x = 0; x < xs; ++x) {
            if (w1(x, y) <= tol) continue;
            Vec cand(zs);
            for (Index z = 0; z < zs; ++z) cand(z) = w.prob(x, y, z) / w1(x, y);
            if (!have_candidate) {
                w2.row(y) = cand.transpose();
                have_candidate = true;
            } else {
                const double gap = (w2.row(y).transpose() - cand).cwiseAbs().maxCoeff();
                max_gap = std::max(max_gap, gap);
                if (gap > tol) return DegradedCheck{false, std::nullopt, max_gap};
            }
        }
        if (!have_candidate) w2.row(y).setConstant(1.0 / static_cast<double>(zs));
        // Guard against drift in the witness rows.
        w2.row(y) /= w2.row(y).sum();
    }
    return DegradedCheck{true, Dmc(std::move(w2)), max_gap};
}

double cmiAtInput(const WiretapKernel& w, const Distribution& px) {
    if (px.size() != w.inputSize()) throw AlphabetMismatch("cmiAtInput: input size mismatch");
    const CmiWork work = buildCmiWork(w);
    return cmiOf(work, px.probs());
}

MaxCmiResult maxConditionalMutualInformation(const WiretapKernel& w, const MaxCmiOptions& opts) {
    const CmiWork work = buildCmiWork(w);
    Vec p;
    if (opts.init) {
        if (opts.init->size() != w.inputSize()) {
            throw AlphabetMismatch("maxConditionalMutualInformation: init size mismatch");
        }
        // Multiplicative updates need an interior start.
        p = opts.init->probs().cwiseMax(1e-15);
        p /= p.sum();
    } else {
        p = Vec::Constant(w.inputSize(), 1.0 / static_cast<double>(w.inputSize()));
    }

    auto ascend = [](const Vec& from, const Vec& g, double step) {
        const double ub = g.maxCoeff();
        Vec next = from;
        for (Index x = 0; x < next.size(); ++x) next(x) *= std::exp2(step * (g(x) - ub));
        next /= next.sum();
        return next;
    };

    Mat v1 = inducedV1(work, p);
    Vec g = gradientAgainst(work, v1);
    double f = g.dot(p);
    double best_value = f;
    Vec best_p = p;
    double gap = g.maxCoeff() - f;
    // Monotone mirror ascent with a gain schedule: the step grows while
    // iterations keep improving and backtracks otherwise, so flat objectives
    // still reach the duality-gap certificate within the iteration budget.
    double step = opts.step;
    int iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        if (gap <= opts.tol) {
            return MaxCmiResult{best_value, Distribution(best_p), true, iter, gap};
        }
        const Vec cand = ascend(p, g, step);
        const Mat v1c = inducedV1(work, cand);
        const Vec gc = gradientAgainst(work, v1c);
        const double fc = gc.dot(cand);
        if (fc >= f - 1e-15 || step <= 1e-12) {
            p = cand;
            g = gc;
            f = fc;
            step = std::min(step * 1.5, 1e4);
            if (f > best_value) {
                best_value = f;
                best_p = p;
            }
            gap = g.maxCoeff() - f;
        } else {
            step *= 0.5;
        }
    }
    return MaxCmiResult{best_value, Distribution(best_p), false, iter, gap};
}

namespace {

/// Golden-section maximum of a concave 1-d function on [lo, hi].
template <class F>
double goldenMax(F&& f, double lo, double hi, int iters = 160) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && b - a > 1e-14; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f(0.5 * (a + b)), std::max(f1, f2));
}

struct OracleMax {
    double value;
    Vec p;
};

/// Independent evaluation of max_P min_V1 by grid search plus local
/// refinement over the input simplex (|X| <= 3).
OracleMax maxMinOracle(const CmiWork& work) {
    if (work.xs == 1) return {cmiOf(work, Vec::Ones(1)), Vec::Ones(1)};
    if (work.xs == 2) {
        auto eval = [&](double t) {
            Vec p(2);
            p << t, 1.0 - t;
            return cmiOf(work, p);
        };
        double best_t = 0.5, best = -kInf;
        for (int i = 0; i <= 100; ++i) {
            const double t = i / 100.0;
            const double v = eval(t);
            if (v > best) {
                best = v;
                best_t = t;
            }
        }
        double lo = std::max(0.0, best_t - 0.02), hi = std::min(1.0, best_t + 0.02);
        // Golden section with argmax tracking.
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        double f1 = eval(x1), f2 = eval(x2);
        while (hi - lo > 1e-13) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = eval(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = eval(x1);
            }
        }
        const double t = 0.5 * (lo + hi);
        Vec p(2);
        p << t, 1.0 - t;
        return {eval(t), p};
    }
    if (work.xs == 3) {
        auto eval = [&](double a, double b) {
            Vec p(3);
            p << a, b, 1.0 - a - b;
            return cmiOf(work, p);
        };
        double ca = 1.0 / 3, cb = 1.0 / 3, h = 0.5, best = -kInf;
        for (int level = 0; level < 40; ++level) {
            double la = ca, lb = cb;
            for (int i = 0; i <= 8; ++i) {
                for (int j = 0; j <= 8; ++j) {
                    const double a = std::clamp(ca - h + 2 * h * i / 8.0, 0.0, 1.0);
                    const double b = std::clamp(cb - h + 2 * h * j / 8.0, 0.0, 1.0);
                    if (a + b > 1.0) continue;
                    const double v = eval(a, b);
                    if (v > best) {
                        best = v;
                        la = a;
                        lb = b;
                    }
                }
            }
            ca = la;
            cb = lb;
            h *= 0.5;
        }
        Vec p(3);
        p << ca, cb, 1.0 - ca - cb;
        return {best, p};
    }
    throw SizeOverflow("minimaxIdentityCheck: max-min oracle supports |X| <= 3");
}

/// Independent evaluation of min_V1 max_P: multiscale grid over the V1
/// parameters, exact vertex maximum inside. Weak duality makes any V1 a
/// certificate from above, so the search is seeded both at the window
/// center and at caller-supplied candidates (the induced conditional of the
/// max-min argmax sits at the saddle).
double minMaxOracle(const CmiWork& work, int restarts,
                    const std::vector<std::vector<double>>& seeds) {
    const Index dims = work.zs * (work.ys - 1);
    if (dims < 1 || dims > 4) {
        throw SizeOverflow("minimaxIdentityCheck: min-max oracle supports z(y-1) <= 4 parameters");
    }
    auto buildV1 = [&](const std::vector<double>& coords, Mat& v1) -> bool {
        for (Index z = 0; z < work.zs; ++z) {
            double rest = 1.0;
            for (Index y = 0; y + 1 < work.ys; ++y) {
                const double c = coords[static_cast<std::size_t>(z * (work.ys - 1) + y)];
                v1(z, y) = c;
                rest -= c;
            }
            if (rest < 0) return false;
            v1(z, work.ys - 1) = rest;
        }
        return true;
    };
    Mat v1(work.zs, work.ys);
    std::vector<std::vector<double>> starts = seeds;
    starts.push_back(std::vector<double>(static_cast<std::size_t>(dims), 0.5));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.25, 0.75);
    for (int r = 1; r < std::max(1, restarts); ++r) {
        std::vector<double> c(static_cast<std::size_t>(dims));
        for (double& v : c) v = u(rng);
        starts.push_back(std::move(c));
    }

    double global_best = kInf;
    for (const std::vector<double>& start : starts) {
        std::vector<double> center = start;
        double h = 0.5, best = kInf;
        std::vector<double> coords(center.size());
        for (int level = 0; level < 44; ++level) {
            std::vector<double> best_center = center;
            std::vector<int> digit(center.size(), 0);
            const int per_dim = 9;
            while (true) {
                for (std::size_t d = 0; d < coords.size(); ++d) {
                    coords[d] = std::clamp(center[d] - h + 2 * h * digit[d] / (per_dim - 1.0),
                                           0.0, 1.0);
                }
                if (buildV1(coords, v1)) {
                    const double value = vertexMax(work, v1);
                    if (value < best) {
                        best = value;
                        best_center = coords;
                    }
                }
                std::size_t d = 0;
                while (d < digit.size() && ++digit[d] == per_dim) digit[d++] = 0;
                if (d == digit.size()) break;
            }
            center = best_center;
            h *= 0.5;
        }
        global_best = std::min(global_best, best);
    }
    return global_best;
}

}  // namespace

MinimaxReport minimaxIdentityCheck(const WiretapKernel& w, int restarts) {
    const CmiWork work = buildCmiWork(w);
    const OracleMax a = maxMinOracle(work);
    const Mat saddle_v1 = inducedV1(work, a.p);
    std::vector<double> seed(static_cast<std::size_t>(work.zs * (work.ys - 1)));
    for (Index z = 0; z < work.zs; ++z) {
        for (Index y = 0; y + 1 < work.ys; ++y) {
            seed[static_cast<std::size_t>(z * (work.ys - 1) + y)] = saddle_v1(z, y);
        }
    }
    const double b = minMaxOracle(work, restarts, {seed});
    const double c = maxConditionalMutualInformation(w).value;
    const double gap = std::max({std::abs(a.value - b), std::abs(a.value - c), std::abs(b - c)});
    return MinimaxReport{a.value, b, c, gap};
}

FactorizedKernel defaultConverseChannel(const WiretapKernel& w, const MaxCmiOptions& opts) {
    const MaxCmiResult r = maxConditionalMutualInformation(w, opts);
    const CmiWork work = buildCmiWork(w);
    const Mat v1 = inducedV1(work, r.p_star.probs());
    return FactorizedKernel{w.zMarginal(), Dmc(v1)};
}

ConverseBoundReport converseBound(const WiretapKernel& w, double eps, double delta, double eta,
                                  Index n, std::optional<FactorizedKernel> v, const Caps& caps,
                                  const MaxCmiOptions& cmi_opts) {
    if (!(eps >= 0.0) || !(delta >= 0.0) || !(eps + delta < 1.0)) {
        throw ParameterDomain("converseBound: need eps, delta >= 0 and eps + delta < 1");
    }
    if (!(eta > 0.0 && eta < 1.0 - eps - delta)) {
        throw ParameterDomain("converseBound: need 0 < eta < 1 - eps - delta");
    }
    if (n < 1) throw ParameterDomain("converseBound: n must be >= 1");

    FactorizedKernel vf = v ? *v : defaultConverseChannel(w, cmi_opts);
    const WiretapKernel vk = vf.compose();
    if (vk.inputSize() != w.inputSize() || vk.ySize() != w.ySize() || vk.zSize() != w.zSize()) {
        throw AlphabetMismatch("converseBound: V alphabets differ from W");
    }
    const Dmc wd = w.asJointDmc();
    const Dmc vd = vk.asJointDmc();
    const double eps_total = eps + delta + eta;

    bool brute = true;
    try {
        AdaptiveStrategy::spaceSize(n, wd.inputSize(), wd.outputSize(), caps.max_strategies);
        std::uint64_t cells = 1;
        for (Index t = 0; t < n; ++t) {
            cells *= static_cast<std::uint64_t>(wd.outputSize());
            if (cells > caps.max_cells) throw SizeOverflow("output law exceeds cap");
        }
    } catch (const SizeOverflow&) {
        brute = false;
    }

    ConverseBoundReport report{eps, delta, eta, n, std::move(vf), 0.0, 0.0, 0.0, 0.0, !brute, -1};
    if (brute) {
        const DiscriminationResult r = betaActiveBruteforce(wd, vd, eps_total, n, caps);
        report.beta = r.beta;
        report.log2_beta = r.log2_beta;
    } else {
        double best_log2 = kInf;
        Index best_x = 0;
        double best_beta = 1.0;
        for (Index x = 0; x < wd.inputSize(); ++x) {
            const BetaResult r = betaProductIid(wd.row(x), vd.row(x), eps_total, n, caps);
            if (r.log2_beta < best_log2) {
                best_log2 = r.log2_beta;
                best_beta = r.beta;
                best_x = x;
            }
        }
        report.beta = best_beta;
        report.log2_beta = best_log2;
        report.x_star = best_x;
    }
    report.bound_bits = -report.log2_beta + 2.0 * std::log2(1.0 / eta);
    report.per_symbol_rate = report.bound_bits / static_cast<double>(n);
    return report;
}

SkReductionReport skReductionCheck(const Joint& joint, Index k_size, double eps, double delta,
                                   double eta, const Joint& q) {
    if (joint.componentCount() != 3 || q.componentCount() != 3) {
        throw AlphabetMismatch("skReductionCheck: joints must have components (K, K-hat, Z)");
    }
    if (joint.componentSizes() != q.componentSizes()) {
        throw AlphabetMismatch("skReductionCheck: P and Q alphabets differ");
    }
    const Index ks = joint.componentSizes()[0];
    const Index khs = joint.componentSizes()[1];
    const Index zs = joint.componentSizes()[2];
    if (ks != k_size || khs != k_size) {
        throw AlphabetMismatch("skReductionCheck: K alphabets do not match k_size");
    }
    if (!(eps >= 0.0) || !(delta >= 0.0) || !(eps + delta < 1.0)) {
        throw ParameterDomain("skReductionCheck: need eps, delta >= 0 and eps + delta < 1");
    }
    if (!(eta > 0.0 && eta < 1.0 - eps - delta)) {
        throw ParameterDomain("skReductionCheck: need 0 < eta < 1 - eps - delta");
    }

    // Q must factorize as Q_{K|Z} Q_{Khat|Z} Q_Z.
    for (Index z = 0; z < zs; ++z) {
        double qz = 0;
        Vec qk = Vec::Zero(ks), qkh = Vec::Zero(k_size);
        for (Index k = 0; k < ks; ++k) {
            for (Index kh = 0; kh < khs; ++kh) {
                const double m = q.cell((k * khs + kh) * zs + z);
                qz += m;
                qk(k) += m;
                qkh(kh) += m;
            }
        }
        if (qz < kSupportTol) continue;
        for (Index k = 0; k < ks; ++k) {
            for (Index kh = 0; kh < khs; ++kh) {
                const double lhs = q.cell((k * khs + kh) * zs + z) * qz;
                const double rhs = qk(k) * qkh(kh);
                if (std::abs(lhs - rhs) > 1e-9) {
                    throw ParameterDomain("skReductionCheck: q is not Z-factorized");
                }
            }
        }
    }

    // Declared hypotheses must hold for the supplied joint.
    double err = 0;
    for (Index k = 0; k < ks; ++k) {
        for (Index kh = 0; kh < khs; ++kh) {
            if (k == kh) continue;
            for (Index z = 0; z < zs; ++z) err += joint.cell((k * khs + kh) * zs + z);
        }
    }
    if (err > eps + kMassTol) {
        throw HypothesisViolation("skReductionCheck: Pr[K != K-hat] exceeds eps");
    }
    const Joint pkz = joint.marginal({0, 2});
    const Joint pz = joint.marginal({2});
    Joint unif_pz = Joint::zeros({ks, zs});
    for (Index k = 0; k < ks; ++k) {
        for (Index z = 0; z < zs; ++z) {
            unif_pz.cell(k * zs + z) = pz.cell(z) / static_cast<double>(ks);
        }
    }
    if (totalVariation(pkz, unif_pz) > delta + kMassTol) {
        throw HypothesisViolation("skReductionCheck: TV(P_KZ, unif x P_Z) exceeds delta");
    }

    const BetaResult b = betaExactVec(joint.probs(), q.probs(), eps + delta + eta);
    SkReductionReport report;
    report.lhs = std::log2(static_cast<double>(k_size));
    report.rhs = -b.log2_beta + 2.0 * std::log2(1.0 / eta);
    report.holds = report.lhs <= report.rhs + 1e-9;
    report.beta = b.beta;
    report.log2_beta = b.log2_beta;
    return report;
}

double capacityFormula(const WiretapKernel& w, double eps, double delta,
                       const MaxCmiOptions& opts, double degraded_tol) {
    if (!(eps > 0.0 && eps < 1.0) || !(delta >= 0.0 && delta <= 1.0)) {
        throw ParameterDomain("capacityFormula: need 0 < eps < 1 and 0 <= delta <= 1");
    }
    const DegradedCheck check = checkDegraded(w, degraded_tol);
    if (!check.is_degraded) throw NotDegraded("capacityFormula: kernel is not degraded");
    if (eps < 1.0 - delta) {
        return maxConditionalMutualInformation(w, opts).value;
    }
    // Above the secrecy-free corner the secrecy constraint is vacuous and the
    // capacity is that of the receiver channel alone: I(X;Y) = I(X;Y|Z) for a
    // collapsed single-value Z.
    const Dmc w1 = w.yMarginal();
    const WiretapKernel collapsed(w1.outputSize(), 1, w1.matrix());
    return maxConditionalMutualInformation(collapsed, opts).value;
}

}  // namespace wtk
