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

#include "wtk/np_testing.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace wtk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// One likelihood-ratio class: all outcomes sharing log2 p/q == key.
struct RatioGroup {
    double key;      // +inf for null-support outcomes outside the alternative
    double p_mass;   // linear; may underflow to zero for far classes
    double q_mass;   // linear; authoritative when it does not underflow
    double log2_q;   // always valid; -inf iff q_mass is exactly zero
};

double log2Add(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log2(1.0 + std::exp2(b - a));
}

/// Core Neyman-Pearson accumulation: sort by ratio descending, merge equal
/// ratios into one boundary group, accept p-mass up to 1 - eps with a
/// fractional acceptance on the boundary.
BetaResult accumulateBeta(std::vector<RatioGroup> groups, double eps) {
    std::sort(groups.begin(), groups.end(),
              [](const RatioGroup& a, const RatioGroup& b) { return a.key > b.key; });
    std::vector<RatioGroup> merged;
    merged.reserve(groups.size());
    for (const RatioGroup& g : groups) {
        if (!merged.empty() && merged.back().key == g.key) {
            merged.back().p_mass += g.p_mass;
            merged.back().q_mass += g.q_mass;
            merged.back().log2_q = log2Add(merged.back().log2_q, g.log2_q);
        } else {
            merged.push_back(g);
        }
    }

    const double target = 1.0 - eps;
    KahanSum acc_p;
    KahanSum q_lin;
    Log2Sum q_log;
    BetaResult result;
    result.threshold = ThresholdTest{-kInf, 1.0};
    for (const RatioGroup& g : merged) {
        const double remaining = target - acc_p.value();
        if (g.p_mass < remaining) {
            acc_p.add(g.p_mass);
            q_lin.add(g.q_mass);
            q_log.add(g.log2_q);
        } else {
            double gamma = g.p_mass > 0 ? remaining / g.p_mass : 1.0;
            gamma = std::clamp(gamma, 0.0, 1.0);
            acc_p.add(gamma * g.p_mass);
            q_lin.add(gamma * g.q_mass);
            if (gamma > 0) q_log.add(std::log2(gamma) + g.log2_q);
            result.threshold = ThresholdTest{g.key, gamma};
            break;
        }
    }
    result.type1 = std::max(0.0, 1.0 - acc_p.value());
    result.beta = std::max(0.0, q_lin.value());
    // Linear accumulation is authoritative while it has full precision;
    // the log-domain sum takes over when beta underflows.
    result.log2_beta = result.beta >= 1e-280 ? std::log2(result.beta) : q_log.value();
    if (result.beta < 1e-280) result.beta = std::exp2(result.log2_beta);
    return result;
}

void checkEps(double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) throw ParameterDomain("beta: eps must lie in [0, 1)");
}

double outcomeKey(double p, double q) {
    if (q < kSupportTol) return kInf;
    return std::log2(p) - std::log2(q);
}

// ---------------------------------------------------------------------------
// i.i.d. product path: type classes.
// ---------------------------------------------------------------------------

/// Per-symbol tables restricted to the free alphabet (p and q both supported).
struct IidTables {
    Index n = 0;
    Index kf = 0;                // free alphabet size
    std::vector<double> lp, lq;  // log2 p_i, log2 q_i
    std::vector<double> d;       // lp - lq
    std::vector<double> lf;      // log2 k!, k = 0..n, via summed logs
};

/// Enumerates compositions of n over the free alphabet, first count
/// restricted to [c0_lo, c0_hi], in lexicographic order. The leaf callback
/// receives (key, log2 p-mass, log2 q-mass) of each type class.
template <class Leaf>
void forEachClass(const IidTables& t, Index c0_lo, Index c0_hi, Leaf&& leaf) {
    const Index kf = t.kf;
    if (kf == 1) {
        if (c0_lo <= t.n && t.n <= c0_hi) {
            leaf(static_cast<double>(t.n) * t.d[0], static_cast<double>(t.n) * t.lp[0],
                 static_cast<double>(t.n) * t.lq[0]);
        }
        return;
    }
    // State carried down the prefix recursion: remaining count, partial
    // multinomial log (lf[n] - sum lf[c_i]) and the three dot products.
    struct Frame {
        Index rem;
        double mpre, lpdot, lqdot, kdot;
    };
    auto inner = [&](Index j, const Frame& f, Index lo, Index hi) {
        // Two symbols left: c_j = a, c_{j+1} = rem - a. All per-class values
        // are affine in a up to the two log-factorial lookups, so each class
        // costs a handful of flops.
        const double lp_base = f.lpdot + static_cast<double>(f.rem) * t.lp[j + 1];
        const double lq_base = f.lqdot + static_cast<double>(f.rem) * t.lq[j + 1];
        const double k_base = f.kdot + static_cast<double>(f.rem) * t.d[j + 1];
        const double lp_slope = t.lp[j] - t.lp[j + 1];
        const double lq_slope = t.lq[j] - t.lq[j + 1];
        const double k_slope = t.d[j] - t.d[j + 1];
        const double* lf = t.lf.data();
        for (Index a = lo; a <= hi; ++a) {
            const double da = static_cast<double>(a);
            const double log2m = f.mpre - lf[a] - lf[f.rem - a];
            leaf(k_base + da * k_slope, log2m + lp_base + da * lp_slope,
                 log2m + lq_base + da * lq_slope);
        }
    };
    auto recurse = [&](auto&& self, Index j, const Frame& f) -> void {
        if (j == kf - 2) {
            inner(j, f, 0, f.rem);
            return;
        }
        for (Index c = 0; c <= f.rem; ++c) {
            self(self, j + 1,
                 Frame{f.rem - c, f.mpre - t.lf[c], f.lpdot + static_cast<double>(c) * t.lp[j],
                       f.lqdot + static_cast<double>(c) * t.lq[j],
                       f.kdot + static_cast<double>(c) * t.d[j]});
        }
    };
    const Frame root{t.n, t.lf[static_cast<std::size_t>(t.n)], 0.0, 0.0, 0.0};
    if (kf == 2) {
        inner(0, root, std::max<Index>(0, c0_lo), std::min(t.n, c0_hi));
        return;
    }
    for (Index c0 = std::max<Index>(0, c0_lo); c0 <= std::min(t.n, c0_hi); ++c0) {
        recurse(recurse, 1,
                Frame{t.n - c0, root.mpre - t.lf[c0], static_cast<double>(c0) * t.lp[0],
                      static_cast<double>(c0) * t.lq[0], static_cast<double>(c0) * t.d[0]});
    }
}

std::uint64_t binomialChecked(std::uint64_t n, std::uint64_t r) {
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > (static_cast<unsigned __int128>(1) << 62)) {
            throw SizeOverflow("type-class count exceeds 2^62");
        }
    }
    return static_cast<std::uint64_t>(acc);
}

/// Contiguous c0 slabs with roughly equal class counts, for the parallel
/// streaming reduction. The partition depends only on (n, kf, slabs), so the
/// merged result is reproducible for a fixed worker budget.
std::vector<std::pair<Index, Index>> slabPartition(const IidTables& t, int slabs) {
    slabs = std::max(1, std::min<int>(slabs, static_cast<int>(t.n) + 1));
    std::vector<double> weight(static_cast<std::size_t>(t.n) + 1);
    for (Index c0 = 0; c0 <= t.n; ++c0) {
        // classes with first count c0: C(n - c0 + kf - 2, kf - 2)
        double w = 1.0;
        for (Index i = 1; i <= t.kf - 2; ++i) {
            w *= static_cast<double>(t.n - c0 + t.kf - 1 - i) / static_cast<double>(i);
        }
        weight[static_cast<std::size_t>(c0)] = w;
    }
    double total = 0;
    for (double w : weight) total += w;
    std::vector<std::pair<Index, Index>> ranges;
    Index begin = 0;
    double acc = 0;
    for (int s = 0; s < slabs; ++s) {
        const double goal = total * static_cast<double>(s + 1) / slabs;
        Index end = begin;
        while (end <= t.n && (acc < goal || end == begin)) {
            acc += weight[static_cast<std::size_t>(end)];
            ++end;
        }
        if (s == slabs - 1) end = t.n + 1;
        if (begin <= t.n && end > begin) ranges.emplace_back(begin, end - 1);
        begin = end;
        if (begin > t.n) break;
    }
    return ranges;
}

template <class Fn>
void runSlabs(const std::vector<std::pair<Index, Index>>& ranges, int threads, Fn&& fn) {
    if (ranges.size() <= 1 || threads <= 1) {
        for (std::size_t i = 0; i < ranges.size(); ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < threads && w < static_cast<int>(ranges.size()); ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = static_cast<std::size_t>(w); i < ranges.size();
                 i += static_cast<std::size_t>(threads)) {
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

/// Two-pass histogram select for type spaces too large to materialize.
/// Pass A histograms p-mass by ratio key; a band of bins around the
/// (1 - eps) quantile is then re-enumerated exactly in pass B, everything
/// above the band is folded into one fully-accepted aggregate, and the
/// shared boundary accumulation runs on the small assembled group list.
BetaResult betaIidStreaming(const IidTables& t, double p_inf, double eps, const Caps& caps) {
    if (eps < 1e-4) {
        throw SizeOverflow(
            "beta streaming path requires eps >= 1e-4; raise materialize_type_classes instead");
    }
    double d_min = kInf, d_max = -kInf;
    for (double v : t.d) {
        d_min = std::min(d_min, v);
        d_max = std::max(d_max, v);
    }
    const double n_d = static_cast<double>(t.n);
    double key_lo = n_d * d_min, key_hi = n_d * d_max;
    if (!(key_hi - key_lo > 1e-9)) {
        // All ratios equal: a single merged class group.
        std::vector<RatioGroup> groups;
        if (p_inf > 0) groups.push_back({kInf, p_inf, 0.0, -kInf});
        double pf = 0, qf = 0;
        for (Index i = 0; i < t.kf; ++i) {
            pf += std::exp2(t.lp[i]);
            qf += std::exp2(t.lq[i]);
        }
        groups.push_back({key_lo, std::pow(pf, n_d), std::pow(qf, n_d), n_d * std::log2(qf)});
        return accumulateBeta(std::move(groups), eps);
    }
    const double pad = (key_hi - key_lo) * 1e-9 + 1e-12;
    key_lo -= pad;
    key_hi += pad;
    constexpr int kBins = 1 << 16;
    const double inv_w = kBins / (key_hi - key_lo);

    const auto ranges = slabPartition(t, std::max(1, caps.threads));
    auto binOf = [&](double key) {
        const int b = static_cast<int>((key - key_lo) * inv_w);
        return std::clamp(b, 0, kBins - 1);
    };

    // Pass A: per-slab p-mass histograms over the ratio key.
    std::vector<std::vector<double>> slab_hist(ranges.size());
    runSlabs(ranges, caps.threads, [&](std::size_t s) {
        std::vector<double> hist(kBins, 0.0);
        forEachClass(t, ranges[s].first, ranges[s].second,
                     [&](double key, double log2p, double) {
                         if (log2p > -80.0) hist[binOf(key)] += std::exp2(log2p);
                     });
        slab_hist[s] = std::move(hist);
    });
    std::vector<double> hist(kBins, 0.0);
    for (const auto& h : slab_hist) {
        for (int b = 0; b < kBins; ++b) hist[b] += h[b];
    }
    slab_hist.clear();

    const double target = std::max(0.0, (1.0 - eps) - p_inf);
    const double margin = 1e-6;
    // Highest band bin: the first bin (from the top) whose inclusion could
    // reach within `margin` of the target.
    int b_hi = 0;
    {
        KahanSum cum;
        bool found = false;
        for (int b = kBins - 1; b >= 0; --b) {
            if (cum.value() + hist[b] > target - margin) {
                b_hi = b;
                found = true;
                break;
            }
            cum.add(hist[b]);
        }
        if (!found) b_hi = 0;
    }
    // Lowest band bin: extend downward until the band safely brackets the
    // target mass (or the histogram bottoms out).
    int b_lo = b_hi;
    {
        KahanSum cum;
        for (int b = kBins - 1; b >= b_hi; --b) cum.add(hist[b]);
        while (b_lo > 0 && cum.value() < target + margin) {
            --b_lo;
            cum.add(hist[b_lo]);
        }
    }

    // Pass B: exact aggregates. Bins above b_hi are fully accepted; bins in
    // [b_lo, b_hi] are collected as explicit groups for the boundary walk.
    struct SlabB {
        KahanSum above_p;
        Log2Sum above_q;
        std::vector<RatioGroup> band;
    };
    constexpr std::size_t kBandCap = 6'000'000;
    std::vector<SlabB> slab_b(ranges.size());
    runSlabs(ranges, caps.threads, [&](std::size_t s) {
        SlabB& out = slab_b[s];
        forEachClass(t, ranges[s].first, ranges[s].second,
                     [&](double key, double log2p, double log2q) {
                         const int b = binOf(key);
                         if (b > b_hi) {
                             if (log2p > -80.0) out.above_p.add(std::exp2(log2p));
                             out.above_q.add(log2q);
                         } else if (b >= b_lo) {
                             out.band.push_back(
                                 {key, std::exp2(log2p), std::exp2(log2q), log2q});
                         }
                     });
        if (out.band.size() > kBandCap) {
            throw SizeOverflow("beta streaming: boundary band too populous");
        }
    });

    std::vector<RatioGroup> groups;
    if (p_inf > 0) groups.push_back({kInf, p_inf, 0.0, -kInf});
    KahanSum above_p;
    Log2Sum above_q;
    std::size_t band_total = 0;
    for (const SlabB& sb : slab_b) band_total += sb.band.size();
    if (band_total > kBandCap) throw SizeOverflow("beta streaming: boundary band too populous");
    groups.reserve(band_total + 2);
    for (SlabB& sb : slab_b) {
        above_p.add(sb.above_p.value());
        above_q.merge(sb.above_q);
        groups.insert(groups.end(), sb.band.begin(), sb.band.end());
        sb.band.clear();
    }
    const double band_floor = key_lo + b_lo / inv_w;
    const double edge = key_lo + (b_hi + 1) / inv_w;
    if (!above_q.empty() || above_p.value() > 0) {
        groups.push_back({edge, above_p.value(), std::exp2(above_q.value()), above_q.value()});
    }

    BetaResult result = accumulateBeta(std::move(groups), eps);
    // The boundary must land inside the collected band (or in the infinite
    // group); anywhere else means the histogram select failed and the value
    // is unusable.
    if (result.threshold.log2_ratio_threshold == -kInf && result.type1 > eps + 1e-9) {
        throw Error("beta streaming: boundary escaped the collected band");
    }
    if (result.threshold.log2_ratio_threshold != -kInf &&
        result.threshold.log2_ratio_threshold < band_floor - 1e-9) {
        throw Error("beta streaming: boundary below the collected band");
    }
    if (result.threshold.log2_ratio_threshold == edge &&
        result.threshold.boundary_accept < 1.0 - 1e-12) {
        throw Error("beta streaming: boundary landed in the aggregated head");
    }
    return result;
}

IidTables buildTables(const Distribution& p, const Distribution& q, Index n,
                      std::vector<Index>* free_symbols, double* p_inf_out) {
    IidTables t;
    t.n = n;
    double q_blocked_p = 0;
    for (Index x = 0; x < p.size(); ++x) {
        if (p(x) < kSupportTol) continue;  // never accepted, zero p-mass
        if (q(x) < kSupportTol) {
            q_blocked_p += p(x);  // infinite-ratio classes, handled in closed form
            continue;
        }
        free_symbols->push_back(x);
        t.lp.push_back(std::log2(p(x)));
        t.lq.push_back(std::log2(q(x)));
        t.d.push_back(t.lp.back() - t.lq.back());
    }
    t.kf = static_cast<Index>(free_symbols->size());
    // P^n{some blocked symbol appears} = 1 - (1 - mass)^n.
    *p_inf_out = q_blocked_p > 0
                     ? -std::expm1(static_cast<double>(n) * std::log1p(-q_blocked_p))
                     : 0.0;
    t.lf.resize(static_cast<std::size_t>(n) + 1);
    long double acc = 0.0L;
    t.lf[0] = 0.0;
    for (Index i = 1; i <= n; ++i) {
        acc += std::log2(static_cast<long double>(i));
        t.lf[static_cast<std::size_t>(i)] = static_cast<double>(acc);
    }
    return t;
}

}  // namespace

std::uint64_t typeClassCount(Index k, Index n) {
    if (k < 1 || n < 0) throw ParameterDomain("typeClassCount: bad arguments");
    return binomialChecked(static_cast<std::uint64_t>(n + k - 1),
                           static_cast<std::uint64_t>(k - 1));
}

BetaResult betaExactVec(const Vec& p, const Vec& q, double eps) {
    checkEps(eps);
    if (p.size() != q.size()) throw AlphabetMismatch("betaExact: alphabets differ");
    std::vector<RatioGroup> groups;
    groups.reserve(static_cast<std::size_t>(p.size()));
    for (Index x = 0; x < p.size(); ++x) {
        if (p(x) < kSupportTol) continue;
        const double log2q = q(x) < kSupportTol ? -kInf : std::log2(q(x));
        groups.push_back({outcomeKey(p(x), q(x)), p(x), q(x) < kSupportTol ? 0.0 : q(x), log2q});
    }
    BetaResult result = accumulateBeta(std::move(groups), eps);

    Vec accept = Vec::Zero(p.size());
    for (Index x = 0; x < p.size(); ++x) {
        if (p(x) < kSupportTol) continue;
        const double key = outcomeKey(p(x), q(x));
        if (key > result.threshold.log2_ratio_threshold) {
            accept(x) = 1.0;
        } else if (key == result.threshold.log2_ratio_threshold) {
            accept(x) = result.threshold.boundary_accept;
        }
    }
    result.test = BinaryTest{std::move(accept)};
    return result;
}

BetaResult betaExact(const Distribution& p, const Distribution& q, double eps) {
    return betaExactVec(p.probs(), q.probs(), eps);
}

BetaResult betaProductIid(const Distribution& p, const Distribution& q, double eps, Index n,
                          const Caps& caps) {
    checkEps(eps);
    if (p.size() != q.size()) throw AlphabetMismatch("betaProductIid: alphabets differ");
    if (n < 1) throw ParameterDomain("betaProductIid: n must be >= 1");

    std::vector<Index> free_symbols;
    double p_inf = 0;
    const IidTables t = buildTables(p, q, n, &free_symbols, &p_inf);

    if (t.kf == 0) {
        // Everything p puts mass on is outside q's support.
        std::vector<RatioGroup> groups{{kInf, p_inf, 0.0, -kInf}};
        return accumulateBeta(std::move(groups), eps);
    }
    const std::uint64_t count = typeClassCount(t.kf, n);
    if (count > caps.max_type_classes) {
        throw SizeOverflow("betaProductIid: " + std::to_string(count) +
                           " type classes exceeds cap " + std::to_string(caps.max_type_classes));
    }
    if (count > caps.materialize_type_classes && t.kf >= 3) {
        return betaIidStreaming(t, p_inf, eps, caps);
    }

    std::vector<RatioGroup> groups;
    groups.reserve(static_cast<std::size_t>(count) + 1);
    if (p_inf > 0) groups.push_back({kInf, p_inf, 0.0, -kInf});
    forEachClass(t, 0, n, [&](double key, double log2p, double log2q) {
        groups.push_back({key, std::exp2(log2p), std::exp2(log2q), log2q});
    });
    return accumulateBeta(std::move(groups), eps);
}

std::vector<SteinPoint> steinExponentCurve(const Distribution& p, const Distribution& q,
                                           double eps, std::span<const Index> n_values,
                                           const Caps& caps) {
    std::vector<SteinPoint> out;
    out.reserve(n_values.size());
    for (Index n : n_values) {
        const BetaResult r = betaProductIid(p, q, eps, n, caps);
        out.push_back({n, r.beta, r.log2_beta, -r.log2_beta / static_cast<double>(n)});
    }
    return out;
}

}  // namespace wtk
