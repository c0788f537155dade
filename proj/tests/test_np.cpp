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

#include <doctest.h>

#include "test_util.hpp"

using namespace wtk;
using namespace wtk::testutil;

namespace {

double applyTestP(const Vec& p, const BinaryTest& t) {
    double s = 0;
    for (Index i = 0; i < p.size(); ++i) s += p(i) * t.accept_null(i);
    return s;
}

}  // namespace

TEST_CASE("betaExact canonical examples") {
    SUBCASE("identical hypotheses") {
        const Distribution p{0.3, 0.2, 0.5};
        const BetaResult r = betaExact(p, p, 0.3);
        CHECK(std::abs(r.beta - 0.7) <= 1e-15);
        CHECK(std::abs(r.type1 - 0.3) <= 1e-12);
    }
    SUBCASE("point mass against uniform at eps = 0 must keep full support") {
        const BetaResult r = betaExact(Distribution{1.0, 0.0}, Distribution{0.5, 0.5}, 0.0);
        CHECK(r.beta == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("worked randomized-boundary example") {
        const BetaResult r = betaExact(Distribution{0.5, 0.5}, Distribution{0.9, 0.1}, 0.1);
        CHECK(std::abs(r.beta - 0.82) <= 1e-15);
        // Accept x2 fully, x1 with probability 0.8.
        REQUIRE(r.test.has_value());
        CHECK(r.test->accept_null(1) == 1.0);
        CHECK(r.test->accept_null(0) == doctest::Approx(0.8).epsilon(1e-12));
    }
    SUBCASE("domain checks") {
        CHECK_THROWS_AS(betaExact(Distribution{0.5, 0.5}, Distribution{1.0 / 3, 1.0 / 3, 1.0 / 3},
                                  0.1),
                        AlphabetMismatch);
        CHECK_THROWS_AS(betaExact(Distribution{0.5, 0.5}, Distribution{0.5, 0.5}, 1.0),
                        ParameterDomain);
        CHECK_THROWS_AS(betaExact(Distribution{0.5, 0.5}, Distribution{0.5, 0.5}, -0.1),
                        ParameterDomain);
    }
}

TEST_CASE("betaExact result invariants on random instances") {
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        const Index k = 2 + static_cast<Index>(rng() % 7);
        const Distribution p = randomDistribution(rng, k);
        const Distribution q = randomDistribution(rng, k);
        const double eps = 0.95 * std::uniform_real_distribution<double>(0, 1)(rng);
        const BetaResult r = betaExact(p, q, eps);
        REQUIRE(r.test.has_value());
        CHECK(r.type1 <= eps + 1e-12);
        // The achieving test reproduces both error probabilities.
        CHECK(std::abs(applyTestP(p.probs(), *r.test) - (1.0 - eps)) <= 1e-12);
        CHECK(std::abs(applyTestP(q.probs(), *r.test) - r.beta) <= 1e-12);
        CHECK(r.beta >= 0.0);
        CHECK(r.beta <= 1.0 + 1e-12);
    }
}

TEST_CASE("betaExact equals exhaustive deterministic-plus-boundary search") {
    Rng rng(22);
    for (int i = 0; i < 120; ++i) {
        const Index k = 2 + static_cast<Index>(rng() % 11);  // up to 12
        const Distribution p = randomDistribution(rng, k);
        const Distribution q = randomDistribution(rng, k);
        const double eps = 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
        const BetaResult r = betaExact(p, q, eps);
        CHECK(std::abs(r.beta - betaBySubsetSearch(p.probs(), q.probs(), eps)) <= 1e-12);
    }
}

TEST_CASE("betaExact monotone in eps and data-processing") {
    Rng rng(23);
    for (int i = 0; i < 60; ++i) {
        const Index k = 2 + static_cast<Index>(rng() % 4);
        const Distribution p = randomDistribution(rng, k);
        const Distribution q = randomDistribution(rng, k);
        double prev = 1.0;
        for (double eps : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9}) {
            const double b = betaExact(p, q, eps).beta;
            CHECK(b <= prev + 1e-12);
            prev = b;
        }
        const Dmc channel = randomDmc(rng, k, 2 + static_cast<Index>(rng() % 3));
        const double eps = 0.7 * std::uniform_real_distribution<double>(0, 1)(rng);
        CHECK(betaExact(pushForward(p, channel), pushForward(q, channel), eps).beta >=
              betaExact(p, q, eps).beta - 1e-12);
    }
}

TEST_CASE("betaProductIid small-n cases") {
    const Distribution p{0.5, 0.5};
    const Distribution q{0.9, 0.1};
    SUBCASE("n = 1 degenerates to betaExact") {
        const BetaResult a = betaProductIid(p, q, 0.37, 1);
        const BetaResult b = betaExact(p, q, 0.37);
        CHECK(std::abs(a.beta - b.beta) <= 1e-15);
    }
    SUBCASE("identical hypotheses at any n") {
        for (Index n : {1, 2, 7, 40}) {
            CHECK(std::abs(betaProductIid(p, p, 0.25, n).beta - 0.75) <= 1e-12);
        }
    }
    SUBCASE("n = 4 equals the explicit 16-outcome product") {
        const BetaResult grouped = betaProductIid(p, q, 0.1, 4);
        const Joint pn = productPower(p, 4);
        const Joint qn = productPower(q, 4);
        const BetaResult explicit_r = betaExactVec(pn.probs(), qn.probs(), 0.1);
        CHECK(std::abs(grouped.beta - explicit_r.beta) <= 1e-12);
    }
}

TEST_CASE("betaProductIid equals explicit product on random instances") {
    Rng rng(24);
    for (int i = 0; i < 60; ++i) {
        const Index k = 2 + static_cast<Index>(rng() % 2);
        const Distribution p = randomDistribution(rng, k);
        const Distribution q = randomDistribution(rng, k);
        const double eps = 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
        const Index n = 2 + static_cast<Index>(rng() % 4);
        const BetaResult grouped = betaProductIid(p, q, eps, n);
        const Joint pn = productPower(p, n);
        const Joint qn = productPower(q, n);
        const BetaResult explicit_r = betaExactVec(pn.probs(), qn.probs(), eps);
        const double rel =
            std::abs(grouped.beta - explicit_r.beta) / std::max(explicit_r.beta, 1e-300);
        CHECK(rel <= 1e-11);
        CHECK(grouped.type1 <= eps + 1e-12);
    }
}

TEST_CASE("betaProductIid streaming path agrees with materialized path") {
    // 4-ary alphabet at n = 120 has ~300k classes; force both code paths on
    // the same instance.
    Rng rng(25);
    for (int i = 0; i < 4; ++i) {
        const Distribution p = randomDistribution(rng, 4, 0.1);
        const Distribution q = randomDistribution(rng, 4, 0.1);
        const double eps = 0.1 + 0.5 * std::uniform_real_distribution<double>(0, 1)(rng);
        Caps materialized;
        materialized.materialize_type_classes = 10'000'000;
        Caps streaming;
        streaming.materialize_type_classes = 1;
        const BetaResult a = betaProductIid(p, q, eps, 120, materialized);
        const BetaResult b = betaProductIid(p, q, eps, 120, streaming);
        CHECK(std::abs(a.log2_beta - b.log2_beta) <= 1e-9 * std::abs(a.log2_beta));
        CHECK(b.type1 <= eps + 1e-9);
    }
}

TEST_CASE("betaProductIid streaming reproducible across worker budgets") {
    const Distribution p{0.4, 0.3, 0.2, 0.1};
    const Distribution q{0.1, 0.2, 0.3, 0.4};
    Caps one;
    one.materialize_type_classes = 1;
    one.threads = 1;
    Caps four = one;
    four.threads = 4;
    const BetaResult a = betaProductIid(p, q, 0.3, 150, one);
    const BetaResult b = betaProductIid(p, q, 0.3, 150, four);
    CHECK(std::abs(a.log2_beta - b.log2_beta) <= 1e-9 * std::abs(a.log2_beta));
    const BetaResult c = betaProductIid(p, q, 0.3, 150, four);
    CHECK(b.log2_beta == c.log2_beta);  // same budget, identical bits
    CHECK(b.beta == c.beta);
}

TEST_CASE("betaProductIid handles support mismatches") {
    // q gives zero mass to a symbol p uses: infinite-ratio classes exist.
    const Distribution p{0.5, 0.5};
    const Distribution q{1.0, 0.0};
    const BetaResult r = betaProductIid(p, q, 0.1, 3);
    // Only the all-zeros sequence has positive q mass (1.0); the test must
    // accept enough of it to reach type-I 0.9: gamma = (0.9 - (1 - 0.125)) / 0.125.
    const double gamma = (0.9 - 0.875) / 0.125;
    CHECK(r.beta == doctest::Approx(gamma).epsilon(1e-12));
    // And p outside q's support entirely: beta is zero.
    const BetaResult zero = betaProductIid(Distribution{0.0, 1.0}, q, 0.1, 3);
    CHECK(zero.beta == 0.0);
    CHECK(zero.log2_beta == -infinity<double>());
}

TEST_CASE("betaProductIid cap raises SizeOverflow") {
    Caps caps;
    caps.max_type_classes = 100;
    CHECK_THROWS_AS(betaProductIid(Distribution::uniform(4), Distribution{0.1, 0.2, 0.3, 0.4},
                                   0.1, 50, caps),
                    SizeOverflow);
}

TEST_CASE("betaProductIid matches a long-double explicit-product oracle") {
    // Fully independent route: materialize P^n and Q^n in long double,
    // sort by likelihood ratio, accumulate with a fractional boundary.
    Rng rng(26);
    for (int trial = 0; trial < 6; ++trial) {
        const Index n = 14;
        const Distribution p = randomDistribution(rng, 2, 0.02);
        const Distribution q = randomDistribution(rng, 2, 0.02);
        const double eps = 0.1 + 0.7 * std::uniform_real_distribution<double>(0, 1)(rng);

        const Index cells = Index(1) << n;
        std::vector<long double> pw(cells), qw(cells);
        for (Index r = 0; r < cells; ++r) {
            long double pm = 1.0L, qm = 1.0L;
            for (Index t = 0; t < n; ++t) {
                const Index s = (r >> t) & 1;
                pm *= static_cast<long double>(p(s));
                qm *= static_cast<long double>(q(s));
            }
            pw[static_cast<std::size_t>(r)] = pm;
            qw[static_cast<std::size_t>(r)] = qm;
        }
        std::vector<Index> order(cells);
        for (Index r = 0; r < cells; ++r) order[static_cast<std::size_t>(r)] = r;
        std::sort(order.begin(), order.end(), [&](Index a, Index b) {
            return pw[static_cast<std::size_t>(a)] * qw[static_cast<std::size_t>(b)] >
                   pw[static_cast<std::size_t>(b)] * qw[static_cast<std::size_t>(a)];
        });
        const long double target = 1.0L - static_cast<long double>(eps);
        long double acc = 0.0L, beta_ld = 0.0L;
        for (Index r : order) {
            const long double pm = pw[static_cast<std::size_t>(r)];
            const long double qm = qw[static_cast<std::size_t>(r)];
            if (acc + pm < target) {
                acc += pm;
                beta_ld += qm;
            } else {
                beta_ld += pm > 0 ? (target - acc) / pm * qm : qm;
                break;
            }
        }
        const BetaResult r = betaProductIid(p, q, eps, n);
        const double rel = std::abs(r.beta - static_cast<double>(beta_ld)) /
                           std::max(static_cast<double>(beta_ld), 1e-300);
        CHECK(rel <= 1e-11);
    }
}

TEST_CASE("iid threshold test reproduces both error probabilities") {
    // Independent application of the returned threshold test over the type
    // classes, with a tolerance band standing in for exact key ties.
    Rng rng(27);
    for (int trial = 0; trial < 12; ++trial) {
        const Index k = 2 + static_cast<Index>(rng() % 2);
        const Index n = 8;
        const Distribution p = randomDistribution(rng, k, 0.02);
        const Distribution q = randomDistribution(rng, k, 0.02);
        const double eps = 0.1 + 0.7 * std::uniform_real_distribution<double>(0, 1)(rng);
        const BetaResult r = betaProductIid(p, q, eps, n);

        long double accept_p = 0.0L, accept_q = 0.0L;
        std::vector<Index> counts(static_cast<std::size_t>(k), 0);
        auto walk = [&](auto&& self, Index sym, Index rest) -> void {
            if (sym == k - 1) {
                counts[static_cast<std::size_t>(sym)] = rest;
                long double pm = 1.0L, qm = 1.0L, multinom = 1.0L;
                double key = 0;
                Index placed = 0;
                for (Index i = 0; i < k; ++i) {
                    for (Index c = 0; c < counts[static_cast<std::size_t>(i)]; ++c) {
                        ++placed;
                        multinom = multinom * placed / (c + 1);
                        pm *= static_cast<long double>(p(i));
                        qm *= static_cast<long double>(q(i));
                    }
                    key += static_cast<double>(counts[static_cast<std::size_t>(i)]) *
                           (std::log2(p(i)) - std::log2(q(i)));
                }
                pm *= multinom;
                qm *= multinom;
                const double band = 1e-7;
                if (key > r.threshold.log2_ratio_threshold + band) {
                    accept_p += pm;
                    accept_q += qm;
                } else if (key >= r.threshold.log2_ratio_threshold - band) {
                    accept_p += r.threshold.boundary_accept * pm;
                    accept_q += r.threshold.boundary_accept * qm;
                }
                return;
            }
            for (Index c = 0; c <= rest; ++c) {
                counts[static_cast<std::size_t>(sym)] = c;
                self(self, sym + 1, rest - c);
            }
        };
        walk(walk, 0, n);
        CHECK(std::abs(static_cast<double>(accept_p) - (1.0 - eps)) <= 1e-10);
        CHECK(std::abs(static_cast<double>(accept_q) - r.beta) <=
              1e-10 * std::max(1.0, r.beta));
    }
}

TEST_CASE("stein exponent curve") {
    const Distribution p{0.5, 0.5};
    const Distribution q{0.9, 0.1};
    SUBCASE("identical hypotheses trend to zero divergence") {
        const std::vector<Index> ns{1, 2, 10, 100};
        const auto curve = steinExponentCurve(p, p, 0.2, ns);
        for (const SteinPoint& pt : curve) {
            CHECK(std::abs(pt.exponent - (-std::log2(0.8) / static_cast<double>(pt.n))) <= 1e-12);
        }
        CHECK(curve.back().exponent < 0.01);
    }
    SUBCASE("n = 1 point equals betaExact") {
        const auto curve = steinExponentCurve(p, q, 0.1, std::vector<Index>{1});
        CHECK(std::abs(curve[0].beta - 0.82) <= 1e-15);
        CHECK(std::abs(curve[0].exponent + std::log2(0.82)) <= 1e-12);
    }
    SUBCASE("converges to the divergence by n = 2000") {
        const auto curve = steinExponentCurve(p, q, 0.1, std::vector<Index>{2000});
        CHECK(std::abs(curve[0].exponent - kKlHalfNine) <= 0.05);
    }
}
