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

TEST_CASE("entropy basics") {
    CHECK(entropyBits(Distribution{0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(entropyBits(Distribution{1.0, 0.0}) == 0.0);
    const Distribution p{0.9, 0.1};
    CHECK(std::abs(entropyBits(p) - kH01) <= 1e-15);
    CHECK(std::abs(entropyBits(p) - binaryEntropyOracle(0.1)) <= 1e-15);
}

TEST_CASE("entropy matches high-precision oracle on random vectors") {
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const Vec v = randomProbVec(rng, 2 + static_cast<Index>(rng() % 6));
        CHECK(std::abs(entropyBits(v) - entropyOracle(v)) <= 1e-13);
    }
}

TEST_CASE("kl divergence examples") {
    const Distribution p{0.5, 0.5};
    const Distribution q{0.9, 0.1};
    CHECK(klDivergenceBits(p, p) == 0.0);
    CHECK(klDivergenceBits(Distribution{1.0, 0.0}, Distribution{0.5, 0.5}) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(klDivergenceBits(p, q) - kKlHalfNine) <= 1e-15);
    // Term-by-term long double oracle.
    const long double direct =
        0.5L * (std::log2(0.5L) - std::log2(0.9L)) + 0.5L * (std::log2(0.5L) - std::log2(0.1L));
    CHECK(std::abs(klDivergenceBits(p, q) - static_cast<double>(direct)) <= 1e-15);
    CHECK(klDivergenceBits(Distribution{0.5, 0.5}, Distribution{1.0, 0.0}) ==
          infinity<double>());
    CHECK_THROWS_AS(klDivergenceBits(p, Distribution{1.0, 0.0, 0.0}), AlphabetMismatch);
}

TEST_CASE("kl divergence nonnegative, zero only at equality") {
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const Index k = 2 + static_cast<Index>(rng() % 5);
        const Distribution p = randomDistribution(rng, k);
        const Distribution q = randomDistribution(rng, k);
        const double d = klDivergenceBits(p, q);
        CHECK(d >= -1e-12);
        if (totalVariation(p, q) > 1e-6) CHECK(d > 1e-13);
    }
}

TEST_CASE("total variation examples and metric properties") {
    CHECK(totalVariation(Distribution{0.5, 0.5}, Distribution{0.5, 0.5}) == 0.0);
    CHECK(totalVariation(Distribution{1.0, 0.0}, Distribution{0.0, 1.0}) == 1.0);
    CHECK(totalVariation(Distribution{0.5, 0.5}, Distribution{0.9, 0.1}) ==
          doctest::Approx(0.4).epsilon(1e-15));
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const Index k = 2 + static_cast<Index>(rng() % 5);
        const Distribution a = randomDistribution(rng, k);
        const Distribution b = randomDistribution(rng, k);
        const Distribution c = randomDistribution(rng, k);
        CHECK(totalVariation(a, b) == totalVariation(b, a));
        CHECK(totalVariation(a, b) <= totalVariation(a, c) + totalVariation(c, b) + 1e-12);
        CHECK(totalVariation(a, b) <= 1.0);
    }
    const Joint ja({2, 2}, Vec{{0.25, 0.25, 0.25, 0.25}});
    const Joint jb({2, 3}, Vec{{0.25, 0.25, 0.0, 0.25, 0.25, 0.0}});
    CHECK_THROWS_AS(totalVariation(ja, jb), AlphabetMismatch);
}

TEST_CASE("joint indexing round trip and marginal validity") {
    Rng rng(14);
    for (int i = 0; i < 30; ++i) {
        const std::vector<Index> dims{2 + static_cast<Index>(rng() % 3),
                                      2 + static_cast<Index>(rng() % 2),
                                      2 + static_cast<Index>(rng() % 2)};
        const Joint j(dims, randomProbVec(rng, dims[0] * dims[1] * dims[2]));
        std::vector<Index> idx(3);
        for (Index r = 0; r < j.cells(); ++r) {
            j.unrank(r, idx);
            CHECK(j.rank(idx) == r);
        }
        // Marginalizing any subset yields a valid joint.
        const Joint m1 = j.marginal({1});
        m1.validate();
        const Joint m02 = j.marginal({0, 2});
        m02.validate();
        const Joint swapped = j.marginal({2, 0});
        CHECK(swapped.componentSizes()[0] == dims[2]);
    }
    const Joint j({2, 2}, Vec{{0.25, 0.25, 0.25, 0.25}});
    CHECK_THROWS_AS(j.marginal({0, 0}), IndexOutOfRange);
    CHECK_THROWS_AS(j.marginal({3}), IndexOutOfRange);
}

TEST_CASE("conditional mutual information examples") {
    // Mutually independent components.
    Rng rng(15);
    const Vec a = randomProbVec(rng, 2), b = randomProbVec(rng, 3), c = randomProbVec(rng, 2);
    Vec flat(12);
    for (Index i = 0; i < 2; ++i) {
        for (Index jj = 0; jj < 3; ++jj) {
            for (Index k = 0; k < 2; ++k) flat((i * 3 + jj) * 2 + k) = a(i) * b(jj) * c(k);
        }
    }
    CHECK(conditionalMutualInformation(Joint({2, 3, 2}, flat), 0, 1, 2) <= 1e-12);

    // X = Y uniform binary, Z independent uniform.
    Vec xyz = Vec::Zero(8);
    for (Index x = 0; x < 2; ++x) {
        for (Index z = 0; z < 2; ++z) xyz((x * 2 + x) * 2 + z) = 0.25;
    }
    CHECK(conditionalMutualInformation(Joint({2, 2, 2}, xyz), 0, 1, 2) ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(conditionalMutualInformation(Joint({2, 2, 2}, xyz), 0, 0, 2),
                    IndexOutOfRange);
}

TEST_CASE("cmi of degraded cascade joint matches closed form") {
    // Uniform input through BSC(0.1) to Y, then BSC(0.2) from Y to Z.
    const WiretapKernel w = WiretapKernel::cascade(Dmc::bsc(0.1), Dmc::bsc(0.2));
    const Joint joint = w.jointWith(Distribution::uniform(2));
    const double cmi = conditionalMutualInformation(joint, 0, 1, 2);
    CHECK(std::abs(cmi - kCascadeCmi) <= 1e-12);
    // Brute-force double-sum oracle on the explicit joint.
    double direct = 0;
    const Joint pz = joint.marginal({2});
    const Joint pxz = joint.marginal({0, 2});
    const Joint pyz = joint.marginal({1, 2});
    for (Index x = 0; x < 2; ++x) {
        for (Index y = 0; y < 2; ++y) {
            for (Index z = 0; z < 2; ++z) {
                const double m = joint.cell((x * 2 + y) * 2 + z);
                if (m < 1e-15) continue;
                direct += m * (std::log2(m * pz.cell(z)) -
                               std::log2(pxz.cell(x * 2 + z) * pyz.cell(y * 2 + z)));
            }
        }
    }
    CHECK(std::abs(cmi - direct) <= 1e-12);
}

TEST_CASE("cmi entropy decomposition equals direct definition on random joints") {
    Rng rng(16);
    for (int i = 0; i < 100; ++i) {
        const Index a = 2 + static_cast<Index>(rng() % 2);
        const Index b = 2 + static_cast<Index>(rng() % 2);
        const Index c = 2 + static_cast<Index>(rng() % 3);
        const Joint j({a, b, c}, randomProbVec(rng, a * b * c));
        const double via_entropy = conditionalMutualInformation(j, 0, 1, 2);
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
        CHECK(std::abs(via_entropy - std::max(direct, 0.0)) <= 1e-10);
    }
}

TEST_CASE("product power") {
    const Distribution p{0.9, 0.1};
    SUBCASE("n = 1 is the distribution itself") {
        const Joint j = productPower(p, 1);
        CHECK(j.cells() == 2);
        CHECK(j.cell(0) == 0.9);
        CHECK(j.cell(1) == 0.1);
    }
    SUBCASE("uniform cube") {
        const Joint j = productPower(Distribution{0.5, 0.5}, 3);
        for (Index r = 0; r < 8; ++r) CHECK(j.cell(r) == 0.125);
    }
    SUBCASE("direct multiplication") {
        const Joint j = productPower(p, 2);
        CHECK(j.cell(0) == 0.9 * 0.9);
        CHECK(j.cell(1) == 0.9 * 0.1);
        CHECK(j.cell(2) == 0.1 * 0.9);
        CHECK(j.cell(3) == 0.1 * 0.1);
    }
    SUBCASE("marginals recover p exactly and entropy is additive") {
        Rng rng(17);
        for (int i = 0; i < 20; ++i) {
            const Distribution r = randomDistribution(rng, 2 + static_cast<Index>(rng() % 3));
            const Index n = 1 + static_cast<Index>(rng() % 4);
            const Joint j = productPower(r, n);
            for (Index t = 0; t < n; ++t) {
                const Joint m = j.marginal({t});
                for (Index s = 0; s < r.size(); ++s) CHECK(std::abs(m.cell(s) - r(s)) <= 1e-13);
            }
            CHECK(std::abs(entropyBits(j.probs()) - n * entropyBits(r)) <= 1e-9);
        }
    }
    SUBCASE("size cap") {
        Caps caps;
        caps.max_cells = 100;
        CHECK_THROWS_AS(productPower(Distribution::uniform(10), 3, caps), SizeOverflow);
    }
}

TEST_CASE("push through kernel") {
    SUBCASE("identity kernel gives diagonal joint") {
        const Joint j = pushThroughKernel(Distribution::uniform(2), Dmc::identity(2));
        CHECK(j.cell(0) == 0.5);
        CHECK(j.cell(1) == 0.0);
        CHECK(j.cell(2) == 0.0);
        CHECK(j.cell(3) == 0.5);
    }
    SUBCASE("point mass picks out a row") {
        const Dmc k = Dmc::bsc(0.3);
        const Joint j = pushThroughKernel(Distribution::pointMass(2, 1), k);
        CHECK(j.cell(0) == 0.0);
        CHECK(j.cell(1) == 0.0);
        CHECK(j.cell(2) == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(j.cell(3) == doctest::Approx(0.7).epsilon(1e-15));
    }
    SUBCASE("uniform through BSC(0.1)") {
        const Joint j = pushThroughKernel(Distribution::uniform(2), Dmc::bsc(0.1));
        CHECK(j.cell(0) == 0.45);
        CHECK(j.cell(1) == doctest::Approx(0.05).epsilon(1e-15));
        CHECK(j.cell(2) == doctest::Approx(0.05).epsilon(1e-15));
        CHECK(j.cell(3) == 0.45);
        const Joint input_marginal = j.marginal({0});
        CHECK(input_marginal.cell(0) == 0.5);
    }
    SUBCASE("alphabet mismatch") {
        CHECK_THROWS_AS(pushThroughKernel(Distribution::uniform(3), Dmc::bsc(0.1)),
                        AlphabetMismatch);
    }
}

TEST_CASE("invalid probability objects are rejected") {
    CHECK_THROWS_AS(Distribution(Vec{{0.5, 0.6}}), InvalidDistribution);
    CHECK_THROWS_AS(Distribution(Vec{{-0.1, 1.1}}), InvalidDistribution);
    Mat bad(2, 2);
    bad << 0.5, 0.5, 0.7, 0.7;
    CHECK_THROWS_AS((Dmc(bad)), InvalidDistribution);
    CHECK_THROWS_AS(Joint({2, 2}, Vec{{0.5, 0.5, 0.5, 0.5}}), InvalidDistribution);
}
