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

#include "wtk/protocol.hpp"

#include <cmath>
#include <random>
#include <string>
#include <thread>

namespace wtk {

namespace {

std::uint64_t ipow(std::uint64_t base, Index exp) {
    std::uint64_t r = 1;
    for (Index i = 0; i < exp; ++i) {
        if (base != 0 && r > (1ull << 62) / base) throw SizeOverflow("ipow: overflow");
        r *= base;
    }
    return r;
}

}  // namespace

void WiretapCode::validate() const {
    if (n < 1 || msg_count < 1 || x_size < 1 || y_size < 1 || f_size < 1) {
        throw InvalidDistribution("WiretapCode: sizes must be positive");
    }
    if (static_cast<Index>(encoder.size()) != n || static_cast<Index>(feedback.size()) != n) {
        throw InvalidDistribution("WiretapCode: need one encoder and one feedback table per step");
    }
    std::uint64_t f_hist = static_cast<std::uint64_t>(f_size);  // |F|^t at t = 1
    std::uint64_t y_hist = 1;                                   // |Y|^t at t = 0
    for (Index t = 0; t < n; ++t) {
        const std::uint64_t enc_cells =
            static_cast<std::uint64_t>(msg_count) * f_hist * static_cast<std::uint64_t>(ux.size());
        if (encoder[static_cast<std::size_t>(t)].size() != enc_cells) {
            throw InvalidDistribution("WiretapCode: encoder table size mismatch at t=" +
                                      std::to_string(t + 1));
        }
        for (Index v : encoder[static_cast<std::size_t>(t)]) {
            if (v < 0 || v >= x_size) throw IndexOutOfRange("WiretapCode: encoder output range");
        }
        const std::uint64_t fb_cells = y_hist * static_cast<std::uint64_t>(uy.size());
        if (feedback[static_cast<std::size_t>(t)].size() != fb_cells) {
            throw InvalidDistribution("WiretapCode: feedback table size mismatch at t=" +
                                      std::to_string(t));
        }
        for (Index v : feedback[static_cast<std::size_t>(t)]) {
            if (v < 0 || v >= f_size) throw IndexOutOfRange("WiretapCode: feedback output range");
        }
        f_hist *= static_cast<std::uint64_t>(f_size);
        y_hist *= static_cast<std::uint64_t>(y_size);
    }
    if (decoder.size() != y_hist) {
        throw InvalidDistribution("WiretapCode: decoder table size mismatch");
    }
    for (Index v : decoder) {
        if (v < 0 || v >= msg_count) throw IndexOutOfRange("WiretapCode: decoder output range");
    }
}

WiretapCode WiretapCode::trivial(Index n, Index msg_count, Index x_size, Index y_size) {
    WiretapCode code;
    code.n = n;
    code.msg_count = msg_count;
    code.x_size = x_size;
    code.y_size = y_size;
    code.f_size = 1;
    std::uint64_t y_hist = 1;
    for (Index t = 0; t < n; ++t) {
        code.encoder.push_back(
            std::vector<Index>(static_cast<std::size_t>(msg_count), 0));
        code.feedback.push_back(std::vector<Index>(static_cast<std::size_t>(y_hist), 0));
        y_hist *= static_cast<std::uint64_t>(y_size);
    }
    code.decoder.assign(static_cast<std::size_t>(y_hist), 0);
    code.validate();
    return code;
}

ProtocolJoint executeExact(const WiretapCode& code, const WiretapKernel& channel,
                           const Caps& caps) {
    code.validate();
    if (code.x_size != channel.inputSize() || code.y_size != channel.ySize()) {
        throw AlphabetMismatch("executeExact: code and channel alphabets differ");
    }
    const Index n = code.n;
    const Index zs = channel.zSize();

    std::vector<Index> dims;
    dims.push_back(code.msg_count);
    for (Index t = 0; t < n; ++t) dims.push_back(code.x_size);
    for (Index t = 0; t < n; ++t) dims.push_back(code.y_size);
    for (Index t = 0; t < n; ++t) dims.push_back(zs);
    for (Index t = 0; t < n; ++t) dims.push_back(code.f_size);
    Joint joint = Joint::zeros(dims, caps);

    const std::uint64_t xn = ipow(static_cast<std::uint64_t>(code.x_size), n);
    const std::uint64_t yn = ipow(static_cast<std::uint64_t>(code.y_size), n);
    const std::uint64_t zn = ipow(static_cast<std::uint64_t>(zs), n);
    const std::uint64_t fn = ipow(static_cast<std::uint64_t>(code.f_size), n);

    // Depth-first walk over (y, z) paths for each (m, u_x, u_y); the
    // deterministic maps pin x_t and f_t along the way. Entering step t the
    // feedback rank already covers F_0..F_t, so after the final step it has
    // all n symbols.
    struct Walker {
        const WiretapCode& code;
        const WiretapKernel& channel;
        Joint& joint;
        Index n, zs;
        std::uint64_t xn, yn, zn, fn;
        Index m, uxi, uyi;

        void walk(Index t, double mass, std::uint64_t x_rank, std::uint64_t y_rank,
                  std::uint64_t z_rank, std::uint64_t f_rank) {
            if (mass <= 0.0) return;
            if (t == n) {
                const std::uint64_t cell =
                    (((static_cast<std::uint64_t>(m) * xn + x_rank) * yn + y_rank) * zn +
                     z_rank) *
                        fn +
                    f_rank;
                joint.cell(static_cast<Index>(cell)) += mass;
                return;
            }
            const Index x = code.encoder[static_cast<std::size_t>(t)]
                                        [(static_cast<std::uint64_t>(m) *
                                              ipowLocal(code.f_size, t + 1) +
                                          f_rank) *
                                             static_cast<std::uint64_t>(code.ux.size()) +
                                         static_cast<std::uint64_t>(uxi)];
            for (Index y = 0; y < code.y_size; ++y) {
                for (Index z = 0; z < zs; ++z) {
                    const double p = channel.prob(x, y, z);
                    if (p <= 0.0) continue;
                    const std::uint64_t y2 = y_rank * static_cast<std::uint64_t>(code.y_size) +
                                             static_cast<std::uint64_t>(y);
                    const std::uint64_t z2 =
                        z_rank * static_cast<std::uint64_t>(zs) + static_cast<std::uint64_t>(z);
                    std::uint64_t f2 = f_rank;
                    if (t + 1 < n) {
                        const Index f = code.feedback[static_cast<std::size_t>(t + 1)]
                                                     [y2 * static_cast<std::uint64_t>(
                                                               code.uy.size()) +
                                                      static_cast<std::uint64_t>(uyi)];
                        f2 = f_rank * static_cast<std::uint64_t>(code.f_size) +
                             static_cast<std::uint64_t>(f);
                    }
                    walk(t + 1, mass * p,
                         x_rank * static_cast<std::uint64_t>(code.x_size) +
                             static_cast<std::uint64_t>(x),
                         y2, z2, f2);
                }
            }
        }

        static std::uint64_t ipowLocal(Index base, Index exp) {
            std::uint64_t r = 1;
            for (Index i = 0; i < exp; ++i) r *= static_cast<std::uint64_t>(base);
            return r;
        }
    };

    for (Index m = 0; m < code.msg_count; ++m) {
        for (Index uxi = 0; uxi < code.ux.size(); ++uxi) {
            for (Index uyi = 0; uyi < code.uy.size(); ++uyi) {
                const double base =
                    code.ux(uxi) * code.uy(uyi) / static_cast<double>(code.msg_count);
                if (base <= 0.0) continue;
                const Index f0 = code.feedback[0][static_cast<std::uint64_t>(uyi)];
                Walker walker{code, channel, joint, n, zs, xn, yn, zn, fn, m, uxi, uyi};
                walker.walk(0, base, 0, 0, 0, static_cast<std::uint64_t>(f0));
            }
        }
    }
    joint.validate();
    return ProtocolJoint{std::move(joint), n};
}

CodeMetrics codeMetrics(const ProtocolJoint& pj, const WiretapCode& code) {
    const Index n = pj.n;
    std::vector<Index> my;
    my.push_back(pj.mComponent());
    for (Index t = 0; t < n; ++t) my.push_back(pj.yComponent(t));
    const Joint m_y = pj.joint.marginal(my);
    const Index yn = m_y.cells() / code.msg_count;
    double err = 0;
    for (Index r = 0; r < m_y.cells(); ++r) {
        const Index m = r / yn;
        const Index y_rank = r % yn;
        if (code.decoder[static_cast<std::size_t>(y_rank)] != m) err += m_y.cell(r);
    }

    std::vector<Index> mzf;
    mzf.push_back(pj.mComponent());
    for (Index t = 0; t < n; ++t) mzf.push_back(pj.zComponent(t));
    for (Index t = 0; t < n; ++t) mzf.push_back(pj.fComponent(t));
    const Joint joint_mzf = pj.joint.marginal(mzf);
    const Index zf = joint_mzf.cells() / code.msg_count;
    Vec pm = Vec::Zero(code.msg_count);
    Vec pzf = Vec::Zero(zf);
    for (Index r = 0; r < joint_mzf.cells(); ++r) {
        pm(r / zf) += joint_mzf.cell(r);
        pzf(r % zf) += joint_mzf.cell(r);
    }
    double leak = 0;
    for (Index r = 0; r < joint_mzf.cells(); ++r) {
        leak += std::abs(joint_mzf.cell(r) - pm(r / zf) * pzf(r % zf));
    }
    return CodeMetrics{err, leak / 2.0};
}

double factorizationCheck(const WiretapCode& code, const FactorizedKernel& v, const Caps& caps) {
    return factorizationCheck(code, v.compose(), caps);
}

double factorizationCheck(const WiretapCode& code, const WiretapKernel& channel,
                          const Caps& caps) {
    const ProtocolJoint pj = executeExact(code, channel, caps);
    const Index n = pj.n;

    const Index N = code.msg_count;
    const std::uint64_t yn = ipow(static_cast<std::uint64_t>(code.y_size), n);
    const std::uint64_t zn = ipow(static_cast<std::uint64_t>(channel.zSize()), n);
    const std::uint64_t fn = ipow(static_cast<std::uint64_t>(code.f_size), n);
    const std::uint64_t xn = ipow(static_cast<std::uint64_t>(code.x_size), n);

    std::vector<Index> dims{N, N};
    for (Index t = 0; t < n; ++t) dims.push_back(channel.zSize());
    for (Index t = 0; t < n; ++t) dims.push_back(code.f_size);
    Caps local = caps;
    local.max_cells = std::max<std::uint64_t>(
        local.max_cells, static_cast<std::uint64_t>(N) * static_cast<std::uint64_t>(N) * zn * fn);
    Joint mmzf = Joint::zeros(dims, local);

    for (Index r = 0; r < pj.joint.cells(); ++r) {
        const double mass = pj.joint.cell(r);
        if (mass <= 0.0) continue;
        std::uint64_t rest = static_cast<std::uint64_t>(r);
        const std::uint64_t f_rank = rest % fn;
        rest /= fn;
        const std::uint64_t z_rank = rest % zn;
        rest /= zn;
        const std::uint64_t y_rank = rest % yn;
        rest /= yn;
        rest /= xn;  // skip X^n
        const std::uint64_t m = rest;
        const Index m_hat = code.decoder[static_cast<std::size_t>(y_rank)];
        const std::uint64_t cell =
            ((m * static_cast<std::uint64_t>(N) + static_cast<std::uint64_t>(m_hat)) * zn +
             z_rank) *
                fn +
            f_rank;
        mmzf.cell(static_cast<Index>(cell)) += mass;
    }
    mmzf.validate();

    std::vector<Index> xg{0}, yg{1}, zg;
    for (Index c = 2; c < mmzf.componentCount(); ++c) zg.push_back(c);
    return conditionalMutualInformation(mmzf, xg, yg, zg);
}

ConverseValidation validateConverse(const WiretapCode& code, const WiretapKernel& w, double eta,
                                    std::optional<FactorizedKernel> v, const Caps& caps) {
    const ProtocolJoint pj = executeExact(code, w, caps);
    const CodeMetrics m = codeMetrics(pj, code);
    if (!(eta > 0.0) || m.error_prob + m.leakage + eta >= 1.0) {
        throw ParameterDomain("validateConverse: need eps + delta + eta < 1");
    }
    ConverseBoundReport report =
        converseBound(w, m.error_prob, m.leakage, eta, code.n, std::move(v), caps);
    if (report.surrogate) {
        throw SizeOverflow("validateConverse: n is beyond brute-force reach");
    }
    const double log_n = std::log2(static_cast<double>(code.msg_count));
    return ConverseValidation{log_n, report.bound_bits,
                              log_n <= report.bound_bits + 1e-9, m.error_prob, m.leakage,
                              std::move(report)};
}

McResult monteCarlo(const WiretapCode& code, const WiretapKernel& channel, std::uint64_t trials,
                    std::uint64_t seed, int threads, const Caps& caps) {
    code.validate();
    if (code.x_size != channel.inputSize() || code.y_size != channel.ySize()) {
        throw AlphabetMismatch("monteCarlo: code and channel alphabets differ");
    }
    if (trials == 0) throw ParameterDomain("monteCarlo: trials must be positive");
    const Index n = code.n;
    const Index zs = channel.zSize();
    const std::uint64_t zn = ipow(static_cast<std::uint64_t>(zs), n);
    const std::uint64_t fn = ipow(static_cast<std::uint64_t>(code.f_size), n);
    const std::uint64_t cells = static_cast<std::uint64_t>(code.msg_count) * zn * fn;
    if (cells > caps.max_cells) throw SizeOverflow("monteCarlo: (M, Z^n, F) exceeds cell cap");

    struct Worker {
        std::vector<std::uint64_t> counts;
        std::uint64_t errors = 0;
    };
    const int workers = std::max(1, threads);
    std::vector<Worker> results(static_cast<std::size_t>(workers));

    auto sampleFrom = [](const Vec& probs, double u) {
        double acc = 0;
        for (Index i = 0; i < probs.size(); ++i) {
            acc += probs(i);
            if (u < acc) return i;
        }
        return probs.size() - 1;
    };

    auto runWorker = [&](int widx, std::uint64_t count) {
        Worker& out = results[static_cast<std::size_t>(widx)];
        out.counts.assign(cells, 0);
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(widx) * 0x9e3779b97f4a7c15ull);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (std::uint64_t trial = 0; trial < count; ++trial) {
            const Index m = static_cast<Index>(rng() % static_cast<std::uint64_t>(code.msg_count));
            const Index uxi = sampleFrom(code.ux.probs(), unif(rng));
            const Index uyi = sampleFrom(code.uy.probs(), unif(rng));
            std::uint64_t y_rank = 0, z_rank = 0;
            std::uint64_t f_rank = static_cast<std::uint64_t>(
                code.feedback[0][static_cast<std::uint64_t>(uyi)]);
            for (Index t = 0; t < n; ++t) {
                const Index x =
                    code.encoder[static_cast<std::size_t>(t)]
                                [(static_cast<std::uint64_t>(m) *
                                      ipow(static_cast<std::uint64_t>(code.f_size), t + 1) +
                                  f_rank) *
                                     static_cast<std::uint64_t>(code.ux.size()) +
                                 static_cast<std::uint64_t>(uxi)];
                const Index yz = sampleFrom(channel.matrix().row(x).transpose(), unif(rng));
                const Index y = yz / zs;
                const Index z = yz % zs;
                y_rank = y_rank * static_cast<std::uint64_t>(code.y_size) +
                         static_cast<std::uint64_t>(y);
                z_rank = z_rank * static_cast<std::uint64_t>(zs) + static_cast<std::uint64_t>(z);
                if (t + 1 < n) {
                    const Index f =
                        code.feedback[static_cast<std::size_t>(t + 1)]
                                     [y_rank * static_cast<std::uint64_t>(code.uy.size()) +
                                      static_cast<std::uint64_t>(uyi)];
                    f_rank = f_rank * static_cast<std::uint64_t>(code.f_size) +
                             static_cast<std::uint64_t>(f);
                }
            }
            const std::uint64_t cell =
                (static_cast<std::uint64_t>(m) * zn + z_rank) * fn + f_rank;
            out.counts[cell] += 1;
            if (code.decoder[static_cast<std::size_t>(y_rank)] != m) out.errors += 1;
        }
    };

    const std::uint64_t per = trials / static_cast<std::uint64_t>(workers);
    const std::uint64_t extra = trials % static_cast<std::uint64_t>(workers);
    if (workers == 1) {
        runWorker(0, trials);
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(runWorker, i,
                              per + (static_cast<std::uint64_t>(i) < extra ? 1 : 0));
        }
        for (auto& t : pool) t.join();
    }

    std::vector<Index> dims{code.msg_count};
    for (Index t = 0; t < n; ++t) dims.push_back(zs);
    for (Index t = 0; t < n; ++t) dims.push_back(code.f_size);
    Joint empirical = Joint::zeros(dims, caps);
    std::uint64_t errors = 0;
    for (const Worker& wk : results) {
        errors += wk.errors;
        for (std::uint64_t c = 0; c < cells; ++c) {
            empirical.cell(static_cast<Index>(c)) +=
                static_cast<double>(wk.counts[c]) / static_cast<double>(trials);
        }
    }
    empirical.validate();

    const double ef = static_cast<double>(errors) / static_cast<double>(trials);
    const double sigma = std::sqrt(std::max(ef * (1.0 - ef), 1e-300) /
                                   static_cast<double>(trials));

    const Index zf_cells = static_cast<Index>(zn * fn);
    Vec pm = Vec::Zero(code.msg_count);
    Vec pzf = Vec::Zero(zf_cells);
    for (Index r = 0; r < empirical.cells(); ++r) {
        pm(r / zf_cells) += empirical.cell(r);
        pzf(r % zf_cells) += empirical.cell(r);
    }
    double leak = 0;
    for (Index r = 0; r < empirical.cells(); ++r) {
        leak += std::abs(empirical.cell(r) - pm(r / zf_cells) * pzf(r % zf_cells));
    }

    return McResult{trials, seed, ef, sigma, std::move(empirical), leak / 2.0};
}

std::uint64_t deterministicCodeCount(const CodeShape& shape) {
    std::uint64_t count = 1;
    auto mulPow = [&count](std::uint64_t base, std::uint64_t cells) {
        for (std::uint64_t i = 0; i < cells; ++i) {
            if (base != 0 && count > (1ull << 62) / base) {
                throw SizeOverflow("deterministicCodeCount: family too large");
            }
            count *= base;
        }
    };
    std::uint64_t f_hist = static_cast<std::uint64_t>(shape.f_size);
    std::uint64_t y_hist = 1;
    for (Index t = 0; t < shape.n; ++t) {
        mulPow(static_cast<std::uint64_t>(shape.x_size),
               static_cast<std::uint64_t>(shape.msg_count) * f_hist);
        mulPow(static_cast<std::uint64_t>(shape.f_size), y_hist);
        f_hist *= static_cast<std::uint64_t>(shape.f_size);
        y_hist *= static_cast<std::uint64_t>(shape.y_size);
    }
    mulPow(static_cast<std::uint64_t>(shape.msg_count), y_hist);
    return count;
}

WiretapCode deterministicCodeFromRank(const CodeShape& shape, std::uint64_t rank) {
    WiretapCode code;
    code.n = shape.n;
    code.msg_count = shape.msg_count;
    code.x_size = shape.x_size;
    code.y_size = shape.y_size;
    code.f_size = shape.f_size;

    auto take = [&rank](std::uint64_t base) {
        const Index digit = static_cast<Index>(rank % base);
        rank /= base;
        return digit;
    };

    std::uint64_t f_hist = static_cast<std::uint64_t>(shape.f_size);
    std::uint64_t y_hist = 1;
    for (Index t = 0; t < shape.n; ++t) {
        std::vector<Index> enc(static_cast<std::size_t>(shape.msg_count) * f_hist);
        for (Index& c : enc) c = take(static_cast<std::uint64_t>(shape.x_size));
        code.encoder.push_back(std::move(enc));
        std::vector<Index> fb(static_cast<std::size_t>(y_hist));
        for (Index& c : fb) c = take(static_cast<std::uint64_t>(shape.f_size));
        code.feedback.push_back(std::move(fb));
        f_hist *= static_cast<std::uint64_t>(shape.f_size);
        y_hist *= static_cast<std::uint64_t>(shape.y_size);
    }
    code.decoder.resize(static_cast<std::size_t>(y_hist));
    for (Index& c : code.decoder) c = take(static_cast<std::uint64_t>(shape.msg_count));
    code.validate();
    return code;
}

}  // namespace wtk
