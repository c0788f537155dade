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

#include <cstdint>
#include <cstring>
#include <iostream>
#include <unordered_map>

#include <CLI11.hpp>

#include "wtk/io.hpp"
#include "wtk/result_table.hpp"
#include "wtk/selftest.hpp"
#include "wtk/version.hpp"

namespace {

using namespace wtk;

struct GlobalOptions {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 1;
    int threads = 1;
    std::uint64_t cap_states = 0;  // 0: keep defaults
    double tol = 1e-9;
    std::string json_report_path;
};

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Caps capsFrom(const GlobalOptions& g) {
    Caps caps;
    caps.threads = g.threads;
    if (g.cap_states > 0) {
        caps.max_cells = g.cap_states;
        caps.max_type_classes = g.cap_states;
    }
    return caps;
}

ResultTable makeTable(const GlobalOptions& g, const std::string& command,
                      const std::string& config_bytes) {
    ResultTable t;
    t.meta("tool", std::string("wtk ") + kVersion);
    t.meta("command", command);
    t.meta("seed", formatInt(static_cast<long long>(g.seed)));
    t.meta("threads", formatInt(g.threads));
    t.meta("config_hash", formatInt(static_cast<long long>(fnv1a(config_bytes))));
    return t;
}

void emit(const GlobalOptions& g, const ResultTable& t) {
    const std::string csv = t.toCsv();
    if (g.out_path.empty()) {
        std::cout << csv;
    } else {
        writeTextFile(g.out_path, csv);
    }
}

Json requireConfig(const GlobalOptions& g) {
    if (g.config_path.empty()) throw ConfigError("--config is required for this command");
    return loadJsonFile(g.config_path);
}

std::vector<Index> nValuesFrom(const Json& cfg) {
    std::vector<Index> ns;
    if (!cfg.contains("n_values") || !cfg["n_values"].is_array() || cfg["n_values"].empty()) {
        throw ConfigError("config needs a non-empty \"n_values\" array");
    }
    for (const Json& j : cfg["n_values"]) {
        if (!j.is_number_integer() || j.get<Index>() < 1) {
            throw ConfigError("n_values entries must be positive integers");
        }
        ns.push_back(j.get<Index>());
    }
    return ns;
}

int cmdBeta(const GlobalOptions& g) {
    const Json cfg = requireConfig(g);
    const Distribution p = distributionFromJson(cfg.contains("p") ? cfg["p"]
                                                                  : throw ConfigError("missing p"));
    const Distribution q = distributionFromJson(cfg.contains("q") ? cfg["q"]
                                                                  : throw ConfigError("missing q"));
    if (!cfg.contains("eps") || !cfg["eps"].is_number()) throw ConfigError("missing eps");
    const double eps = cfg["eps"].get<double>();
    const std::vector<Index> ns = nValuesFrom(cfg);
    const Caps caps = capsFrom(g);

    ResultTable t = makeTable(g, "beta", cfg.dump());
    t.meta("kl_divergence_bits", formatReal(klDivergenceBits(p, q)));
    t.columns = {"n", "beta", "log2_beta", "exponent"};
    for (Index n : ns) {
        try {
            const BetaResult r = betaProductIid(p, q, eps, n, caps);
            t.addRow({formatInt(n), formatReal(r.beta), formatReal(r.log2_beta),
                      formatReal(-r.log2_beta / static_cast<double>(n))});
        } catch (const SizeOverflow&) {
            t.addRow({formatInt(n), "skipped", "skipped", "skipped"});
        }
    }
    emit(g, t);
    return 0;
}

int cmdDiscriminate(const GlobalOptions& g) {
    const Json cfg = requireConfig(g);
    if (!cfg.contains("w") || !cfg.contains("v")) throw ConfigError("missing w or v channel");
    const Dmc w = dmcFromJson(cfg["w"]);
    const Dmc v = dmcFromJson(cfg["v"]);
    if (!cfg.contains("eps") || !cfg["eps"].is_number()) throw ConfigError("missing eps");
    const double eps = cfg["eps"].get<double>();
    const std::vector<Index> ns = nValuesFrom(cfg);
    const Caps caps = capsFrom(g);

    const ExponentResult target = discriminationExponent(w, v);
    ResultTable t = makeTable(g, "discriminate", cfg.dump());
    t.meta("exponent_target_bits", formatReal(target.value));
    t.meta("x_star", formatInt(target.x_star));
    t.columns = {"n",          "beta_adaptive", "log2_beta_adaptive", "beta_fixed",
                 "log2_beta_fixed", "exponent_fixed", "x_star"};
    for (Index n : ns) {
        std::string ba = "skipped", lba = "skipped";
        try {
            const DiscriminationResult r = betaActiveBruteforce(w, v, eps, n, caps);
            ba = formatReal(r.beta);
            lba = formatReal(r.log2_beta);
        } catch (const SizeOverflow&) {
        }
        std::string bf = "skipped", lbf = "skipped", ef = "skipped";
        try {
            const DiscriminationResult r = betaFixedInput(w, v, eps, n, target.x_star, caps);
            bf = formatReal(r.beta);
            lbf = formatReal(r.log2_beta);
            ef = formatReal(r.exponent);
        } catch (const SizeOverflow&) {
        }
        t.addRow({formatInt(n), ba, lba, bf, lbf, ef, formatInt(target.x_star)});
    }
    emit(g, t);
    return 0;
}

int cmdWiretap(const GlobalOptions& g) {
    const Json cfg = requireConfig(g);
    if (!cfg.contains("kernel")) throw ConfigError("missing kernel");
    const WiretapKernel w = wiretapKernelFromJson(cfg["kernel"]);
    const double eps = cfg.value("eps", 0.0);
    const double delta = cfg.value("delta", 0.0);
    const Caps caps = capsFrom(g);
    MaxCmiOptions cmi_opts;
    cmi_opts.tol = g.tol;

    std::vector<double> etas;
    if (cfg.contains("eta_values")) {
        for (const Json& j : cfg["eta_values"]) etas.push_back(j.get<double>());
    }
    std::vector<Index> ns;
    if (cfg.contains("n_values")) {
        for (const Json& j : cfg["n_values"]) ns.push_back(j.get<Index>());
    }

    ResultTable t = makeTable(g, "wiretap", cfg.dump());
    t.columns = {"row_type", "key", "value",     "eps",        "delta", "eta",
                 "n",        "beta", "log2_beta", "bound_bits", "per_symbol_rate",
                 "surrogate", "holds"};
    auto blank = [&](const std::string& type, const std::string& key, const std::string& value) {
        t.addRow({type, key, value, "", "", "", "", "", "", "", "", "", ""});
    };

    const DegradedCheck deg = checkDegraded(w, g.tol);
    blank("degraded", "is_degraded", deg.is_degraded ? "1" : "0");

    const MaxCmiResult cmi = maxConditionalMutualInformation(w, cmi_opts);
    blank("max_cmi", "value_bits", formatReal(cmi.value));
    blank("max_cmi", "converged", cmi.converged ? "1" : "0");
    for (Index x = 0; x < cmi.p_star.size(); ++x) {
        blank("max_cmi", "p_star_" + std::to_string(x), formatReal(cmi.p_star(x)));
    }
    if (deg.is_degraded && eps > 0.0 && eps < 1.0) {
        blank("capacity", "capacity_bits", formatReal(capacityFormula(w, eps, delta, cmi_opts)));
    }

    std::optional<FactorizedKernel> v;
    if (cfg.contains("v")) v = factorizedKernelFromJson(cfg["v"]);
    const FactorizedKernel v_used = v ? *v : defaultConverseChannel(w, cmi_opts);

    Json report_array = Json::array();
    for (double eta : etas) {
        for (Index n : ns) {
            try {
                const ConverseBoundReport r =
                    converseBound(w, eps, delta, eta, n, v_used, caps, cmi_opts);
                t.addRow({"bound", "", "", formatReal(eps), formatReal(delta), formatReal(eta),
                          formatInt(n), formatReal(r.beta), formatReal(r.log2_beta),
                          formatReal(r.bound_bits), formatReal(r.per_symbol_rate),
                          r.surrogate ? "1" : "0", ""});
                report_array.push_back(toJson(r));
            } catch (const SizeOverflow&) {
                t.addRow({"bound", "", "skipped", formatReal(eps), formatReal(delta),
                          formatReal(eta), formatInt(n), "", "", "", "", "", ""});
            }
        }
    }

    std::optional<WiretapCode> code;
    if (cfg.contains("code")) code = codeFromJson(cfg["code"]);
    if (cfg.contains("code_file")) code = codeFromJson(loadJsonFile(cfg["code_file"]));
    if (code) {
        const ProtocolJoint pj = executeExact(*code, w, caps);
        const CodeMetrics m = codeMetrics(pj, *code);
        t.addRow({"code_metrics", "", "", formatReal(m.error_prob), formatReal(m.leakage), "",
                  formatInt(code->n), "", "", "", "", "", ""});
        for (double eta : etas) {
            if (m.error_prob + m.leakage + eta >= 1.0) continue;
            const ConverseValidation val = validateConverse(*code, w, eta, v_used, caps);
            t.addRow({"validate", "", formatReal(val.log_n_messages), formatReal(val.eps),
                      formatReal(val.delta), formatReal(eta), formatInt(code->n),
                      formatReal(val.report.beta), formatReal(val.report.log2_beta),
                      formatReal(val.bound_bits), "", "", val.holds ? "1" : "0"});
        }
    }

    if (cfg.contains("sweep")) {
        const Json& sw = cfg["sweep"];
        const CodeShape shape{sw.value("n", Index{1}), sw.value("msg_count", Index{2}),
                              sw.value("x_size", w.inputSize()), sw.value("y_size", w.ySize()),
                              sw.value("f_size", Index{1})};
        const std::uint64_t count = deterministicCodeCount(shape);
        const double log_n = std::log2(static_cast<double>(shape.msg_count));
        // beta depends on the code only through eps + delta + eta; memoize.
        std::unordered_map<std::uint64_t, double> beta_memo;
        for (std::uint64_t rank = 0; rank < count; ++rank) {
            const WiretapCode c = deterministicCodeFromRank(shape, rank);
            const CodeMetrics m = codeMetrics(executeExact(c, w, caps), c);
            for (double eta : etas) {
                const double eps_total = m.error_prob + m.leakage + eta;
                if (eps_total >= 1.0) continue;
                std::uint64_t key;
                static_assert(sizeof(key) == sizeof(double));
                std::memcpy(&key, &eps_total, sizeof(key));
                auto it = beta_memo.find(key);
                if (it == beta_memo.end()) {
                    const ConverseBoundReport r = converseBound(
                        w, m.error_prob, m.leakage, eta, shape.n, v_used, caps, cmi_opts);
                    it = beta_memo.emplace(key, r.log2_beta).first;
                }
                const double bound = -it->second + 2.0 * std::log2(1.0 / eta);
                t.addRow({"sweep", formatInt(static_cast<long long>(rank)), "",
                          formatReal(m.error_prob), formatReal(m.leakage), formatReal(eta),
                          formatInt(shape.n), "", formatReal(it->second), formatReal(bound), "",
                          "", log_n <= bound + 1e-9 ? "1" : "0"});
            }
        }
    }

    if (!g.json_report_path.empty()) {
        writeTextFile(g.json_report_path, report_array.dump(2) + "\n");
    }
    emit(g, t);
    return 0;
}

int cmdSelftest(const GlobalOptions& g) {
    SelftestOptions opts;
    opts.seed = g.seed;
    if (!g.config_path.empty()) {
        const Json cfg = loadJsonFile(g.config_path);
        if (cfg.contains("kernels")) {
            for (const Json& j : cfg["kernels"]) opts.kernel_files.push_back(j.get<std::string>());
        }
        opts.scale = cfg.value("scale", 1);
    }
    const std::vector<PropertyResult> results = runSelftest(opts);
    ResultTable t = makeTable(g, "selftest", "");
    t.columns = {"property", "status", "detail"};
    bool all_pass = true;
    for (const PropertyResult& r : results) {
        all_pass = all_pass && r.pass;
        t.addRow({r.name, r.pass ? "pass" : "fail", r.detail});
    }
    t.meta("all_pass", all_pass ? "1" : "0");
    emit(g, t);
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact finite-blocklength toolkit for wiretap channels with public feedback"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "JSON config file");
    app.add_option("--out", g.out_path, "CSV output path (default: stdout)");
    app.add_option("--seed", g.seed, "random seed for randomized runs")->capture_default_str();
    app.add_option("--threads", g.threads, "worker budget for parallel reductions")
        ->capture_default_str();
    app.add_option("--cap-states", g.cap_states,
                   "override the state-space caps (cells and type classes)");
    app.add_option("--tol", g.tol, "optimizer / consistency tolerance")->capture_default_str();
    app.add_option("--json-report", g.json_report_path,
                   "also write converse-bound reports as JSON (wiretap command)");

    auto* beta = app.add_subcommand("beta", "Neyman-Pearson beta and its Stein exponent curve");
    auto* discriminate =
        app.add_subcommand("discriminate", "active discrimination between two channels");
    auto* wiretap =
        app.add_subcommand("wiretap", "degradedness, max I(X;Y|Z), converse bounds, code checks");
    auto* selftest = app.add_subcommand("selftest", "run the cross-module invariant suite");
    for (CLI::App* sub : {beta, discriminate, wiretap, selftest}) sub->fallthrough();

    try {
        app.parse(argc, argv);
        if (beta->parsed()) return cmdBeta(g);
        if (discriminate->parsed()) return cmdDiscriminate(g);
        if (wiretap->parsed()) return cmdWiretap(g);
        if (selftest->parsed()) return cmdSelftest(g);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors count as validation errors
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
