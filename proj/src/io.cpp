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

#include "wtk/io.hpp"

#include <fstream>
#include <sstream>

namespace wtk {

namespace {

const Json& field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(std::string("missing field \"") + key + "\"");
    return *it;
}

Vec vecFromJson(const Json& j, const char* what) {
    if (!j.is_array()) throw ConfigError(std::string(what) + ": expected an array");
    Vec v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ConfigError(std::string(what) + ": non-numeric entry");
        v(static_cast<Index>(i)) = j[i].get<double>();
    }
    return v;
}

Json vecToJson(const Vec& v) {
    Json j = Json::array();
    for (Index i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

Mat matFromJson(const Json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw ConfigError(std::string(what) + ": expected rows");
    const Index rows = static_cast<Index>(j.size());
    Vec first = vecFromJson(j[0], what);
    Mat m(rows, first.size());
    m.row(0) = first.transpose();
    for (Index r = 1; r < rows; ++r) {
        Vec row = vecFromJson(j[static_cast<std::size_t>(r)], what);
        if (row.size() != m.cols()) throw ConfigError(std::string(what) + ": ragged rows");
        m.row(r) = row.transpose();
    }
    return m;
}

Json matToJson(const Mat& m) {
    Json j = Json::array();
    for (Index r = 0; r < m.rows(); ++r) j.push_back(vecToJson(m.row(r).transpose()));
    return j;
}

std::vector<Index> indexTableFromJson(const Json& j, const char* what) {
    if (!j.is_array()) throw ConfigError(std::string(what) + ": expected an array");
    std::vector<Index> out;
    out.reserve(j.size());
    for (const Json& e : j) {
        if (!e.is_number_integer()) throw ConfigError(std::string(what) + ": non-integer entry");
        out.push_back(e.get<Index>());
    }
    return out;
}

Json indexTableToJson(const std::vector<Index>& t) {
    Json j = Json::array();
    for (Index v : t) j.push_back(v);
    return j;
}

}  // namespace

Json loadJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void writeTextFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << content;
}

std::string readTextFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Distribution distributionFromJson(const Json& j) {
    try {
        return Distribution(vecFromJson(field(j, "probs"), "probs"));
    } catch (const InvalidDistribution& e) {
        throw ConfigError(std::string("invalid distribution: ") + e.what());
    }
}

Json toJson(const Distribution& d) { return Json{{"probs", vecToJson(d.probs())}}; }

Dmc dmcFromJson(const Json& j) {
    try {
        return Dmc(matFromJson(field(j, "rows"), "rows"));
    } catch (const InvalidDistribution& e) {
        throw ConfigError(std::string("invalid channel: ") + e.what());
    }
}

Json toJson(const Dmc& k) { return Json{{"rows", matToJson(k.matrix())}}; }

WiretapKernel wiretapKernelFromJson(const Json& j) {
    try {
        return WiretapKernel(field(j, "y_size").get<Index>(), field(j, "z_size").get<Index>(),
                             matFromJson(field(j, "rows"), "rows"));
    } catch (const InvalidDistribution& e) {
        throw ConfigError(std::string("invalid wiretap kernel: ") + e.what());
    }
}

Json toJson(const WiretapKernel& w) {
    return Json{{"y_size", w.ySize()}, {"z_size", w.zSize()}, {"rows", matToJson(w.matrix())}};
}

FactorizedKernel factorizedKernelFromJson(const Json& j) {
    return FactorizedKernel{dmcFromJson(field(j, "v2")), dmcFromJson(field(j, "v1"))};
}

Json toJson(const FactorizedKernel& v) {
    return Json{{"v2", toJson(v.v2)}, {"v1", toJson(v.v1)}};
}

WiretapCode codeFromJson(const Json& j) {
    WiretapCode code;
    code.n = field(j, "n").get<Index>();
    code.msg_count = field(j, "msg_count").get<Index>();
    code.x_size = field(j, "x_size").get<Index>();
    code.y_size = field(j, "y_size").get<Index>();
    code.f_size = field(j, "f_size").get<Index>();
    if (j.contains("ux")) code.ux = distributionFromJson(j["ux"]);
    if (j.contains("uy")) code.uy = distributionFromJson(j["uy"]);
    const Json& enc = field(j, "encoder");
    const Json& fb = field(j, "feedback");
    if (!enc.is_array() || !fb.is_array()) throw ConfigError("encoder/feedback: expected arrays");
    for (const Json& t : enc) code.encoder.push_back(indexTableFromJson(t, "encoder"));
    for (const Json& t : fb) code.feedback.push_back(indexTableFromJson(t, "feedback"));
    code.decoder = indexTableFromJson(field(j, "decoder"), "decoder");
    try {
        code.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid code: ") + e.what());
    }
    return code;
}

Json toJson(const WiretapCode& c) {
    Json enc = Json::array();
    for (const auto& t : c.encoder) enc.push_back(indexTableToJson(t));
    Json fb = Json::array();
    for (const auto& t : c.feedback) fb.push_back(indexTableToJson(t));
    return Json{{"n", c.n},
                {"msg_count", c.msg_count},
                {"x_size", c.x_size},
                {"y_size", c.y_size},
                {"f_size", c.f_size},
                {"ux", toJson(c.ux)},
                {"uy", toJson(c.uy)},
                {"encoder", enc},
                {"feedback", fb},
                {"decoder", indexTableToJson(c.decoder)}};
}

Json toJson(const ConverseBoundReport& r) {
    return Json{{"eps", r.eps},
                {"delta", r.delta},
                {"eta", r.eta},
                {"n", r.n},
                {"beta", r.beta},
                {"log2_beta", r.log2_beta},
                {"bound_bits", r.bound_bits},
                {"per_symbol_rate", r.per_symbol_rate},
                {"surrogate", r.surrogate},
                {"x_star", r.x_star},
                {"v", toJson(r.v_used)}};
}

}  // namespace wtk
