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

#include "wtk/result_table.hpp"

#include <cstdio>
#include <stdexcept>

namespace wtk {

void ResultTable::addRow(std::vector<std::string> cells) {
    if (cells.size() != columns.size()) {
        throw std::logic_error("ResultTable: row arity does not match columns");
    }
    rows.push_back(std::move(cells));
}

std::string ResultTable::toCsv() const {
    std::string out;
    for (const auto& [key, value] : metadata) {
        out += "# " + key + ": " + value + "\n";
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

std::string formatReal(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string formatInt(long long v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", v);
    return buf;
}

}  // namespace wtk
