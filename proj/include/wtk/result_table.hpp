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

#ifndef WTK_RESULT_TABLE_HPP
#define WTK_RESULT_TABLE_HPP

#include <string>
#include <utility>
#include <vector>

namespace wtk {

/// Rectangular experiment output rendered as CSV with '#'-prefixed metadata
/// header lines. Rendering is deterministic: rerunning the same config and
/// seed reproduces the bytes.
struct ResultTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void meta(std::string key, std::string value) {
        metadata.emplace_back(std::move(key), std::move(value));
    }
    void addRow(std::vector<std::string> cells);
    std::string toCsv() const;
};

/// Shortest-round-trip decimal rendering; stable across runs.
std::string formatReal(double v);
std::string formatInt(long long v);

}  // namespace wtk

#endif
