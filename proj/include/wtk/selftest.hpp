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

#ifndef WTK_SELFTEST_HPP
#define WTK_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace wtk {

struct PropertyResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct SelftestOptions {
    std::uint64_t seed = 1;
    int scale = 1;  // multiplies randomized trial counts
    std::vector<std::string> kernel_files;  // extra kernels to consistency-check
};

/// Runs the cross-module invariant suite at reduced trial counts.
/// Deterministic for a fixed (seed, scale, kernel set).
std::vector<PropertyResult> runSelftest(const SelftestOptions& opts);

}  // namespace wtk

#endif
