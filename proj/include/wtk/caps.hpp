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

#ifndef WTK_CAPS_HPP
#define WTK_CAPS_HPP

#include <cstdint>

namespace wtk {

/// Resource budgets for exact computations. Defaults target desk scale;
/// every cap can be raised by the caller (CLI: --cap-states, --threads).
struct Caps {
    /// Largest flat joint-distribution array (cells) built in memory.
    std::uint64_t max_cells = 10'000'000;
    /// Largest adaptive-strategy space enumerated by brute force.
    std::uint64_t max_strategies = 100'000;
    /// Hard limit on i.i.d. type classes visited (streaming included).
    std::uint64_t max_type_classes = 10'000'000;
    /// Above this many type classes the beta computation switches from the
    /// materialized sort to the two-pass streaming histogram select.
    std::uint64_t materialize_type_classes = 4'000'000;
    /// Worker budget for the parallelizable reductions.
    int threads = 1;
};

}  // namespace wtk

#endif
