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

#ifndef WTK_ERRORS_HPP
#define WTK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wtk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two objects that must live on the same alphabet do not.
struct AlphabetMismatch : Error {
    using Error::Error;
};

/// A requested computation exceeds the configured state-space cap.
struct SizeOverflow : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

/// A numeric parameter lies outside the domain of the invoked operation.
struct ParameterDomain : Error {
    using Error::Error;
};

/// A supplied joint violates the error/secrecy hypotheses it was declared with.
struct HypothesisViolation : Error {
    using Error::Error;
};

struct NotDegraded : Error {
    using Error::Error;
};

/// A probability object violates its construction invariants.
struct InvalidDistribution : Error {
    using Error::Error;
};

/// Malformed configuration or input file (CLI exit code 1).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace wtk

#endif
