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

#ifndef WTK_IO_HPP
#define WTK_IO_HPP

#include <string>

#include <json.hpp>

#include "wtk/protocol.hpp"

namespace wtk {

using Json = nlohmann::json;

/// File and schema errors surface as ConfigError with the offending path
/// or field in the message.
Json loadJsonFile(const std::string& path);
void writeTextFile(const std::string& path, const std::string& content);
std::string readTextFile(const std::string& path);

// {"probs": [..]}
Distribution distributionFromJson(const Json& j);
Json toJson(const Distribution& d);

// {"rows": [[..], ..]}
Dmc dmcFromJson(const Json& j);
Json toJson(const Dmc& k);

// {"y_size": .., "z_size": .., "rows": [[row over (y,z), z fastest], ..]}
WiretapKernel wiretapKernelFromJson(const Json& j);
Json toJson(const WiretapKernel& w);

// {"v2": DMC, "v1": DMC}
FactorizedKernel factorizedKernelFromJson(const Json& j);
Json toJson(const FactorizedKernel& v);

// Explicit tables; see WiretapCode for the cell layout.
WiretapCode codeFromJson(const Json& j);
Json toJson(const WiretapCode& c);

Json toJson(const ConverseBoundReport& r);

}  // namespace wtk

#endif
