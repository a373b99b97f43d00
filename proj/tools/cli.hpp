// Copyright 2026 The torusmass Authors
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

#pragma once

#include <ostream>

namespace torusmass::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitDomain = 2;  // invalid flags or out-of-range input
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitRuntime = 4;  // I/O or numerical failure

// Entry point of the torusmass tool. Machine-readable results go to out,
// diagnostics (controlled by LOG_LEVEL) and error messages to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace torusmass::cli
