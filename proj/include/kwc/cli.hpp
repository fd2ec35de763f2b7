// Copyright 2026 The kwc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>

namespace kwc::cli {

// Exit codes. 1 means a decided mathematical "no"; 3 means the tool could
// not decide, so callers must never treat 1 and 3 alike.
inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;
inline constexpr int kInputError = 2;
inline constexpr int kUndecided = 3;

// Entry point of the kwc tool. Reports go to `out`; every failure is also
// written to `err` as a kwc.error/1 JSON document.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kwc::cli
