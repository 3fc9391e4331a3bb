// Copyright 2026 The evrecon Authors
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

#ifndef EVRECON_TOOLS_CLI_HPP
#define EVRECON_TOOLS_CLI_HPP

#include <iosfwd>

namespace evrecon::cli
{
enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kIo = 3 };

/// Entry point of the evrecon tool (reconstruct / simulate / info).
int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

}  // namespace evrecon::cli

#endif  // EVRECON_TOOLS_CLI_HPP
