// Copyright 2026 The noisebench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISEBENCH_CLI_H_
#define NOISEBENCH_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace noisebench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name. Subcommands: inject, augment, sweep,
// compare, report, selftest. Each accepts --config FILE with key=value lines;
// flags given on the command line win over file values.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noisebench

#endif  // NOISEBENCH_CLI_H_
