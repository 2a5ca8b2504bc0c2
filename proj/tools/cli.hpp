// Copyright 2026 The kldro Authors
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

// Command-line front end.
//
//   kldro run --config FILE [--set key=value]... --out DIR [--seed N] [--threads N]
//   kldro worstcase --z 1,2,3 --q 0.2,0.3,0.5 --r 0.1
//   kldro radius --T 25 --d 50 --A 24 [--tmin 20] [--alpha 0.05] [--alpha-a A]
//   kldro graph --h 7 --w 4
//
// Exit status: 0 success, 1 invalid input, 2 failure while running.

#pragma once

#include <iosfwd>

namespace kldro::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitRuntime = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kldro::cli
