// Copyright 2026 The dsp-pack Authors
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

// Command-line front end: solve, verify, bench, gen and render.

#ifndef DSP_TOOLS_CLI_H_
#define DSP_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "dsp/baseline.h"
#include "dsp/core.h"
#include "dsp/geometry.h"

namespace dsp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDefect = 3;

inline constexpr char kBenchHeader[] =
    "instance,algo,peak,lb,exact,ratio,ms,seed,params";

struct AlgoOptions {
  std::string algo = "two-approx";
  std::string eps;   // empty: algorithm default
  std::string beta;  // empty: 1
  std::uint64_t seed = 0;
  std::string mode = "guided";
  std::int64_t budget = 0;  // oracle node limit; 0: default
};

// Runs one algorithm. `placement` receives the geometric packing when the
// algorithm produces one (exact-gsp) and is left empty otherwise.
Solution solve(const Instance& instance, const AlgoOptions& options,
               GeomPlacement* placement = nullptr);

// SVG with the demand profile as a step polygon and one rectangle per task,
// stacked per edge in id order. A non-empty placement is drawn geometrically
// below the profile instead of stacking.
std::string render_svg(const Instance& instance, const Schedule& schedule,
                       const GeomPlacement& placement);

// Entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace dsp::cli

#endif  // DSP_TOOLS_CLI_H_
