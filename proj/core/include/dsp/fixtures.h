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

// Named instances, the balanced-partition reduction, and seeded generators.

#ifndef DSP_FIXTURES_H_
#define DSP_FIXTURES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsp/core.h"

namespace dsp {

// "fig1a" (W 7, area 28) or "fig1b" (W 13, eleven squares, area 143).
Instance named_instance(const std::string& name);
// Known optimal DSP schedule for a named instance.
Schedule named_schedule(const std::string& name);
std::vector<std::string> named_instance_names();

// Squares of side C + a_i with C = inv_eps * sum(A) on W = n*C + sum(A)/2
// edges, where |A| = 2n.
Instance hardness_instance(const std::vector<Int>& A, Int inv_eps);

// Exhaustive check for a split of A into two halves of equal size and sum.
bool has_balanced_partition(const std::vector<Int>& A);

struct GeneratorParams {
  Int n_min = 0;
  Int n_max = 10;
  Int W_min = 1;
  Int W_max = 12;
  Int w_max = 0;  // 0: up to W
  Int h_min = 0;
  Int h_max = 10;
  // Aspect constraint h <= w <= beta * h when set.
  std::optional<Rational> beta;
  std::uint64_t seed = 0;
};

Instance random_instance(const GeneratorParams& params);

// Layers of unit-height tasks whose widths split W exactly; the optimum
// equals the number of layers, which equals the area bound.
Instance random_flat_instance(Int W, Int layers, Int max_parts,
                              std::uint64_t seed);

}  // namespace dsp

#endif  // DSP_FIXTURES_H_
