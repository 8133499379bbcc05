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

// Feasibility linear programs with integer data: a dense two-phase simplex
// in floating point whose answer is re-verified in exact arithmetic, with an
// exact rational simplex as the fallback.

#ifndef DSP_LP_H_
#define DSP_LP_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "dsp/core.h"

namespace dsp {

enum class RowSense { kLessEqual, kEqual };

struct LpRow {
  std::vector<std::pair<int, Int>> coeffs;  // (variable, coefficient)
  RowSense sense = RowSense::kLessEqual;
  Int rhs = 0;  // must be >= 0
};

struct LpProblem {
  int num_vars = 0;
  std::vector<LpRow> rows;
};

enum class LpStatus { kFeasible, kInfeasible };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> x;  // exact, verified; empty when infeasible
  bool rational_fallback = false;
  std::int64_t pivots = 0;
};

// Finds x >= 0 satisfying every row. Throws PreconditionError when the dense
// tableau would exceed `max_cells` entries and DefectError on numeric failure.
LpResult solve_feasibility(const LpProblem& problem,
                           std::int64_t max_cells = 50'000'000);

// Exact check of x >= 0 and every row.
bool is_feasible(const LpProblem& problem, const std::vector<Rational>& x);

}  // namespace dsp

#endif  // DSP_LP_H_
