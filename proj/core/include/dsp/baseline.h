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

// Sorted fill, its (Q, t*)-sorted generalization, and the 2-approximation.

#ifndef DSP_BASELINE_H_
#define DSP_BASELINE_H_

#include <vector>

#include "dsp/core.h"

namespace dsp {

struct Solution {
  Schedule schedule;
  SolveReport report;
};

// Visited e_check positions, in scan order.
struct NfdTrace {
  std::vector<Int> frontier;
  std::vector<Int> placement_order;
};

// Places `remaining` on top of a sorted (non-increasing) partial schedule
// keeping the peak at most pi. Scan order: height desc, width desc, id asc.
// Throws PreconditionError naming the failed bullet; an unplaceable task
// under satisfied preconditions is a DefectError.
Schedule nfd_fill(const Instance& instance, const Schedule& sorted_partial,
                  const std::vector<Int>& remaining, Int pi,
                  NfdTrace* trace = nullptr);

// Same goal for a ((1+alpha)*opt_guess, t*)-sorted partial: reduces to
// nfd_fill on the unit-task instance right of t*.
Schedule qt_fill(const Instance& instance, const Schedule& partial,
                 const std::vector<Int>& remaining, const Rational& alpha,
                 Int opt_guess, Int pi);

Solution two_approx(const Instance& instance);

}  // namespace dsp

#endif  // DSP_BASELINE_H_
