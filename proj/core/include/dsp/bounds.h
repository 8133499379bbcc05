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

// Lower bounds on the optimal peak.

#ifndef DSP_BOUNDS_H_
#define DSP_BOUNDS_H_

#include "dsp/core.h"

namespace dsp {

struct LowerBound {
  Int h_max = 0;
  Int wide_sum = 0;   // total height of tasks with 2w > W
  Int area_avg = 0;   // ceil(a / W)
  Int value = 0;
  bool operator==(const LowerBound&) const = default;
};

LowerBound lower_bound(const Instance& instance);

}  // namespace dsp

#endif  // DSP_BOUNDS_H_
