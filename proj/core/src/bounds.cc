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

#include "dsp/bounds.h"

#include <algorithm>

namespace dsp {

LowerBound lower_bound(const Instance& instance) {
  LowerBound lb;
  const Int W = instance.W();
  lb.h_max = instance.h_max();
  for (const Task& t : instance.tasks()) {
    if (2 * t.w > W) lb.wide_sum += t.h;
  }
  lb.area_avg = (instance.area() + W - 1) / W;
  lb.value = std::max({lb.h_max, lb.wide_sum, lb.area_avg});
  return lb;
}

}  // namespace dsp
