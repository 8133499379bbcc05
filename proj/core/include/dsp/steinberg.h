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

// Geometric packing of rectangles into a box under the Steinberg area
// condition.

#ifndef DSP_STEINBERG_H_
#define DSP_STEINBERG_H_

#include <string>
#include <vector>

#include "dsp/core.h"
#include "dsp/exact.h"
#include "dsp/geometry.h"

namespace dsp {

// Names every violated term of: w_max <= box_w, h_max <= box_h and
// box_w*box_h >= 2a + (2h_max - box_h)_+ (2w_max - box_w)_+. Empty when the
// condition holds.
std::vector<std::string> steinberg_violations(const std::vector<Task>& rects,
                                              Int box_w, Int box_h);

// Smallest box height H >= h_max with the condition holding for width box_w.
// Throws PreconditionError when w_max > box_w.
Int steinberg_min_height(const std::vector<Task>& rects, Int box_w);

// Skyline heuristics under several orders, then the exact box search.
// Throws PreconditionError naming the violated term; a set meeting the
// condition that cannot be packed is a DefectError.
GeomPlacement steinberg_pack(const std::vector<Task>& rects, Int box_w,
                             Int box_h,
                             const OracleBudget& fallback = {20'000'000, 60.0,
                                                             4096, 40});

}  // namespace dsp

#endif  // DSP_STEINBERG_H_
