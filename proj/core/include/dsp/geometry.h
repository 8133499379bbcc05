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

// Axis-parallel placements of rectangles inside a box.

#ifndef DSP_GEOMETRY_H_
#define DSP_GEOMETRY_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dsp/core.h"

namespace dsp {

// Rectangles reuse Task: w is the horizontal extent, h the vertical one.
struct GeomPlacement {
  Int box_w = 0;
  Int box_h = 0;
  std::map<Int, std::pair<Int, Int>> pos;  // id -> bottom-left (x, y)
  bool operator==(const GeomPlacement&) const = default;
};

// Returns a description of every containment or overlap violation; empty
// when the placement is valid. Zero-area rectangles never overlap.
std::vector<std::string> placement_violations(const std::vector<Task>& rects,
                                              const GeomPlacement& placement);

// Height actually used: max over rectangles of y + h.
Int placement_height(const std::vector<Task>& rects,
                     const GeomPlacement& placement);

}  // namespace dsp

#endif  // DSP_GEOMETRY_H_
