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

#include "dsp/geometry.h"

#include <algorithm>

namespace dsp {

std::vector<std::string> placement_violations(const std::vector<Task>& rects,
                                              const GeomPlacement& placement) {
  std::vector<std::string> out;
  for (const Task& r : rects) {
    auto it = placement.pos.find(r.id);
    if (it == placement.pos.end()) {
      out.push_back("rect " + std::to_string(r.id) + " not placed");
      continue;
    }
    const auto [x, y] = it->second;
    if (x < 0 || y < 0 || x + r.w > placement.box_w ||
        y + r.h > placement.box_h) {
      out.push_back("rect " + std::to_string(r.id) + " outside the box");
    }
  }
  for (size_t i = 0; i < rects.size(); ++i) {
    auto pi = placement.pos.find(rects[i].id);
    if (pi == placement.pos.end() || rects[i].area() == 0) continue;
    for (size_t j = i + 1; j < rects.size(); ++j) {
      auto pj = placement.pos.find(rects[j].id);
      if (pj == placement.pos.end() || rects[j].area() == 0) continue;
      const auto [xi, yi] = pi->second;
      const auto [xj, yj] = pj->second;
      const bool apart = xi + rects[i].w <= xj || xj + rects[j].w <= xi ||
                         yi + rects[i].h <= yj || yj + rects[j].h <= yi;
      if (!apart) {
        out.push_back("rects " + std::to_string(rects[i].id) + " and " +
                      std::to_string(rects[j].id) + " overlap");
      }
    }
  }
  return out;
}

Int placement_height(const std::vector<Task>& rects,
                     const GeomPlacement& placement) {
  Int top = 0;
  for (const Task& r : rects) {
    auto it = placement.pos.find(r.id);
    if (it != placement.pos.end()) top = std::max(top, it->second.second + r.h);
  }
  return top;
}

}  // namespace dsp
