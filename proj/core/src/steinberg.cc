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

#include "dsp/steinberg.h"

#include <algorithm>
#include <functional>
#include <optional>
#include <tuple>

namespace dsp {
namespace {

struct Segment {
  Int x = 0;
  Int w = 0;
  Int y = 0;
};

enum class Score { kBottomLeft, kLeastWaste };

// Places rects in the given order on a skyline; nullopt when one does not fit.
std::optional<GeomPlacement> Skyline(const std::vector<Task>& rects,
                                     Int box_w, Int box_h, Score score) {
  GeomPlacement out;
  out.box_w = box_w;
  out.box_h = box_h;
  std::vector<Segment> sky = {{0, box_w, 0}};
  for (const Task& r : rects) {
    if (r.w == 0 || r.h == 0) {
      out.pos[r.id] = {0, 0};
      continue;
    }
    bool found = false;
    Int best_x = 0;
    Int best_y = 0;
    Int best_key1 = 0;
    Int best_key2 = 0;
    auto consider = [&](Int x) {
      if (x < 0 || x + r.w > box_w) return;
      Int y = 0;
      Int waste = 0;
      for (const Segment& s : sky) {
        if (s.x + s.w <= x || s.x >= x + r.w) continue;
        y = std::max(y, s.y);
      }
      if (y + r.h > box_h) return;
      for (const Segment& s : sky) {
        const Int lo = std::max(s.x, x);
        const Int hi = std::min(s.x + s.w, x + r.w);
        if (lo < hi) waste += (hi - lo) * (y - s.y);
      }
      const Int k1 = score == Score::kBottomLeft ? y + r.h : waste;
      const Int k2 = score == Score::kBottomLeft ? x : y + r.h;
      if (!found || k1 < best_key1 || (k1 == best_key1 && k2 < best_key2) ||
          (k1 == best_key1 && k2 == best_key2 && x < best_x)) {
        found = true;
        best_x = x;
        best_y = y;
        best_key1 = k1;
        best_key2 = k2;
      }
    };
    for (const Segment& s : sky) {
      consider(s.x);
      consider(s.x + s.w - r.w);
    }
    if (!found) return std::nullopt;
    out.pos[r.id] = {best_x, best_y};
    // Replace the covered part of the skyline by the new top.
    std::vector<Segment> next;
    const Int lo = best_x;
    const Int hi = best_x + r.w;
    bool inserted = false;
    for (const Segment& s : sky) {
      const Int s_hi = s.x + s.w;
      if (s_hi <= lo || s.x >= hi) {
        if (s.x >= hi && !inserted) {
          next.push_back({lo, r.w, best_y + r.h});
          inserted = true;
        }
        next.push_back(s);
        continue;
      }
      if (s.x < lo) next.push_back({s.x, lo - s.x, s.y});
      if (!inserted) {
        next.push_back({lo, r.w, best_y + r.h});
        inserted = true;
      }
      if (s_hi > hi) next.push_back({hi, s_hi - hi, s.y});
    }
    if (!inserted) next.push_back({lo, r.w, best_y + r.h});
    sky.clear();
    for (const Segment& s : next) {
      if (!sky.empty() && sky.back().y == s.y) {
        sky.back().w += s.w;
      } else {
        sky.push_back(s);
      }
    }
  }
  return out;
}

Int PositivePart(Int v) { return v > 0 ? v : 0; }

}  // namespace

std::vector<std::string> steinberg_violations(const std::vector<Task>& rects,
                                              Int box_w, Int box_h) {
  std::vector<std::string> v;
  Int w_max = 0;
  Int h_max = 0;
  Int area = 0;
  for (const Task& r : rects) {
    w_max = std::max(w_max, r.w);
    h_max = std::max(h_max, r.h);
    area = checked_add(area, checked_mul(r.w, r.h));
  }
  if (w_max > box_w) v.push_back("w_max exceeds box width");
  if (h_max > box_h) v.push_back("h_max exceeds box height");
  const Int rhs = checked_add(
      checked_mul(2, area),
      checked_mul(PositivePart(2 * h_max - box_h), PositivePart(2 * w_max - box_w)));
  if (checked_mul(box_w, box_h) < rhs) {
    v.push_back("area term: box area " + std::to_string(box_w * box_h) +
                " < " + std::to_string(rhs));
  }
  return v;
}

Int steinberg_min_height(const std::vector<Task>& rects, Int box_w) {
  Int h_max = 0;
  Int w_max = 0;
  for (const Task& r : rects) {
    h_max = std::max(h_max, r.h);
    w_max = std::max(w_max, r.w);
  }
  if (w_max > box_w) {
    throw PreconditionError("steinberg: w_max exceeds box width");
  }
  // The condition is monotone in H; double until it holds, then bisect.
  Int lo = h_max;
  if (steinberg_violations(rects, box_w, lo).empty()) return lo;
  Int hi = std::max<Int>(1, 2 * lo);
  while (!steinberg_violations(rects, box_w, hi).empty()) hi *= 2;
  while (hi - lo > 1) {
    const Int mid = lo + (hi - lo) / 2;
    if (steinberg_violations(rects, box_w, mid).empty()) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

GeomPlacement steinberg_pack(const std::vector<Task>& rects, Int box_w,
                             Int box_h, const OracleBudget& fallback) {
  const std::vector<std::string> violated =
      steinberg_violations(rects, box_w, box_h);
  if (!violated.empty()) {
    std::string msg = "steinberg precondition violated:";
    for (const std::string& s : violated) msg += " " + s + ";";
    throw PreconditionError(msg);
  }
  using Less = std::function<bool(const Task&, const Task&)>;
  const std::vector<Less> orders = {
      [](const Task& a, const Task& b) {
        return std::tie(b.h, b.w, a.id) < std::tie(a.h, a.w, b.id);
      },
      [](const Task& a, const Task& b) {
        return std::tie(b.w, b.h, a.id) < std::tie(a.w, a.h, b.id);
      },
      [](const Task& a, const Task& b) {
        const Int ka = a.w * a.h;
        const Int kb = b.w * b.h;
        return std::tie(kb, a.id) < std::tie(ka, b.id);
      },
      [](const Task& a, const Task& b) {
        const Int ka = std::max(a.w, a.h);
        const Int kb = std::max(b.w, b.h);
        return std::tie(kb, a.id) < std::tie(ka, b.id);
      },
  };
  for (const Less& order : orders) {
    std::vector<Task> sorted = rects;
    std::sort(sorted.begin(), sorted.end(), order);
    for (Score score : {Score::kBottomLeft, Score::kLeastWaste}) {
      std::optional<GeomPlacement> p = Skyline(sorted, box_w, box_h, score);
      if (p) return *p;
    }
  }
  if (box_w > fallback.max_W || checked_mul(box_w, box_h) > 4'000'000) {
    throw DefectError("steinberg: heuristics failed and the box is too large "
                      "for the exact search");
  }
  GeomPlacement out;
  bool aborted = false;
  if (gsp_pack_box(rects, box_w, box_h, fallback, &out, &aborted)) return out;
  throw DefectError(aborted ? "steinberg: exact search budget exhausted"
                            : "steinberg: condition holds but no packing "
                              "exists");
}

}  // namespace dsp
