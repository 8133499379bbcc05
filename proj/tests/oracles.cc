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

#include "oracles.h"

#include <algorithm>
#include <functional>

namespace dsp::testing {

std::vector<Int> naive_demand(const Instance& instance,
                              const Schedule& schedule) {
  std::vector<Int> d(instance.W(), 0);
  for (Int e = 0; e < instance.W(); ++e) {
    for (const auto& [id, s] : schedule.starts) {
      const Task& t = instance.task(id);
      if (s <= e && e < s + t.w) d[e] += t.h;
    }
  }
  return d;
}

Int naive_peak(const Instance& instance, const Schedule& schedule) {
  const std::vector<Int> d = naive_demand(instance, schedule);
  Int best = 0;
  for (Int v : d) best = std::max(best, v);
  return best;
}

Int naive_optimum(const Instance& instance) {
  const std::vector<Task>& tasks = instance.tasks();
  std::vector<Int> d(instance.W(), 0);
  Int best = -1;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == tasks.size()) {
      Int p = 0;
      for (Int v : d) p = std::max(p, v);
      if (best < 0 || p < best) best = p;
      return;
    }
    const Task& t = tasks[i];
    for (Int s = 0; s + t.w <= instance.W(); ++s) {
      for (Int e = s; e < s + t.w; ++e) d[e] += t.h;
      rec(i + 1);
      for (Int e = s; e < s + t.w; ++e) d[e] -= t.h;
    }
  };
  rec(0);
  return std::max<Int>(best, 0);
}

std::set<Int> subset_sums(const std::vector<Int>& widths, int max_terms) {
  std::set<Int> out;
  const size_t n = widths.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (max_terms >= 0 && __builtin_popcountll(mask) > max_terms) continue;
    Int s = 0;
    for (size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s += widths[i];
    }
    out.insert(s);
  }
  return out;
}

bool is_left_push_fixed_point(const Instance& instance,
                              const Schedule& schedule, Int pi,
                              const std::set<Int>& frozen) {
  for (const auto& [id, s] : schedule.starts) {
    if (s == 0 || frozen.count(id)) continue;
    Schedule moved = schedule;
    moved.starts[id] = s - 1;
    if (naive_peak(instance, moved) <= pi) return false;
  }
  return true;
}

Int brute_force_gap(const std::vector<Task>& tasks,
                    const std::vector<Container>& containers) {
  std::vector<Int> used(containers.size(), 0);
  Int best = 0;
  std::function<void(size_t, Int)> rec = [&](size_t i, Int area) {
    if (i == tasks.size()) {
      best = std::max(best, area);
      return;
    }
    rec(i + 1, area);
    for (size_t j = 0; j < containers.size(); ++j) {
      const Container& c = containers[j];
      const Task& t = tasks[i];
      const bool vertical = c.kind == ContainerKind::kVertical;
      if (t.w > c.width || t.h > c.height) continue;
      const Int size = vertical ? t.w : t.h;
      const Int cap = vertical ? c.width : c.height;
      if (used[j] + size > cap) continue;
      used[j] += size;
      rec(i + 1, area + t.w * t.h);
      used[j] -= size;
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace dsp::testing

namespace dsp::testing {
namespace {

bool AllZero(const std::vector<Rational>& a) {
  for (const Rational& v : a) {
    if (v != 0) return false;
  }
  return true;
}

}  // namespace

bool nonneg_system_feasible(std::vector<LinearConstraint> constraints,
                            int num_vars) {
  for (int j = 0; j < num_vars; ++j) {
    LinearConstraint c;
    c.a.assign(num_vars, 0);
    c.a[j] = -1;
    c.b = 0;
    constraints.push_back(c);
  }
  // Substitute equalities away.
  while (true) {
    size_t e = constraints.size();
    int piv = -1;
    for (size_t i = 0; i < constraints.size() && piv < 0; ++i) {
      if (!constraints[i].equality) continue;
      for (int j = 0; j < num_vars; ++j) {
        if (constraints[i].a[j] != 0) {
          e = i;
          piv = j;
          break;
        }
      }
      if (piv < 0 && constraints[i].b != 0) return false;
      if (piv < 0) constraints[i].equality = false;
    }
    if (piv < 0) break;
    const LinearConstraint eq = constraints[e];
    constraints.erase(constraints.begin() + e);
    for (LinearConstraint& c : constraints) {
      if (c.a[piv] == 0) continue;
      const Rational f = c.a[piv] / eq.a[piv];
      for (int j = 0; j < num_vars; ++j) c.a[j] -= f * eq.a[j];
      c.b -= f * eq.b;
    }
  }
  for (int j = 0; j < num_vars; ++j) {
    std::vector<LinearConstraint> pos, neg, next;
    for (LinearConstraint& c : constraints) {
      if (c.a[j] > 0) {
        pos.push_back(c);
      } else if (c.a[j] < 0) {
        neg.push_back(c);
      } else {
        next.push_back(c);
      }
    }
    for (const LinearConstraint& p : pos) {
      for (const LinearConstraint& q : neg) {
        LinearConstraint c;
        c.a.resize(num_vars);
        const Rational fp = -q.a[j];
        const Rational fq = p.a[j];
        for (int k = 0; k < num_vars; ++k) c.a[k] = fp * p.a[k] + fq * q.a[k];
        c.b = fp * p.b + fq * q.b;
        c.a[j] = 0;
        if (AllZero(c.a)) {
          if (c.b < 0) return false;
          continue;
        }
        next.push_back(std::move(c));
      }
    }
    // Drop exact duplicates after scaling by the first nonzero coefficient.
    std::set<std::vector<Rational>> seen;
    constraints.clear();
    for (LinearConstraint& c : next) {
      Rational s = 0;
      for (const Rational& v : c.a) {
        if (v != 0) {
          s = v < 0 ? -v : v;
          break;
        }
      }
      if (s == 0) {
        if (c.b < 0) return false;
        continue;
      }
      std::vector<Rational> key;
      for (Rational& v : c.a) key.push_back(v /= s);
      c.b /= s;
      key.push_back(c.b);
      if (seen.insert(key).second) constraints.push_back(std::move(c));
    }
  }
  for (const LinearConstraint& c : constraints) {
    if (c.b < 0) return false;
  }
  return true;
}

Schedule flat_layer_schedule(const Instance& instance) {
  Schedule s;
  Int offset = 0;
  for (const Task& t : instance.tasks()) {
    s.starts[t.id] = offset;
    offset += t.w;
    if (offset == instance.W()) offset = 0;
  }
  return s;
}

}  // namespace dsp::testing

namespace dsp::testing {

bool packing_is_valid(const std::vector<Task>& rects,
                      const GeomPlacement& placement) {
  for (const Task& r : rects) {
    auto it = placement.pos.find(r.id);
    if (it == placement.pos.end()) return false;
    const auto [x, y] = it->second;
    if (x < 0 || y < 0 || x + r.w > placement.box_w ||
        y + r.h > placement.box_h) {
      return false;
    }
  }
  for (size_t i = 0; i < rects.size(); ++i) {
    for (size_t j = i + 1; j < rects.size(); ++j) {
      const Task& a = rects[i];
      const Task& b = rects[j];
      if (a.w * a.h == 0 || b.w * b.h == 0) continue;
      const auto [ax, ay] = placement.pos.at(a.id);
      const auto [bx, by] = placement.pos.at(b.id);
      if (ax < bx + b.w && bx < ax + a.w && ay < by + b.h && by < ay + a.h) {
        return false;
      }
    }
  }
  return true;
}

namespace {

bool Split(const std::vector<Int>& A, size_t i, Int left_count, Int diff) {
  if (i == A.size()) return left_count == 0 && diff == 0;
  const Int right_count =
      static_cast<Int>(A.size() - i) - left_count;
  if (left_count > 0 && Split(A, i + 1, left_count - 1, diff + A[i])) {
    return true;
  }
  return right_count > 0 && Split(A, i + 1, left_count, diff - A[i]);
}

}  // namespace

bool balanced_partition_exists(const std::vector<Int>& A) {
  if (A.size() % 2 != 0) return false;
  return Split(A, 0, static_cast<Int>(A.size()) / 2, 0);
}

}  // namespace dsp::testing
