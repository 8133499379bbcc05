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

#include "dsp/exact.h"

#include <algorithm>
#include <chrono>
#include <map>

#include "dsp/baseline.h"
#include "dsp/bounds.h"

namespace dsp {
namespace {

using Clock = std::chrono::steady_clock;

struct Abort {};

struct TaskType {
  Int w = 0;
  Int h = 0;
  std::vector<Int> ids;
};

// Groups tasks by (w, h), largest area first; zero-height tasks are skipped.
std::vector<TaskType> group_types(const std::vector<Task>& tasks) {
  std::map<std::pair<Int, Int>, std::vector<Int>> by_shape;
  for (const Task& t : tasks) {
    if (t.h == 0) continue;
    by_shape[{t.w, t.h}].push_back(t.id);
  }
  std::vector<TaskType> types;
  for (auto& [shape, ids] : by_shape) {
    types.push_back({shape.first, shape.second, ids});
  }
  std::sort(types.begin(), types.end(),
            [](const TaskType& a, const TaskType& b) {
              if (a.w * a.h != b.w * b.h) return a.w * a.h > b.w * b.h;
              if (a.h != b.h) return a.h > b.h;
              return a.w > b.w;
            });
  return types;
}

class Ticker {
 public:
  explicit Ticker(const OracleBudget& budget)
      : budget_(budget),
        deadline_(Clock::now() +
                  std::chrono::duration_cast<Clock::duration>(
                      std::chrono::duration<double>(budget.time_limit_s))) {}

  void tick() {
    ++nodes_;
    if (nodes_ > budget_.node_limit) throw Abort{};
    if ((nodes_ & 4095) == 0 && Clock::now() > deadline_) throw Abort{};
  }
  std::int64_t nodes() const { return nodes_; }

 private:
  const OracleBudget& budget_;
  Clock::time_point deadline_;
  std::int64_t nodes_ = 0;
};

// Decides whether the grouped tasks fit under peak T.
class DspProbe {
 public:
  DspProbe(const std::vector<TaskType>& types, Int W, Int T, Ticker& ticker)
      : types_(types),
        W_(W),
        T_(T),
        ticker_(ticker),
        demand_(W, 0),
        events_(W + 1, 0),
        rem_(types.size()) {
    for (size_t k = 0; k < types.size(); ++k) {
      rem_[k] = static_cast<Int>(types[k].ids.size());
      rem_area_ += rem_[k] * types[k].w * types[k].h;
      rem_count_ += rem_[k];
    }
  }

  bool Run() {
    if (rem_count_ == 0) return true;
    return Choose(0, 0);
  }

  // Start edge per task, valid after Run() returned true.
  Schedule Extract() const {
    Schedule s;
    std::vector<size_t> used(types_.size(), 0);
    for (const auto& [k, start] : stack_) {
      s.starts[types_[k].ids[used[k]++]] = start;
    }
    return s;
  }

 private:
  bool Choose(Int e, size_t k) {
    if (k == types_.size()) return Advance(e);
    const TaskType& t = types_[k];
    if (rem_[k] == 0 || e + t.w > W_) return Choose(e, k + 1);
    Int top = 0;
    for (Int x = e; x < e + t.w; ++x) top = std::max(top, demand_[x]);
    const Int c_max = std::min(rem_[k], (T_ - top) / t.h);
    for (Int c = c_max; c >= 1; --c) {
      Apply(k, e, c);
      if (Choose(e, k + 1)) return true;
      Apply(k, e, -c);
    }
    return Choose(e, k + 1);
  }

  void Apply(size_t k, Int e, Int c) {
    const TaskType& t = types_[k];
    for (Int x = e; x < e + t.w; ++x) demand_[x] += c * t.h;
    events_[e + t.w] += c;
    rem_[k] -= c;
    rem_count_ -= c;
    rem_area_ -= c * t.w * t.h;
    if (c > 0) {
      for (Int i = 0; i < c; ++i) stack_.emplace_back(k, e);
    } else {
      stack_.resize(stack_.size() + c);
    }
  }

  bool Advance(Int e) {
    if (rem_count_ == 0) return true;
    ticker_.tick();
    Int next = e + 1;
    while (next < W_ && events_[next] == 0) ++next;
    if (next >= W_) return false;
    for (size_t k = 0; k < types_.size(); ++k) {
      if (rem_[k] > 0 && next + types_[k].w > W_) return false;
    }
    Int room = 0;
    for (Int x = next; x < W_; ++x) room += T_ - demand_[x];
    if (room < rem_area_) return false;
    return Choose(next, 0);
  }

  const std::vector<TaskType>& types_;
  Int W_;
  Int T_;
  Ticker& ticker_;
  std::vector<Int> demand_;
  std::vector<Int> events_;
  std::vector<Int> rem_;
  Int rem_area_ = 0;
  Int rem_count_ = 0;
  std::vector<std::pair<size_t, Int>> stack_;
};

// Fills a box cell by cell; see gsp_pack_box.
class GspProbe {
 public:
  GspProbe(const std::vector<TaskType>& types, Int W, Int H, Ticker& ticker)
      : types_(types),
        W_(W),
        H_(H),
        ticker_(ticker),
        grid_(W * H, 0),
        rem_(types.size()) {
    Int area = 0;
    for (size_t k = 0; k < types.size(); ++k) {
      rem_[k] = static_cast<Int>(types[k].ids.size());
      rem_count_ += rem_[k];
      area += rem_[k] * types[k].w * types[k].h;
    }
    waste_ = W * H - area;
  }

  bool Run() {
    if (rem_count_ == 0) return true;
    if (waste_ < 0) return false;
    return Fill(0);
  }

  std::map<Int, std::pair<Int, Int>> Extract() const {
    std::map<Int, std::pair<Int, Int>> pos;
    std::vector<size_t> used(types_.size(), 0);
    for (const auto& [k, cell] : stack_) {
      pos[types_[k].ids[used[k]++]] = {cell % W_, cell / W_};
    }
    return pos;
  }

 private:
  bool Fill(Int cell) {
    if (rem_count_ == 0) return true;
    ticker_.tick();
    while (cell < W_ * H_ && grid_[cell]) ++cell;
    if (cell >= W_ * H_) return false;
    const Int x = cell % W_;
    const Int y = cell / W_;
    Int run = 0;
    while (x + run < W_ && !grid_[cell + run]) ++run;
    Int w_min = W_ + 1;
    for (size_t k = 0; k < types_.size(); ++k) {
      if (rem_[k] == 0) continue;
      w_min = std::min(w_min, types_[k].w);
      const TaskType& t = types_[k];
      if (t.w > run || y + t.h > H_ || !Free(x, y, t.w, t.h)) continue;
      Mark(x, y, t.w, t.h, 1);
      --rem_[k];
      --rem_count_;
      stack_.emplace_back(k, cell);
      if (Fill(cell + t.w)) return true;
      stack_.pop_back();
      ++rem_[k];
      ++rem_count_;
      Mark(x, y, t.w, t.h, 0);
    }
    // Waste: the whole run when nothing can start inside it, else one cell.
    const Int waste = w_min > run ? run : 1;
    if (waste_ < waste) return false;
    waste_ -= waste;
    Mark(x, y, waste, 1, 2);
    const bool ok = Fill(cell + waste);
    Mark(x, y, waste, 1, 0);
    waste_ += waste;
    return ok;
  }

  bool Free(Int x, Int y, Int w, Int h) const {
    for (Int r = y + 1; r < y + h; ++r) {
      for (Int c = x; c < x + w; ++c) {
        if (grid_[r * W_ + c]) return false;
      }
    }
    return true;
  }

  void Mark(Int x, Int y, Int w, Int h, char v) {
    for (Int r = y; r < y + h; ++r) {
      for (Int c = x; c < x + w; ++c) grid_[r * W_ + c] = v;
    }
  }

  const std::vector<TaskType>& types_;
  Int W_;
  Int H_;
  Ticker& ticker_;
  std::vector<char> grid_;
  std::vector<Int> rem_;
  Int rem_count_ = 0;
  Int waste_ = 0;
  std::vector<std::pair<size_t, Int>> stack_;
};

}  // namespace

ExactDspResult exact_dsp(const Instance& instance, const OracleBudget& budget) {
  ExactDspResult result;
  const LowerBound lb = lower_bound(instance);
  Solution incumbent = two_approx(instance);
  result.peak = incumbent.report.peak;
  result.schedule = incumbent.schedule;
  result.lower_bound = lb.value;
  if (result.peak == lb.value) {
    result.proven_optimal = true;
    return result;
  }
  if (instance.size() > budget.max_n || instance.W() > budget.max_W) {
    return result;
  }
  Schedule zero_height;
  for (const Task& t : instance.tasks()) {
    if (t.h == 0) zero_height.starts[t.id] = 0;
  }
  const std::vector<TaskType> types = group_types(instance.tasks());
  Ticker ticker(budget);
  Int lo = lb.value;
  Int hi = result.peak;  // feasible
  try {
    bool first = true;
    while (lo < hi) {
      const Int mid = first ? lo : lo + (hi - lo) / 2;
      first = false;
      DspProbe probe(types, instance.W(), mid, ticker);
      if (probe.Run()) {
        Schedule s = probe.Extract();
        s.starts.insert(zero_height.starts.begin(), zero_height.starts.end());
        hi = validate_schedule(instance, s, true);
        result.schedule = std::move(s);
      } else {
        lo = mid + 1;
      }
    }
  } catch (const Abort&) {
  }
  result.peak = hi;
  result.lower_bound = lo;
  result.proven_optimal = lo == hi;
  result.nodes = ticker.nodes();
  return result;
}

bool gsp_pack_box(const std::vector<Task>& rects, Int box_w, Int box_h,
                  const OracleBudget& budget, GeomPlacement* out,
                  bool* aborted, std::int64_t* nodes) {
  *aborted = false;
  out->box_w = box_w;
  out->box_h = box_h;
  out->pos.clear();
  for (const Task& r : rects) {
    if (r.w > box_w || r.h > box_h) return false;
  }
  const std::vector<TaskType> types = group_types(rects);
  Ticker ticker(budget);
  bool ok = false;
  try {
    GspProbe probe(types, box_w, box_h, ticker);
    ok = probe.Run();
    if (ok) out->pos = probe.Extract();
  } catch (const Abort&) {
    *aborted = true;
  }
  if (nodes) *nodes = ticker.nodes();
  if (!ok) return false;
  for (const Task& r : rects) {
    if (r.h == 0) out->pos[r.id] = {0, 0};
  }
  return true;
}

ExactGspResult exact_gsp(const Instance& instance, const OracleBudget& budget) {
  ExactGspResult result;
  const std::vector<Task>& rects = instance.tasks();
  const Int W = instance.W();
  // Fallback incumbent: everything stacked at x = 0.
  result.placement.box_w = W;
  Int y = 0;
  for (const Task& r : rects) {
    result.placement.pos[r.id] = {0, y};
    y += r.h;
  }
  result.peak = y;
  result.placement.box_h = y;
  Int H = lower_bound(instance).value;
  result.lower_bound = H;
  if (instance.size() > budget.max_n || W > budget.max_W) return result;
  const auto deadline = Clock::now() +
                        std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(budget.time_limit_s));
  for (; H < result.peak; ++H) {
    OracleBudget probe_budget = budget;
    probe_budget.time_limit_s =
        std::chrono::duration<double>(deadline - Clock::now()).count();
    probe_budget.node_limit = budget.node_limit - result.nodes;
    if (probe_budget.time_limit_s <= 0 || probe_budget.node_limit <= 0) break;
    GeomPlacement placement;
    bool aborted = false;
    std::int64_t nodes = 0;
    const bool ok =
        gsp_pack_box(rects, W, H, probe_budget, &placement, &aborted, &nodes);
    result.nodes += nodes;
    if (aborted) break;
    if (ok) {
      result.peak = H;
      result.placement = std::move(placement);
      break;
    }
    result.lower_bound = H + 1;
  }
  result.lower_bound = std::min(result.lower_bound, result.peak);
  result.proven_optimal = result.lower_bound == result.peak;
  return result;
}

}  // namespace dsp
