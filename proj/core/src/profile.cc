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

#include "dsp/profile.h"

#include <algorithm>
#include <limits>

namespace dsp {

DemandProfile::DemandProfile(Int W) : W_(W), runs_{{0, 0}} {}

DemandProfile DemandProfile::FromRuns(Int W, std::vector<Run> runs) {
  DemandProfile p(W);
  if (!runs.empty()) {
    p.runs_ = std::move(runs);
    p.canonicalize();
  }
  return p;
}

DemandProfile DemandProfile::FromDense(const std::vector<Int>& demand) {
  DemandProfile p(std::max<Int>(1, demand.size()));
  if (demand.empty()) return p;
  p.runs_.clear();
  for (size_t e = 0; e < demand.size(); ++e) {
    p.runs_.push_back({static_cast<Int>(e), demand[e]});
  }
  p.canonicalize();
  return p;
}

void DemandProfile::canonicalize() {
  std::vector<Run> out;
  for (const Run& r : runs_) {
    if (r.start >= W_) break;
    if (!out.empty() && out.back().start == r.start) {
      out.back().demand = r.demand;
    } else {
      out.push_back(r);
    }
    if (out.size() >= 2 && out[out.size() - 2].demand == out.back().demand) {
      out.pop_back();
    }
  }
  if (out.empty() || out.front().start != 0) {
    out.insert(out.begin(), Run{0, 0});
    if (out.size() >= 2 && out[1].demand == 0) out.erase(out.begin() + 1);
  }
  runs_ = std::move(out);
}

size_t DemandProfile::run_index(Int edge) const {
  auto it = std::upper_bound(
      runs_.begin(), runs_.end(), edge,
      [](Int e, const Run& r) { return e < r.start; });
  return static_cast<size_t>(it - runs_.begin()) - 1;
}

Int DemandProfile::max_over(Int start, Int width) const {
  Int best = std::numeric_limits<Int>::min();
  for (size_t i = run_index(start); i < runs_.size(); ++i) {
    if (runs_[i].start >= start + width) break;
    best = std::max(best, runs_[i].demand);
  }
  return best;
}

Int DemandProfile::min_over(Int start, Int width) const {
  Int best = std::numeric_limits<Int>::max();
  for (size_t i = run_index(start); i < runs_.size(); ++i) {
    if (runs_[i].start >= start + width) break;
    best = std::min(best, runs_[i].demand);
  }
  return best;
}

Int DemandProfile::peak() const {
  Int best = 0;
  for (const Run& r : runs_) best = std::max(best, r.demand);
  return best;
}

void DemandProfile::add(Int start, Int width, Int delta) {
  if (width <= 0 || delta == 0) return;
  const Int end = std::min(W_, start + width);
  start = std::max<Int>(0, start);
  std::vector<Run> out;
  out.reserve(runs_.size() + 2);
  for (size_t i = 0; i < runs_.size(); ++i) {
    const Int a = runs_[i].start;
    const Int b = run_end(i);
    const Int d = runs_[i].demand;
    if (b <= start || a >= end) {
      out.push_back(runs_[i]);
      continue;
    }
    if (a < start) out.push_back({a, d});
    out.push_back({std::max(a, start), d + delta});
    if (b > end) out.push_back({end, d});
  }
  runs_ = std::move(out);
  canonicalize();
}

void DemandProfile::add(const DemandProfile& other) {
  for (size_t i = 0; i < other.runs_.size(); ++i) {
    add(other.runs_[i].start, other.run_end(i) - other.runs_[i].start,
        other.runs_[i].demand);
  }
}

std::vector<Int> DemandProfile::dense() const {
  std::vector<Int> out(W_);
  for (size_t i = 0; i < runs_.size(); ++i) {
    for (Int e = runs_[i].start; e < run_end(i); ++e) out[e] = runs_[i].demand;
  }
  return out;
}

DemandProfile build_profile(const Instance& instance,
                            const Schedule& schedule) {
  std::vector<std::pair<Int, Int>> events;
  for (const auto& [id, start] : schedule.starts) {
    const Task& t = instance.task(id);
    if (t.h == 0) continue;
    events.emplace_back(start, t.h);
    if (start + t.w < instance.W()) events.emplace_back(start + t.w, -t.h);
  }
  std::sort(events.begin(), events.end());
  std::vector<Run> runs{{0, 0}};
  Int demand = 0;
  for (size_t i = 0; i < events.size();) {
    const Int edge = events[i].first;
    for (; i < events.size() && events[i].first == edge; ++i) {
      demand += events[i].second;
    }
    runs.push_back({edge, demand});
  }
  return DemandProfile::FromRuns(instance.W(), std::move(runs));
}

Int peak(const DemandProfile& profile) { return profile.peak(); }

Schedule left_push(const Instance& instance, const Schedule& schedule,
                   Int pi_prime, const std::set<Int>& frozen) {
  DemandProfile profile = build_profile(instance, schedule);
  if (profile.peak() > pi_prime) {
    throw PreconditionError("left_push: input peak " +
                            std::to_string(profile.peak()) + " exceeds pi' " +
                            std::to_string(pi_prime));
  }
  Schedule out = schedule;
  bool moved = true;
  while (moved) {
    moved = false;
    std::vector<std::pair<Int, Int>> order;  // (start, id)
    for (const auto& [id, start] : out.starts) order.emplace_back(start, id);
    std::sort(order.begin(), order.end());
    for (const auto& [unused, id] : order) {
      if (frozen.count(id)) continue;
      const Task& t = instance.task(id);
      const Int s = out.starts[id];
      if (s == 0) continue;
      // Edges left of s are not covered by the task; walk runs leftwards
      // while the task still fits on top of them.
      Int target = s;
      for (size_t i = profile.run_index(s - 1);; --i) {
        if (profile.runs()[i].demand + t.h > pi_prime) break;
        target = profile.runs()[i].start;
        if (i == 0) break;
      }
      if (target == s) continue;
      profile.add(s, t.w, -t.h);
      profile.add(target, t.w, t.h);
      out.starts[id] = target;
      moved = true;
    }
  }
  return out;
}

namespace {

Int witness_t_star(const DemandProfile& profile) {
  const std::vector<Run>& runs = profile.runs();
  size_t j = runs.size() - 1;
  while (j > 0 && runs[j - 1].demand >= runs[j].demand) --j;
  return runs[j].start;
}

}  // namespace

SortednessWitness sortedness_witness(const DemandProfile& profile) {
  SortednessWitness w;
  w.t_star = witness_t_star(profile);
  w.Q = w.t_star == 0 ? 0 : profile.min_over(0, w.t_star);
  return w;
}

SortednessWitness sortedness_witness(const DemandProfile& profile,
                                     Int pi_prime, Int h_cap) {
  SortednessWitness w;
  w.t_star = witness_t_star(profile);
  w.Q = std::max<Int>(0, pi_prime - h_cap);
  if (w.t_star > 0) w.Q = std::min(w.Q, profile.min_over(0, w.t_star));
  return w;
}

bool is_non_increasing(const DemandProfile& profile) {
  return witness_t_star(profile) == 0;
}

}  // namespace dsp
