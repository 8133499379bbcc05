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

#include "dsp/gap.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>

namespace dsp {

bool fits(const Task& task, const Container& container) {
  if (container.kind == ContainerKind::kVertical) {
    return task.h <= container.height && task.w <= container.width;
  }
  return task.w <= container.width && task.h <= container.height;
}

Int capacity_size(const Task& task, const Container& container) {
  return container.kind == ContainerKind::kVertical ? task.w : task.h;
}

Int capacity(const Container& container) {
  return container.kind == ContainerKind::kVertical ? container.width
                                                    : container.height;
}

std::vector<std::string> packing_violations(const Instance& instance,
                                            const ContainerPacking& packing) {
  std::vector<std::string> errors;
  std::map<Int, const Container*> by_id;
  for (const Container& c : packing.containers) {
    if (!by_id.emplace(c.id, &c).second) {
      errors.push_back("duplicate container " + std::to_string(c.id));
    }
    if (c.width < 1 || c.width > instance.W() || c.height < 0) {
      errors.push_back("container " + std::to_string(c.id) +
                       ": bad dimensions");
    }
  }
  for (const auto& [cid, start] : packing.container_schedule) {
    auto it = by_id.find(cid);
    if (it == by_id.end()) {
      errors.push_back("scheduled unknown container " + std::to_string(cid));
    } else if (start < 0 || start + it->second->width > instance.W()) {
      errors.push_back("container " + std::to_string(cid) + " out of bounds");
    }
  }
  std::map<Int, Int> load;
  for (const auto& [tid, cid] : packing.assignment) {
    if (!instance.contains(tid)) {
      errors.push_back("unknown task " + std::to_string(tid));
      continue;
    }
    auto it = by_id.find(cid);
    if (it == by_id.end()) {
      errors.push_back("task " + std::to_string(tid) +
                       " assigned to unknown container");
      continue;
    }
    const Task& t = instance.task(tid);
    if (!fits(t, *it->second)) {
      errors.push_back("task " + std::to_string(tid) + " does not fit container " +
                       std::to_string(cid));
    }
    load[cid] += capacity_size(t, *it->second);
  }
  for (const auto& [cid, used] : load) {
    if (used > capacity(*by_id.at(cid))) {
      errors.push_back("container " + std::to_string(cid) + " over capacity");
    }
    if (!packing.container_schedule.count(cid)) {
      errors.push_back("container " + std::to_string(cid) +
                       " holds tasks but is unscheduled");
    }
  }
  for (Int id : packing.leftovers) {
    if (packing.assignment.count(id)) {
      errors.push_back("task " + std::to_string(id) +
                       " is both assigned and a leftover");
    }
  }
  return errors;
}

DemandProfile container_profile(Int W, const ContainerPacking& packing) {
  DemandProfile profile(W);
  for (const Container& c : packing.containers) {
    auto it = packing.container_schedule.find(c.id);
    if (it != packing.container_schedule.end() && c.height > 0) {
      profile.add(it->second, c.width, c.height);
    }
  }
  return profile;
}

Schedule induced_schedule(const Instance& instance,
                          const ContainerPacking& packing) {
  std::map<Int, const Container*> by_id;
  for (const Container& c : packing.containers) by_id[c.id] = &c;
  std::map<Int, Int> cursor;
  Schedule out;
  for (const auto& [tid, cid] : packing.assignment) {
    const Int start = packing.container_schedule.at(cid);
    if (by_id.at(cid)->kind == ContainerKind::kHorizontal) {
      out.starts[tid] = start;
    } else {
      Int& offset = cursor[cid];
      out.starts[tid] = start + offset;
      offset += instance.task(tid).w;
    }
  }
  return out;
}

void check_packing(const Instance& instance, const ContainerPacking& packing) {
  const std::vector<std::string> errors =
      packing_violations(instance, packing);
  if (!errors.empty()) {
    throw DefectError("invalid container packing: " + errors.front());
  }
  const DemandProfile cap = container_profile(instance.W(), packing);
  const DemandProfile tasks =
      build_profile(instance, induced_schedule(instance, packing));
  const std::vector<Int> a = tasks.dense();
  const std::vector<Int> b = cap.dense();
  for (size_t e = 0; e < a.size(); ++e) {
    if (a[e] > b[e]) {
      throw DefectError("induced task profile exceeds container profile at " +
                        std::to_string(e));
    }
  }
}

namespace {

constexpr std::uint8_t kSkip = 255;

struct DpItem {
  Int id;
  Int profit;
  std::vector<Int> size;  // per bin; -1 when the task does not fit
};

// Maximizes total profit with per-bin capacities; returns bin per item or -1.
std::vector<int> SolveDp(const std::vector<DpItem>& items,
                         const std::vector<Int>& caps) {
  const size_t k = caps.size();
  std::vector<std::int64_t> stride(k);
  std::int64_t states = 1;
  for (size_t j = 0; j < k; ++j) {
    stride[j] = states;
    states *= caps[j] + 1;
  }
  std::vector<Int> best(states, -1);
  best[0] = 0;
  std::vector<std::vector<std::uint8_t>> choice(
      items.size(), std::vector<std::uint8_t>(states, kSkip));
  std::vector<Int> next;
  for (size_t i = 0; i < items.size(); ++i) {
    next = best;
    for (std::int64_t s = 0; s < states; ++s) {
      if (best[s] < 0) continue;
      for (size_t j = 0; j < k; ++j) {
        const Int size = items[i].size[j];
        if (size < 0) continue;
        const Int used = s / stride[j] % (caps[j] + 1);
        if (used + size > caps[j]) continue;
        const std::int64_t t = s + size * stride[j];
        if (best[s] + items[i].profit > next[t]) {
          next[t] = best[s] + items[i].profit;
          choice[i][t] = static_cast<std::uint8_t>(j);
        }
      }
    }
    best.swap(next);
  }
  std::int64_t s = std::max_element(best.begin(), best.end()) - best.begin();
  std::vector<int> bin(items.size(), -1);
  for (size_t i = items.size(); i-- > 0;) {
    const std::uint8_t j = choice[i][s];
    if (j == kSkip) continue;
    bin[i] = j;
    s -= items[i].size[j] * stride[j];
  }
  return bin;
}

}  // namespace

GapResult gap_pack(const std::vector<Task>& tasks,
                   const std::vector<Container>& containers,
                   const Rational& eps_prime, std::int64_t state_limit) {
  if (eps_prime <= 0 || eps_prime >= 1) {
    throw PreconditionError("gap_pack: eps_prime must lie in (0, 1)");
  }
  if (containers.size() >= kSkip) {
    throw PreconditionError("gap_pack: too many containers");
  }
  const size_t k = containers.size();
  std::vector<DpItem> items;
  std::vector<Int> caps(k, 0);
  GapResult result;
  for (const Task& t : tasks) {
    DpItem item{t.id, t.area(), std::vector<Int>(k, -1)};
    bool any = false;
    for (size_t j = 0; j < k; ++j) {
      if (!fits(t, containers[j])) continue;
      const Int size = capacity_size(t, containers[j]);
      if (size > capacity(containers[j])) continue;
      item.size[j] = size;
      caps[j] = std::min(capacity(containers[j]), caps[j] + size);
      any = true;
    }
    if (any) {
      items.push_back(std::move(item));
    } else {
      result.leftovers.push_back(t.id);
    }
  }
  double log_states = 0;
  for (Int c : caps) log_states += std::log(static_cast<double>(c) + 1);
  const double log_limit = std::log(static_cast<double>(state_limit));
  const double log_table =
      log_states + std::log(std::max<double>(1, items.size()));
  result.exact = log_states <= log_limit && log_table <= log_limit + std::log(8.0);
  std::vector<Int> units(k, 1);
  std::vector<Int> dp_caps = caps;
  std::vector<DpItem> dp_items = items;
  if (!result.exact) {
    // Coarse grid: per-bin resolution so the tuple space fits the limit.
    const double per_bin =
        std::exp((log_limit - std::log(std::max<double>(1, items.size())) +
                  std::log(8.0)) /
                 std::max<size_t>(1, k));
    const Int resolution = std::max<Int>(1, static_cast<Int>(per_bin) - 1);
    for (size_t j = 0; j < k; ++j) {
      units[j] = std::max<Int>(1, (caps[j] + resolution - 1) / resolution);
      dp_caps[j] = caps[j] / units[j];
    }
    for (DpItem& item : dp_items) {
      for (size_t j = 0; j < k; ++j) {
        if (item.size[j] < 0) continue;
        item.size[j] = (item.size[j] + units[j] - 1) / units[j];
        if (item.size[j] > dp_caps[j]) item.size[j] = -1;
      }
    }
  }
  const std::vector<int> bin = SolveDp(dp_items, dp_caps);
  std::vector<Int> used(k, 0);
  std::vector<size_t> unplaced;
  for (size_t i = 0; i < items.size(); ++i) {
    if (bin[i] < 0) {
      unplaced.push_back(i);
      continue;
    }
    result.assignment[items[i].id] = containers[bin[i]].id;
    used[bin[i]] += items[i].size[bin[i]];
    result.assigned_area += items[i].profit;
  }
  if (!result.exact) {
    // Rounding wastes room; first-fit the rest by decreasing area.
    std::stable_sort(unplaced.begin(), unplaced.end(), [&](size_t a, size_t b) {
      return items[a].profit > items[b].profit;
    });
    std::vector<size_t> still;
    for (size_t i : unplaced) {
      bool placed = false;
      for (size_t j = 0; j < k && !placed; ++j) {
        const Int size = items[i].size[j];
        if (size >= 0 && used[j] + size <= capacity(containers[j])) {
          used[j] += size;
          result.assignment[items[i].id] = containers[j].id;
          result.assigned_area += items[i].profit;
          placed = true;
        }
      }
      if (!placed) still.push_back(i);
    }
    unplaced = std::move(still);
  }
  for (size_t i : unplaced) result.leftovers.push_back(items[i].id);
  std::sort(result.leftovers.begin(), result.leftovers.end());
  return result;
}

}  // namespace dsp
