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

#include "dsp/containers.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>

#include "dsp/bounds.h"

namespace dsp {
namespace {

constexpr Int kMaxK = 10'000;

Int CeilDiv(const Rational& r) {
  using boost::multiprecision::cpp_int;
  const cpp_int n = numerator(r);
  const cpp_int d = denominator(r);
  cpp_int q = n / d;
  if (q * d != n && n > 0) ++q;
  return static_cast<Int>(q);
}

Int FloorDiv(const Rational& r) {
  using boost::multiprecision::cpp_int;
  const cpp_int n = numerator(r);
  const cpp_int d = denominator(r);
  cpp_int q = n / d;
  if (q * d != n && n < 0) --q;
  return static_cast<Int>(q);
}

Rational Binomial(Int n, Int k) {
  Rational r = 1;
  for (Int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Int> SortedByHeightDesc(const Instance& instance,
                                    std::vector<Int> ids) {
  std::sort(ids.begin(), ids.end(), [&](Int a, Int b) {
    const Int ha = instance.task(a).h;
    const Int hb = instance.task(b).h;
    return ha != hb ? ha > hb : a < b;
  });
  return ids;
}

Int TotalHeight(const Instance& instance, const std::vector<Int>& ids) {
  Int sum = 0;
  for (Int id : ids) sum = checked_add(sum, instance.task(id).h);
  return sum;
}

// Unit-height slices sharing width and start.
struct Bundle {
  Int width;
  Int start;
  Int count;
};

}  // namespace

Rational five_thirds_eps_max() { return Rational(1, 3); }

ContainerConstant container_constant(const Rational& eps) {
  if (eps <= 0 || eps >= 1) {
    throw PreconditionError("container_constant: eps must lie in (0, 1)");
  }
  const Int widths = CeilDiv(1 / (eps * eps));
  const Int terms = FloorDiv(1 / eps);
  const Rational jumps = 1 / eps + 1 + 2 / (eps * eps);
  ContainerConstant c;
  c.uncapped = Rational(widths) * jumps * Binomial(widths + terms, terms);
  c.capped = c.uncapped > kMaxK;
  c.K = c.capped ? kMaxK : std::max<Int>(1, CeilDiv(c.uncapped));
  return c;
}

DeltaMu choose_delta_mu(const Instance& instance, const Rational& eps,
                        Int opt_guess) {
  if (eps <= 0 || eps >= 1) {
    throw PreconditionError("choose_delta_mu: eps must lie in (0, 1)");
  }
  const Int K = container_constant(eps).K;
  const Int candidates = CeilDiv(2 / (eps * eps));
  const Rational budget = eps * eps * opt_guess * instance.W();
  const Rational wide = eps * instance.W();
  DeltaMu best;
  bool have_best = false;
  Rational y = eps;
  for (Int j = 0; j < candidates; ++j) {
    const Rational mu = y / K;
    Int area = 0;
    for (const Task& t : instance.tasks()) {
      if (Rational(t.w) > wide && Rational(t.h) > mu * opt_guess &&
          Rational(t.h) <= y * opt_guess) {
        area = checked_add(area, t.area());
      }
    }
    if (Rational(area) <= budget) return {y, mu, K, area, false};
    if (!have_best || area < best.medium_area) {
      best = {y, mu, K, area, true};
      have_best = true;
    }
    y = mu;
  }
  return best;
}

Classification classify_tasks(const Instance& instance, const Rational& eps,
                              const Rational& mu, const Rational& delta,
                              Int opt_guess, Int K) {
  if (!(mu < delta && delta <= eps)) {
    throw PreconditionError("classify_tasks: need mu < delta <= eps");
  }
  Classification c;
  c.eps = eps;
  c.mu = mu;
  c.delta = delta;
  c.opt_guess = opt_guess;
  c.K = K;
  const Rational wide = eps * instance.W();
  for (const Task& t : instance.tasks()) {
    if (t.h > opt_guess) {
      throw CertifiedFailure("opt_guess infeasible: task " +
                             std::to_string(t.id) + " is taller than " +
                             std::to_string(opt_guess));
    }
    if (3 * t.h > 2 * opt_guess) {
      c.tall.push_back(t.id);
    } else if (Rational(t.w) <= wide) {
      c.narrow.push_back(t.id);
    } else if (Rational(t.h) > delta * opt_guess) {
      c.large.push_back(t.id);
    } else if (Rational(t.h) > mu * opt_guess) {
      c.medium.push_back(t.id);
    } else {
      c.horizontal.push_back(t.id);
    }
  }
  return c;
}

Schedule restructure_tall(const Instance& instance, const Schedule& schedule,
                          const std::vector<Int>& tall) {
  const Int W = instance.W();
  validate_schedule(instance, schedule, true);
  // block[e]: index into `blocks` of the tall task covering e, or -1.
  std::vector<int> block(W, -1);
  std::vector<Int> blocks;
  for (Int id : tall) {
    const Task& t = instance.task(id);
    const Int s = schedule.start(id);
    for (Int e = s; e < s + t.w; ++e) {
      if (block[e] >= 0) {
        throw CertifiedFailure("restructure_tall: tall paths overlap on edge " +
                               std::to_string(e));
      }
      block[e] = static_cast<int>(blocks.size());
    }
    blocks.push_back(id);
  }
  std::vector<Int> mountain_before(W + 1, 0);
  for (Int e = 0; e < W; ++e) {
    mountain_before[e + 1] = mountain_before[e] + (block[e] < 0 ? 1 : 0);
  }
  const std::vector<Int> order = SortedByHeightDesc(instance, tall);
  std::map<Int, Int> new_pos;
  Int cursor = 0;
  for (Int id : order) {
    new_pos[id] = cursor;
    cursor += instance.task(id).w;
  }
  const Int tall_width = cursor;
  const std::set<Int> tall_set(tall.begin(), tall.end());
  Schedule out;
  for (const Task& t : instance.tasks()) {
    const Int s = schedule.start(t.id);
    if (tall_set.count(t.id)) {
      out.starts[t.id] = new_pos[t.id];
      continue;
    }
    const Int mountain = mountain_before[s + t.w] - mountain_before[s];
    if (mountain == t.w) {
      out.starts[t.id] = tall_width + mountain_before[s];
      continue;
    }
    const int b = t.w > 0 ? block[s] : -1;
    if (mountain == 0 && b >= 0 && block[s + t.w - 1] == b) {
      const Int owner = blocks[b];
      out.starts[t.id] = new_pos[owner] + s - schedule.start(owner);
      continue;
    }
    out.starts[t.id] = s;  // crossing
  }
  return out;
}

ContainerPacking build_tall_large_containers(const Instance& instance,
                                             const Schedule& structured,
                                             const Classification& cls) {
  const Rational level_unit = cls.eps * cls.opt_guess;
  ContainerPacking packing;
  Int next_id = 1;
  Int cursor = 0;
  Int current_level = -1;
  for (Int id : SortedByHeightDesc(instance, cls.tall)) {
    const Task& t = instance.task(id);
    if (!structured.contains(id) || structured.start(id) != cursor) {
      throw PreconditionError(
          "build_tall_large_containers: tall tasks are not a sorted prefix");
    }
    const Int level = CeilDiv(Rational(t.h) / level_unit);
    if (level != current_level) {
      packing.containers.push_back({next_id, ContainerKind::kVertical, 0,
                                    FloorDiv(level * level_unit)});
      packing.container_schedule[next_id] = cursor;
      ++next_id;
      current_level = level;
    }
    packing.containers.back().width += t.w;
    packing.assignment[id] = packing.containers.back().id;
    cursor += t.w;
  }
  if (Rational(cls.large.size()) * cls.eps * cls.delta > 1) {
    throw CertifiedFailure("more than 1/(eps*delta) large tasks");
  }
  for (Int id : cls.large) {
    const Task& t = instance.task(id);
    packing.containers.push_back({next_id, ContainerKind::kVertical, t.w, t.h});
    packing.container_schedule[next_id] =
        structured.contains(id) ? structured.start(id) : 0;
    packing.assignment[id] = next_id;
    ++next_id;
  }
  return packing;
}

namespace {

// Linear grouping of the pile of horizontal slices. Group 0 is dropped; a
// slice in group j >= 1 takes the smallest width of group j - 1 and is
// matched with the slice one group below it.
struct Pile {
  Int group_height = 1;
  std::vector<Int> order;           // tasks by (width desc, id)
  std::vector<Int> offset;          // pile position of each task's first slice
  std::vector<Int> removed;         // tasks with a slice in group 0
  std::vector<Int> rounded_width;   // per group, index 0 unused
  Int total = 0;
};

Pile BuildPile(const Instance& instance, const Classification& cls) {
  Pile pile;
  pile.group_height = std::max<Int>(1, FloorDiv(cls.eps * cls.opt_guess));
  pile.order = cls.horizontal;
  std::sort(pile.order.begin(), pile.order.end(), [&](Int a, Int b) {
    const Int wa = instance.task(a).w;
    const Int wb = instance.task(b).w;
    return wa != wb ? wa > wb : a < b;
  });
  for (Int id : pile.order) {
    pile.offset.push_back(pile.total);
    if (pile.total < pile.group_height && instance.task(id).h > 0) {
      pile.removed.push_back(id);
    }
    pile.total += instance.task(id).h;
  }
  const Int groups = (pile.total + pile.group_height - 1) / pile.group_height;
  pile.rounded_width.assign(std::max<Int>(1, groups), 0);
  // Smallest width in group j-1 is the width of its last slice.
  size_t k = 0;
  for (Int j = 1; j < groups; ++j) {
    const Int last = j * pile.group_height - 1;
    while (pile.offset[k] + instance.task(pile.order[k]).h <= last) ++k;
    pile.rounded_width[j] = instance.task(pile.order[k]).w;
  }
  return pile;
}

Int RoundContainerHeight(Int count, const Classification& cls) {
  const Rational unit = cls.eps * cls.opt_guess / cls.K;
  return FloorDiv(CeilDiv(Rational(count) / unit) * unit);
}

void AddExtraContainer(const Instance& instance, const Classification& cls,
                       HorizontalContainers* hc, Int id) {
  hc->extra_id = id;
  const Int height = FloorDiv(3 * cls.eps * cls.opt_guess);
  hc->packing.containers.push_back(
      {id, ContainerKind::kHorizontal, instance.W(), height});
  hc->packing.container_schedule[id] = 0;
  Int used = 0;
  for (Int tid : hc->removed) {
    const Int h = instance.task(tid).h;
    if (used + h <= height) {
      used += h;
      hc->packing.assignment[tid] = id;
    } else {
      hc->packing.leftovers.push_back(tid);
    }
  }
}

}  // namespace

HorizontalContainers build_horizontal_containers(const Instance& instance,
                                                 const Schedule& reference,
                                                 const DemandProfile& D,
                                                 const Classification& cls,
                                                 Int first_id) {
  const Int W = instance.W();
  std::vector<Int> cap = D.dense();
  std::vector<Int> cur(W, 0);
  for (Int id : cls.horizontal) {
    const Task& t = instance.task(id);
    for (Int e = reference.start(id); e < reference.start(id) + t.w; ++e) {
      cur[e] += t.h;
    }
  }
  for (Int e = 0; e < W; ++e) {
    if (cur[e] > cap[e]) {
      throw CertifiedFailure(
          "build_horizontal_containers: reference profile exceeds D at " +
          std::to_string(e));
    }
  }
  HorizontalContainers hc;
  const Pile pile = BuildPile(instance, cls);
  hc.group_height = pile.group_height;
  hc.removed = pile.removed;
  const std::set<Int> removed(pile.removed.begin(), pile.removed.end());

  // Rounded slices, each placed on the start of its matched original slice.
  std::map<std::pair<Int, Int>, Int> placed;  // (start, width) -> count
  size_t owner = 0;
  for (size_t k = 0; k < pile.order.size(); ++k) {
    const Task& t = instance.task(pile.order[k]);
    if (removed.count(t.id)) continue;
    for (Int p = pile.offset[k]; p < pile.offset[k] + t.h; ++p) {
      const Int below = p - pile.group_height;
      while (pile.offset[owner] + instance.task(pile.order[owner]).h <= below) {
        ++owner;
      }
      const Int width = pile.rounded_width[p / pile.group_height];
      ++placed[{reference.start(pile.order[owner]), width}];
    }
  }
  std::vector<Bundle> bundles;
  std::fill(cur.begin(), cur.end(), 0);
  for (const auto& [key, count] : placed) {
    bundles.push_back({key.second, key.first, count});
    for (Int e = key.first; e < key.first + key.second; ++e) cur[e] += count;
  }

  // Left-shift slices while the profile stays under D.
  bool moved = true;
  while (moved) {
    moved = false;
    std::sort(bundles.begin(), bundles.end(), [](const Bundle& a,
                                                 const Bundle& b) {
      return a.start != b.start ? a.start < b.start : a.width > b.width;
    });
    std::vector<Bundle> next;
    for (Bundle b : bundles) {
      while (b.count > 0 && b.start > 0) {
        const Int room = cap[b.start - 1] - cur[b.start - 1];
        if (room <= 0) break;
        const Int m = std::min(room, b.count);
        cur[b.start - 1] += m;
        cur[b.start + b.width - 1] -= m;
        if (m < b.count) next.push_back({b.width, b.start, b.count - m});
        b.count = m;
        --b.start;
        moved = true;
      }
      next.push_back(b);
    }
    bundles = std::move(next);
  }
  std::map<std::pair<Int, Int>, Int> merged;  // (width, start) -> count
  for (const Bundle& b : bundles) {
    if (b.count > 0) merged[{b.width, b.start}] += b.count;
  }

  // One container per (start, width); repack tasks width class by class.
  Int next_id = first_id;
  std::map<Int, std::vector<std::pair<Int, Int>>> by_width;  // id, capacity
  for (const auto& [key, count] : merged) {
    hc.packing.containers.push_back(
        {next_id, ContainerKind::kHorizontal, key.first,
         RoundContainerHeight(count, cls)});
    hc.packing.container_schedule[next_id] = key.second;
    by_width[key.first].push_back({next_id, count});
    ++next_id;
  }
  std::map<Int, size_t> cursor;
  std::map<Int, Int> room;
  for (size_t k = 0; k < pile.order.size(); ++k) {
    const Task& t = instance.task(pile.order[k]);
    if (removed.count(t.id) || t.h == 0) {
      if (t.h == 0 && !removed.count(t.id)) hc.removed.push_back(t.id);
      continue;
    }
    std::set<Int> used;
    for (Int p = pile.offset[k]; p < pile.offset[k] + t.h; ++p) {
      const Int width = pile.rounded_width[p / pile.group_height];
      auto& list = by_width[width];
      size_t& c = cursor[width];
      if (!room.count(list[c].first)) room[list[c].first] = list[c].second;
      if (room[list[c].first] == 0) {
        ++c;
        room[list[c].first] = list[c].second;
      }
      --room[list[c].first];
      used.insert(list[c].first);
    }
    if (used.size() == 1) {
      hc.packing.assignment[t.id] = *used.begin();
    } else {
      hc.removed.push_back(t.id);
    }
  }
  AddExtraContainer(instance, cls, &hc, next_id);
  return hc;
}

namespace {

Int TargetPeak(const Classification& cls) {
  return FloorDiv((Rational(5, 3) + 7 * cls.eps) * cls.opt_guess);
}

// Enumerate mode: containers from the classification alone, scheduled by
// brute force over subset sums of container widths.
bool EnumerateContainers(const Instance& instance, const Classification& cls,
                         const FiveThirdsOptions& options,
                         ContainerPacking* tall_large,
                         HorizontalContainers* hc,
                         std::vector<std::string>* trace) {
  const Int W = instance.W();
  Schedule synthetic;
  Int cursor = 0;
  for (Int id : SortedByHeightDesc(instance, cls.tall)) {
    synthetic.starts[id] = cursor;
    cursor += instance.task(id).w;
  }
  if (cursor > W) throw CertifiedFailure("tall tasks wider than W");
  *tall_large = build_tall_large_containers(instance, synthetic, cls);
  const Int first_h = static_cast<Int>(tall_large->containers.size()) + 1;

  *hc = HorizontalContainers{};
  const Pile pile = BuildPile(instance, cls);
  hc->group_height = pile.group_height;
  hc->removed = pile.removed;
  const std::set<Int> removed(pile.removed.begin(), pile.removed.end());
  std::map<Int, Int> per_width;
  for (size_t k = 0; k < pile.order.size(); ++k) {
    const Task& t = instance.task(pile.order[k]);
    if (removed.count(t.id)) continue;
    for (Int p = pile.offset[k]; p < pile.offset[k] + t.h; ++p) {
      ++per_width[pile.rounded_width[p / pile.group_height]];
    }
  }
  Int next_id = first_h;
  for (const auto& [width, count] : per_width) {
    hc->packing.containers.push_back({next_id++, ContainerKind::kHorizontal,
                                      width, RoundContainerHeight(count, cls)});
  }
  AddExtraContainer(instance, cls, hc, next_id);

  // Free containers: large and horizontal ones narrower than W.
  std::vector<Container*> free;
  std::vector<Int> widths;
  Int base = FloorDiv(cls.eps * cls.opt_guess) * 2;  // medium + leftovers
  for (const Container& c : tall_large->containers) widths.push_back(c.width);
  for (Int id : cls.large) {
    Container& c = tall_large->containers[tall_large->assignment.at(id) - 1];
    free.push_back(&c);
  }
  for (Container& c : hc->packing.containers) {
    if (c.width >= W) {
      base += c.height;
    } else {
      widths.push_back(c.width);
      free.push_back(&c);
    }
  }
  std::vector<char> sums(W + 1, 0);
  sums[0] = 1;
  for (Int w : widths) {
    for (Int s = W; s >= w; --s) sums[s] |= sums[s - w];
  }
  std::vector<std::vector<Int>> starts;
  double product = 1;
  for (const Container* c : free) {
    std::vector<Int> cand;
    for (Int s = 0; s + c->width <= W; ++s) {
      if (sums[s]) cand.push_back(s);
    }
    product *= static_cast<double>(cand.size());
    starts.push_back(std::move(cand));
  }
  if (product > static_cast<double>(options.enumerate_limit)) {
    if (trace) trace->push_back("enumerate: search space too large");
    return false;
  }
  const Int target = TargetPeak(cls) - base;
  std::vector<Int> profile(W, 0);
  for (const Container& c : tall_large->containers) {
    auto it = tall_large->container_schedule.find(c.id);
    if (it == tall_large->container_schedule.end() ||
        std::find_if(free.begin(), free.end(), [&](const Container* f) {
          return f == &c;
        }) != free.end()) {
      continue;
    }
    for (Int e = it->second; e < it->second + c.width; ++e) {
      profile[e] += c.height;
    }
  }
  if (target < 0 ||
      *std::max_element(profile.begin(), profile.end()) > target) {
    throw CertifiedFailure("enumerate: fixed containers exceed the target");
  }
  std::vector<size_t> order(free.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return Int(free[a]->height) * free[a]->width >
           Int(free[b]->height) * free[b]->width;
  });
  std::vector<Int> chosen(free.size(), 0);
  std::function<bool(size_t)> dfs = [&](size_t k) -> bool {
    if (k == order.size()) return true;
    const Container& c = *free[order[k]];
    for (Int s : starts[order[k]]) {
      bool ok = true;
      for (Int e = s; e < s + c.width && ok; ++e) {
        ok = profile[e] + c.height <= target;
      }
      if (!ok) continue;
      for (Int e = s; e < s + c.width; ++e) profile[e] += c.height;
      chosen[order[k]] = s;
      if (dfs(k + 1)) return true;
      for (Int e = s; e < s + c.width; ++e) profile[e] -= c.height;
    }
    return false;
  };
  if (!dfs(0)) {
    throw CertifiedFailure("enumerate: no container schedule within target");
  }
  for (size_t k = 0; k < free.size(); ++k) {
    const Int id = free[k]->id;
    if (id < first_h) {
      tall_large->container_schedule[id] = chosen[k];
    } else {
      hc->packing.container_schedule[id] = chosen[k];
    }
  }
  return true;
}

}  // namespace

Schedule schedule_non_narrow(const Instance& instance,
                             const Classification& cls,
                             const Schedule& reference,
                             const FiveThirdsOptions& options,
                             std::vector<std::string>* trace) {
  const Int W = instance.W();
  const Int g = cls.opt_guess;
  ContainerPacking tall_large;
  HorizontalContainers hc;
  bool enumerated = false;
  if (options.mode == FiveThirdsMode::kEnumerate) {
    enumerated =
        EnumerateContainers(instance, cls, options, &tall_large, &hc, trace);
  }
  if (!enumerated) {
    const Schedule structured = restructure_tall(instance, reference, cls.tall);
    tall_large = build_tall_large_containers(instance, structured, cls);
    const Int cap = FloorDiv((Rational(5, 3) + cls.eps) * g);
    std::vector<Int> d(W, cap);
    const std::vector<Int> used = container_profile(W, tall_large).dense();
    for (Int e = 0; e < W; ++e) {
      d[e] -= used[e];
      if (d[e] < 0) {
        throw CertifiedFailure(
            "tall and large containers exceed (5/3+eps)*opt_guess");
      }
    }
    Schedule h_reference;
    for (Int id : cls.horizontal) {
      h_reference.starts[id] = structured.start(id);
    }
    hc = build_horizontal_containers(
        instance, h_reference, DemandProfile::FromDense(d), cls,
        static_cast<Int>(tall_large.containers.size()) + 1);
  }

  ContainerPacking all = tall_large;
  for (const Container& c : hc.packing.containers) all.containers.push_back(c);
  for (const auto& [cid, s] : hc.packing.container_schedule) {
    all.container_schedule[cid] = s;
  }
  Int next_id = static_cast<Int>(all.containers.size()) + 1;
  const Int thin = FloorDiv(cls.eps * g);
  const Int medium_id = next_id++;
  const Int spill_id = next_id++;
  all.containers.push_back({medium_id, ContainerKind::kHorizontal, W, thin});
  all.containers.push_back({spill_id, ContainerKind::kHorizontal, W, thin});
  all.container_schedule[medium_id] = 0;
  all.container_schedule[spill_id] = 0;

  if (TotalHeight(instance, cls.medium) > thin) {
    throw CertifiedFailure("medium tasks exceed the eps*opt_guess container");
  }
  for (Int id : cls.medium) all.assignment[id] = medium_id;

  std::vector<Task> horizontal;
  for (Int id : cls.horizontal) horizontal.push_back(instance.task(id));
  const GapResult gap =
      gap_pack(horizontal, hc.packing.containers, cls.eps * cls.eps);
  std::map<Int, Int> h_assignment = gap.assignment;
  std::vector<Int> spill = gap.leftovers;
  if (!gap.exact) {
    Int repack_area = 0;
    for (const auto& [tid, unused] : hc.packing.assignment) {
      repack_area += instance.task(tid).area();
    }
    if (repack_area > gap.assigned_area) {
      h_assignment = hc.packing.assignment;
      spill = hc.packing.leftovers;
    }
  }
  if (trace) {
    trace->push_back("g=" + std::to_string(g) + ": " +
                     std::to_string(hc.packing.containers.size()) +
                     " horizontal containers, " + std::to_string(spill.size()) +
                     " spilled");
  }
  if (TotalHeight(instance, spill) > thin) {
    throw CertifiedFailure("horizontal leftovers exceed eps*opt_guess");
  }
  for (const auto& [tid, cid] : h_assignment) all.assignment[tid] = cid;
  for (Int id : spill) all.assignment[id] = spill_id;

  check_packing(instance, all);
  const Int target = TargetPeak(cls);
  const Int peak = container_profile(W, all).peak();
  if (peak > target) {
    throw CertifiedFailure("container schedule peak " + std::to_string(peak) +
                           " exceeds floor((5/3+7eps)*opt_guess) = " +
                           std::to_string(target));
  }
  return induced_schedule(instance, all);
}

Solution five_thirds(const Instance& instance,
                     const FiveThirdsOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const Rational& eps = options.eps;
  if (eps <= 0 || eps > five_thirds_eps_max()) {
    throw PreconditionError("five_thirds: eps must lie in (0, 1/3]");
  }
  std::vector<Int> positive;
  Schedule flat;
  for (const Task& t : instance.tasks()) {
    if (t.h == 0) {
      flat.starts[t.id] = 0;
    } else {
      positive.push_back(t.id);
    }
  }
  const Instance core = restrict_instance(instance, positive);
  Solution sol;
  sol.report.algorithm = "five-thirds";
  sol.report.lower_bound = lower_bound(instance).value;
  sol.report.params["eps"] = rational_to_string(eps);
  sol.report.params["mode"] =
      options.mode == FiveThirdsMode::kGuided ? "guided" : "enumerate";
  const ContainerConstant kc = container_constant(eps);
  sol.report.params["K"] = std::to_string(kc.K);
  if (kc.capped) {
    sol.report.trace.push_back("K capped at " + std::to_string(kc.K) +
                               " (bound " +
                               std::to_string(to_double(kc.uncapped)) + ")");
  }

  Schedule best = flat;
  std::string source = "empty";
  if (!core.empty()) {
    const Solution base = two_approx(core);
    const Int lb = lower_bound(core).value;
    Schedule reference = base.schedule;
    if (options.mode == FiveThirdsMode::kGuided) {
      const ExactDspResult ref = exact_dsp(core, options.reference_budget);
      reference = ref.schedule;
      sol.report.trace.push_back(
          "reference peak " + std::to_string(ref.peak) +
          (ref.proven_optimal ? " (optimal)" : " (best found)"));
    }
    std::vector<Int> guesses;
    Rational r = lb;
    while (true) {
      const Int g = std::min(CeilDiv(r), 2 * lb);
      if (guesses.empty() || g > guesses.back()) guesses.push_back(g);
      if (g >= 2 * lb) break;
      r *= 1 + eps;
    }
    std::optional<Schedule> found;
    for (Int g : guesses) {
      try {
        const DeltaMu dm = choose_delta_mu(core, eps, g);
        const Classification cls =
            classify_tasks(core, eps, dm.mu, dm.delta, g, dm.K);
        const Schedule partial = schedule_non_narrow(
            core, cls, reference, options, &sol.report.trace);
        const Int pi = TargetPeak(cls);
        const Schedule pushed = left_push(
            core, partial, pi, std::set<Int>(cls.tall.begin(), cls.tall.end()));
        const Schedule full =
            qt_fill(core, pushed, cls.narrow, 7 * eps, g, pi);
        const Int peak = validate_schedule(core, full, true);
        sol.report.trace.push_back("g=" + std::to_string(g) + ": peak " +
                                   std::to_string(peak) + " <= pi " +
                                   std::to_string(pi));
        sol.report.params["opt_guess"] = std::to_string(g);
        sol.report.params["pi"] = std::to_string(pi);
        sol.report.params["delta"] = rational_to_string(dm.delta);
        if (dm.flagged) {
          sol.report.trace.push_back("g=" + std::to_string(g) +
                                     ": no delta met the medium-area bound");
        }
        found = full;
        break;
      } catch (const CertifiedFailure& e) {
        sol.report.trace.push_back("g=" + std::to_string(g) + ": " + e.what());
      } catch (const PreconditionError& e) {
        sol.report.trace.push_back("g=" + std::to_string(g) + ": " + e.what());
      }
    }
    if (found && validate_schedule(core, *found, true) <= 2 * lb) {
      source = "pipeline";
    } else {
      found = base.schedule;
      source = "two-approx-fallback";
    }
    for (const auto& [id, s] : found->starts) best.starts[id] = s;
  }
  sol.schedule = std::move(best);
  sol.report.params["source"] = source;
  sol.report.peak = validate_schedule(instance, sol.schedule, true);
  sol.report.set_ratio();
  sol.report.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  return sol;
}

}  // namespace dsp
