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

#include "dsp/square.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <tuple>

#include "dsp/bounds.h"
#include "dsp/containers.h"
#include "dsp/steinberg.h"

namespace dsp {
namespace {

bool Above(Int value, const Rational& factor, Int scale) {
  return Rational(value) > factor * scale;
}

Int IntermediateArea(const Instance& instance, const Rational& mu,
                     const Rational& delta, Int g) {
  Int area = 0;
  for (Int id : classify_bands(instance, mu, delta, g).intermediate) {
    area = checked_add(area, instance.task(id).area());
  }
  return area;
}

Schedule Restrict(const Schedule& s, const std::vector<Int>& ids) {
  Schedule out;
  for (Int id : ids) out.starts[id] = s.start(id);
  return out;
}

std::vector<Int> SortedBySize(const Instance& instance) {
  std::vector<Int> order;
  for (const Task& t : instance.tasks()) order.push_back(t.id);
  std::sort(order.begin(), order.end(), [&](Int a, Int b) {
    const Task& x = instance.task(a);
    const Task& y = instance.task(b);
    return std::tie(y.h, y.w, x.id) < std::tie(x.h, x.w, y.id);
  });
  return order;
}

// Largest i with the first i widths summing below W.
size_t PrefixBelow(const Instance& instance, const std::vector<Int>& order) {
  Int sum = 0;
  size_t i = 0;
  while (i < order.size() && sum + instance.task(order[i]).w < instance.W()) {
    sum += instance.task(order[i]).w;
    ++i;
  }
  return i;
}

// Count of tasks with h > 0.49 g (a prefix of the sorted order).
size_t TallPrefix(const Instance& instance, const std::vector<Int>& order,
                  Int g) {
  size_t i = 0;
  while (i < order.size() && 100 * instance.task(order[i]).h > 49 * g) ++i;
  return i;
}

}  // namespace

BandClassification classify_bands(const Instance& instance, const Rational& mu,
                                  const Rational& delta, Int opt_guess) {
  if (!(0 < mu && mu < delta)) {
    throw PreconditionError("bands: need 0 < mu < delta");
  }
  BandClassification c;
  c.mu = mu;
  c.delta = delta;
  c.opt_guess = opt_guess;
  const Int W = instance.W();
  for (const Task& t : instance.tasks()) {
    const bool h_big = Above(t.h, delta, opt_guess);
    const bool h_small = !Above(t.h, mu, opt_guess);
    const bool w_big = Above(t.w, delta, W);
    const bool w_small = !Above(t.w, mu, W);
    if (h_big && w_big) {
      c.big.push_back(t.id);
    } else if (h_small && w_big) {
      c.wide.push_back(t.id);
    } else if (h_big && w_small) {
      c.long_tasks.push_back(t.id);
    } else if (h_small && w_small) {
      c.tiny.push_back(t.id);
    } else {
      c.intermediate.push_back(t.id);
    }
  }
  return c;
}

BandParams choose_band_params(const Instance& instance, const Rational& eps,
                              Int opt_guess) {
  if (eps <= 0 || eps >= 1) {
    throw PreconditionError("bands: eps must lie in (0, 1)");
  }
  const Rational limit = eps * eps * instance.W() * opt_guess;
  BandParams best;
  bool have = false;
  Rational y = eps;
  while (true) {
    const Rational mu = y * eps / 4;
    const Int area = IntermediateArea(instance, mu, y, opt_guess);
    if (!have || area < best.intermediate_area) {
      best = {mu, y, area, true};
      have = true;
    }
    if (Rational(area) <= limit) {
      best = {mu, y, area, false};
      return best;
    }
    // Below one unit in both dimensions the band is empty.
    if (y * instance.W() < 1 && y * opt_guess < 1) return best;
    y = mu;
  }
}

DemandProfile discretize_profile(const DemandProfile& demand,
                                 const Rational& eps, const Rational& delta,
                                 Int opt_guess) {
  const Int W = demand.W();
  const Int t = floor_mul(eps, opt_guess);
  std::set<Int> restarts;
  if (delta * W <= 1) {
    std::vector<Run> runs = demand.runs();
    for (Run& r : runs) r.demand += t;
    return DemandProfile::FromRuns(W, runs);
  }
  for (Int k = 0;; ++k) {
    const Int e = ceil_mul(delta * k, W);
    if (e >= W) break;
    restarts.insert(e);
  }
  std::set<Int> points = restarts;
  for (const Run& r : demand.runs()) points.insert(r.start);
  std::vector<Run> out;
  Int level = 0;
  for (Int p : points) {
    const Int d = demand.at(p);
    if (out.empty() || restarts.count(p) > 0 || d > level + t ||
        d < level - t) {
      level = d;
      out.push_back({p, level + t});
    }
  }
  return DemandProfile::FromRuns(W, out);
}

Int jump_count(const DemandProfile& profile) {
  return static_cast<Int>(profile.runs().size()) - 1;
}

LongGrouping group_long_slices(const Instance& instance,
                               const std::vector<SliceBox>& boxes,
                               const std::map<Int, std::vector<Int>>& slices,
                               const std::vector<Int>& long_ids,
                               const Rational& eps, const Rational& delta,
                               const Rational& mu, Int opt_guess,
                               Int first_container_id) {
  LongGrouping out;
  out.height_unit = std::max<Int>(1, floor_mul(delta * delta, opt_guess));
  out.width_unit = std::max<Int>(1, floor_mul(mu / eps, instance.W()));
  const Int u = out.height_unit;
  auto rounded = [&](Int h) { return (h + u - 1) / u * u; };

  struct Placed {
    Container c;
    Int x;
  };
  std::vector<Placed> made;
  Int next_id = first_container_id;
  for (const SliceBox& box : boxes) {
    std::map<std::vector<Int>, Int, std::greater<>> configs;
    for (Int e = box.x; e < box.x + box.w; ++e) {
      auto it = slices.find(e);
      if (it == slices.end() || it->second.empty()) continue;
      std::vector<Int> config;
      for (Int id : it->second) config.push_back(rounded(instance.task(id).h));
      std::sort(config.rbegin(), config.rend());
      ++configs[config];
    }
    Int offset = box.x;
    for (const auto& [config, count] : configs) {
      const Int width = count / out.width_unit * out.width_unit;
      if (width == 0) continue;
      for (Int h : config) {
        made.push_back({{next_id++, ContainerKind::kVertical, width, h}, offset});
      }
      offset += width;
    }
  }
  std::stable_sort(made.begin(), made.end(), [](const Placed& a,
                                                const Placed& b) {
    return a.c.height > b.c.height;
  });
  for (const Placed& p : made) {
    out.packing.containers.push_back(p.c);
    out.packing.container_schedule[p.c.id] = p.x;
  }

  std::vector<Int> order = long_ids;
  std::sort(order.begin(), order.end(), [&](Int a, Int b) {
    const Int ra = rounded(instance.task(a).h);
    const Int rb = rounded(instance.task(b).h);
    return ra != rb ? ra > rb : a < b;
  });
  // Pour slices column by column; containers are consumed in height order.
  size_t c = 0;
  Int used = 0;
  for (Int id : order) {
    const Task& t = instance.task(id);
    while (c < made.size() && used == made[c].c.width) {
      ++c;
      used = 0;
    }
    bool placed = false;
    if (c < made.size() && used + t.w <= made[c].c.width &&
        t.h <= made[c].c.height) {
      out.packing.assignment[id] = made[c].c.id;
      placed = true;
    }
    // Advance the column cursor by w across containers.
    Int left = t.w;
    while (left > 0 && c < made.size()) {
      const Int take = std::min(left, made[c].c.width - used);
      used += take;
      left -= take;
      if (used == made[c].c.width && left > 0) {
        ++c;
        used = 0;
      }
    }
    if (!placed) {
      out.packing.leftovers.push_back(id);
      out.discarded_area = checked_add(out.discarded_area, t.area());
    }
  }
  std::sort(out.packing.leftovers.begin(), out.packing.leftovers.end());
  out.within_bound = Rational(out.discarded_area) <=
                     eps * eps * instance.W() * opt_guess;
  return out;
}

std::vector<Int> fill_boxes(const Instance& instance,
                            const std::vector<FillBox>& boxes,
                            const std::vector<Int>& ids, Schedule* out) {
  std::vector<Int> remaining = ids;
  std::sort(remaining.begin(), remaining.end(), [&](Int a, Int b) {
    const Task& x = instance.task(a);
    const Task& y = instance.task(b);
    return std::tie(y.h, y.w, x.id) < std::tie(x.h, x.w, y.id);
  });
  for (const FillBox& box : boxes) {
    if (remaining.empty()) break;
    if (box.w <= 0 || box.h <= 0) continue;
    DemandProfile local(box.w);
    for (Int e = 0; e < box.w && !remaining.empty(); ++e) {
      std::vector<Int> kept;
      for (Int id : remaining) {
        const Task& t = instance.task(id);
        if (e + t.w <= box.w && local.max_over(e, t.w) + t.h <= box.h) {
          local.add(e, t.w, t.h);
          out->starts[id] = box.x + e;
        } else {
          kept.push_back(id);
        }
      }
      remaining.swap(kept);
    }
  }
  std::sort(remaining.begin(), remaining.end());
  return remaining;
}

PecResult bansal_pec(const Instance& instance, const Rational& eps,
                     const Schedule& reference, Int opt_guess) {
  if (eps <= 0 || eps >= 1) {
    throw PreconditionError("pec: eps must lie in (0, 1)");
  }
  const Int g = opt_guess;
  const Int ref_peak = validate_schedule(instance, reference, true);
  if (ref_peak > g) {
    throw CertifiedFailure("pec: reference peak " + std::to_string(ref_peak) +
                           " exceeds the guess " + std::to_string(g));
  }
  const Int W = instance.W();
  const Rational e = eps / 4;
  const BandParams bp = choose_band_params(instance, e, g);
  PecResult r;
  r.bands = classify_bands(instance, bp.mu, bp.delta, g);
  const BandClassification& b = r.bands;
  r.trace.push_back("delta " + rational_to_string(bp.delta) + ", mu " +
                    rational_to_string(bp.mu) + ", intermediate area " +
                    std::to_string(bp.intermediate_area) +
                    (bp.flagged ? " (above bound)" : ""));
  std::vector<Int> left = b.intermediate;

  // Wide and big tasks keep their reference starts.
  for (Int id : b.wide) r.partial.starts[id] = reference.start(id);
  for (Int id : b.big) r.partial.starts[id] = reference.start(id);
  const DemandProfile wide =
      build_profile(instance, Restrict(reference, b.wide));
  DemandProfile base = discretize_profile(wide, e, bp.delta, g);
  base.add(build_profile(instance, Restrict(reference, b.big)));
  const Int H = floor_mul(1 + 2 * e, g);

  std::vector<SliceBox> boxes;
  for (size_t i = 0; i < base.runs().size(); ++i) {
    const Run& run = base.runs()[i];
    if (run.demand >= H) continue;
    boxes.push_back({run.start, base.run_end(i) - run.start, run.demand,
                     H - run.demand});
  }
  std::map<Int, std::vector<Int>> slices;
  for (Int id : b.long_tasks) {
    const Int s = reference.start(id);
    for (Int x = s; x < s + instance.task(id).w; ++x) {
      slices[x].push_back(id);
    }
  }
  const LongGrouping lg = group_long_slices(instance, boxes, slices,
                                            b.long_tasks, e, bp.delta, bp.mu,
                                            g);
  if (!lg.within_bound) {
    r.trace.push_back("long discards " + std::to_string(lg.discarded_area) +
                      " above eps^2 W g");
  }
  for (const auto& [id, s] : induced_schedule(instance, lg.packing).starts) {
    r.partial.starts[id] = s;
  }
  left.insert(left.end(), lg.packing.leftovers.begin(),
              lg.packing.leftovers.end());

  // Tiny tasks go into the room left under H.
  std::vector<Int> placed_ids;
  for (Int id : b.wide) placed_ids.push_back(id);
  for (Int id : b.big) placed_ids.push_back(id);
  DemandProfile current =
      build_profile(instance, Restrict(r.partial, placed_ids));
  current.add(container_profile(W, lg.packing));
  std::vector<FillBox> room;
  for (size_t i = 0; i < current.runs().size(); ++i) {
    const Run& run = current.runs()[i];
    if (run.demand < H) {
      room.push_back(
          {run.start, current.run_end(i) - run.start, H - run.demand});
    }
  }
  const std::vector<Int> unplaced =
      fill_boxes(instance, room, b.tiny, &r.partial);
  left.insert(left.end(), unplaced.begin(), unplaced.end());

  std::sort(left.begin(), left.end());
  r.leftovers = left;
  for (Int id : left) {
    r.leftover_area = checked_add(r.leftover_area, instance.task(id).area());
  }
  r.peak = peak(build_profile(instance, r.partial));
  r.peak_bound = floor_mul(1 + eps, g);
  if (r.peak > r.peak_bound) {
    throw CertifiedFailure("pec: peak " + std::to_string(r.peak) +
                           " exceeds floor((1+eps)g) = " +
                           std::to_string(r.peak_bound));
  }
  return r;
}

Schedule square_case1_rows(const Instance& instance, Int opt_guess) {
  const std::vector<Int> order = SortedBySize(instance);
  const size_t i1 = TallPrefix(instance, order, opt_guess);
  const size_t i2 = PrefixBelow(instance, order);
  Int tall_width = 0;
  for (size_t i = 0; i < i1; ++i) tall_width += instance.task(order[i]).w;
  if (10 * tall_width <= 18 * instance.W()) {
    throw CertifiedFailure("case 1: tall tasks do not exceed 1.8 W");
  }
  if (i2 + 2 >= i1) {
    throw CertifiedFailure("case 1: i2 < i1 - 2 fails");
  }
  Schedule rows;
  Int x = 0;
  for (size_t i = 0; i < i2; ++i) {
    rows.starts[order[i]] = x;
    x += instance.task(order[i]).w;
  }
  // 1-based i2+2 .. i1-1 are 0-based i2+1 .. i1-2.
  x = instance.W();
  for (size_t i = i2 + 1; i + 1 < i1; ++i) {
    x -= instance.task(order[i]).w;
    if (x < 0) throw CertifiedFailure("case 1: second row overflows");
    rows.starts[order[i]] = x;
  }
  return rows;
}

Solution square_dsp(const Instance& instance, const SquareOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const Rational& beta = options.beta;
  if (beta < 1) throw PreconditionError("square: beta must be at least 1");
  std::vector<std::string> bad;
  for (const Task& t : instance.tasks()) {
    if (t.h > t.w || Rational(t.w) > beta * t.h) {
      bad.push_back(std::to_string(t.id));
    }
  }
  if (!bad.empty()) {
    std::string msg = "square: aspect ratio violated by task";
    for (const std::string& id : bad) msg += " " + id;
    throw PreconditionError(msg);
  }
  const Rational eps = options.eps > 0 ? options.eps : 1 / (6 * beta);
  Solution sol;
  sol.report.algorithm = "square";
  sol.report.lower_bound = lower_bound(instance).value;
  sol.report.params["beta"] = rational_to_string(beta);
  sol.report.params["eps"] = rational_to_string(eps);
  std::string branch = "empty";
  if (!instance.empty()) {
    const Int W = instance.W();
    const Int lb = lower_bound(instance).value;
    std::vector<Int> guesses = {lb};
    while (guesses.back() < 2 * lb) {
      const Int g = guesses.back();
      guesses.push_back(std::min(
          2 * lb, std::max(g + 1, ceil_mul(1 + options.grid, g))));
    }
    const std::vector<Int> order = SortedBySize(instance);
    std::optional<ExactDspResult> reference;
    std::optional<Schedule> found;
    bool reference_failed = false;
    for (Int g : guesses) {
      const std::string tag = "g=" + std::to_string(g) + ": ";
      try {
        if (beta * 100 * g >= W) {
          if (reference_failed) continue;
          if (!reference) {
            reference = exact_dsp(instance, options.reference_budget);
            if (!reference->proven_optimal) {
              reference_failed = true;
              sol.report.trace.push_back("reference not proven optimal");
              continue;
            }
          }
          if (g < reference->peak) continue;
          const PecResult pec =
              bansal_pec(instance, eps * eps / 100, reference->schedule, g);
          Schedule s = pec.partial;
          Int box_h = 0;
          if (!pec.leftovers.empty()) {
            std::vector<Task> rects;
            for (Int id : pec.leftovers) rects.push_back(instance.task(id));
            box_h = steinberg_min_height(rects, W);
            const GeomPlacement p = steinberg_pack(rects, W, box_h);
            for (const auto& [id, xy] : p.pos) s.starts[id] = xy.first;
          }
          const Int pk = validate_schedule(instance, s, true);
          if (2 * pk > 3 * g) {
            throw CertifiedFailure("small-W peak " + std::to_string(pk) +
                                   " exceeds 3g/2");
          }
          sol.report.trace.push_back(
              tag + "small-W branch, " +
              std::to_string(pec.leftovers.size()) + " leftovers in a box of "
              "height " + std::to_string(box_h));
          branch = "small-w";
          found = s;
        } else {
          const size_t i1 = TallPrefix(instance, order, g);
          const size_t i2 = PrefixBelow(instance, order);
          Int tall_width = 0;
          for (size_t i = 0; i < i1; ++i) {
            tall_width += instance.task(order[i]).w;
          }
          if (10 * tall_width > 18 * W) {
            Schedule s = square_case1_rows(instance, g);
            if (peak(build_profile(instance, s)) > g) {
              throw CertifiedFailure("case 1: rows exceed g");
            }
            std::vector<Task> rest;
            for (Int id : order) {
              if (!s.contains(id)) rest.push_back(instance.task(id));
            }
            const Int box_h = g / 2;
            if (!steinberg_violations(rest, W, box_h).empty()) {
              throw CertifiedFailure("case 1: rest fails the box condition");
            }
            const GeomPlacement p = steinberg_pack(rest, W, box_h);
            for (const auto& [id, xy] : p.pos) s.starts[id] = xy.first;
            branch = "case-1";
            sol.report.trace.push_back(tag + "case 1");
            found = s;
          } else {
            Schedule s;
            Int x = 0;
            for (size_t i = 0; i < i2; ++i) {
              s.starts[order[i]] = x;
              x += instance.task(order[i]).w;
            }
            x = 0;
            for (size_t i = i2; i < i1; ++i) {
              s.starts[order[i]] = x;
              x += instance.task(order[i]).w;
            }
            if (x > W) throw CertifiedFailure("case 2: second row overflows");
            std::vector<Int> rest;
            for (size_t i = std::max(i1, i2); i < order.size(); ++i) {
              rest.push_back(order[i]);
            }
            const Int h_next = i2 < order.size() ? instance.task(order[i2]).h
                                                 : 0;
            const Int pi = std::max(instance.task(order[0]).h + h_next,
                                    3 * g / 2);
            const Schedule full = nfd_fill(instance, s, rest, pi);
            if (validate_schedule(instance, full, true) > pi) {
              throw DefectError("case 2: sorted fill exceeded pi");
            }
            branch = "case-2";
            sol.report.params["pi"] = std::to_string(pi);
            sol.report.trace.push_back(tag + "case 2, pi " +
                                       std::to_string(pi));
            found = full;
          }
        }
        sol.report.params["opt_guess"] = std::to_string(g);
        break;
      } catch (const CertifiedFailure& e) {
        sol.report.trace.push_back(tag + e.what());
      } catch (const PreconditionError& e) {
        sol.report.trace.push_back(tag + e.what());
      }
    }
    if (!found) {
      FiveThirdsOptions fo;
      fo.reference_budget = options.reference_budget;
      const Solution fb = five_thirds(instance, fo);
      found = fb.schedule;
      branch = "five-thirds-fallback";
      sol.report.trace.push_back(
          "fell back to five_thirds; certified ratio 5/3 + eps only");
    }
    sol.schedule = *found;
  }
  sol.report.params["branch"] = branch;
  sol.report.peak = validate_schedule(instance, sol.schedule, true);
  sol.report.set_ratio();
  sol.report.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  return sol;
}

}  // namespace dsp
