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

#include "dsp/baseline.h"

#include <algorithm>
#include <chrono>

#include "dsp/bounds.h"
#include "dsp/profile.h"

namespace dsp {
namespace {

using Wide = __int128;

}  // namespace

Schedule nfd_fill(const Instance& instance, const Schedule& sorted_partial,
                  const std::vector<Int>& remaining, Int pi, NfdTrace* trace) {
  if (remaining.empty()) return sorted_partial;
  const Int W = instance.W();
  Int area = 0;
  for (const auto& [id, unused] : sorted_partial.starts) {
    area = checked_add(area, instance.task(id).area());
  }
  Int h2 = 0;
  Int w2 = 0;
  for (Int id : remaining) {
    if (sorted_partial.contains(id)) {
      throw PreconditionError("nfd_fill: task " + std::to_string(id) +
                              " is both scheduled and remaining");
    }
    const Task& t = instance.task(id);
    area = checked_add(area, t.area());
    h2 = std::max(h2, t.h);
    w2 = std::max(w2, t.w);
  }
  DemandProfile profile = build_profile(instance, sorted_partial);
  if (!is_non_increasing(profile)) {
    throw PreconditionError("nfd_fill: partial schedule is not sorted");
  }
  if (profile.peak() > pi) {
    throw PreconditionError("nfd_fill: partial peak exceeds pi");
  }
  // pi >= h''max + max(a/W, h''max), cross-multiplied by W.
  if (Wide(pi) * W < Wide(h2) * W + std::max<Wide>(area, Wide(h2) * W)) {
    throw PreconditionError(
        "nfd_fill: bullet 1 violated (pi >= h''max + max(a(I)/W, h''max))");
  }
  if (2 * w2 > W) {
    throw PreconditionError("nfd_fill: bullet 2 violated (w''max <= W/2)");
  }
  if (Wide(W - w2) * (pi - h2) + Wide(w2) * h2 < area) {
    throw PreconditionError(
        "nfd_fill: bullet 3 violated ((W-w''max)(pi-h''max) + "
        "w''max*h''max >= a(I))");
  }

  std::vector<const Task*> order;
  for (Int id : remaining) order.push_back(&instance.task(id));
  std::sort(order.begin(), order.end(), [](const Task* a, const Task* b) {
    if (a->h != b->h) return a->h > b->h;
    if (a->w != b->w) return a->w > b->w;
    return a->id < b->id;
  });

  Schedule out = sorted_partial;
  std::vector<char> placed(order.size(), 0);
  size_t left = order.size();
  Int e_check = 0;
  while (true) {
    if (trace) trace->frontier.push_back(e_check);
    for (size_t k = 0; k < order.size(); ++k) {
      if (placed[k]) continue;
      const Task& t = *order[k];
      if (e_check + t.w > W) continue;
      if (profile.max_over(e_check, t.w) + t.h > pi) continue;
      profile.add(e_check, t.w, t.h);
      out.starts[t.id] = e_check;
      placed[k] = 1;
      --left;
      if (trace) trace->placement_order.push_back(t.id);
    }
    if (left == 0) break;
    const size_t run = profile.run_index(e_check);
    const Int next = profile.run_end(run);
    if (next >= W) {
      for (size_t k = 0; k < order.size(); ++k) {
        if (!placed[k]) {
          throw DefectError("nfd_fill: task " + std::to_string(order[k]->id) +
                            " cannot be placed although all bullets hold");
        }
      }
    }
    e_check = next;
  }
  return out;
}

Schedule qt_fill(const Instance& instance, const Schedule& partial,
                 const std::vector<Int>& remaining, const Rational& alpha,
                 Int opt_guess, Int pi) {
  if (remaining.empty()) return partial;
  const Int W = instance.W();
  const DemandProfile profile = build_profile(instance, partial);
  const SortednessWitness witness = sortedness_witness(profile);
  const Rational q_needed = (1 + alpha) * opt_guess;
  if (witness.t_star > 0 && Rational(witness.Q) < q_needed) {
    throw PreconditionError(
        "qt_fill: partial is not ((1+alpha)*opt_guess, t*)-sorted (Q = " +
        std::to_string(witness.Q) + ")");
  }
  Int h2 = 0;
  Int w2 = 0;
  for (Int id : remaining) {
    h2 = std::max(h2, instance.task(id).h);
    w2 = std::max(w2, instance.task(id).w);
  }
  if (Rational(pi) < q_needed + h2) {
    throw PreconditionError(
        "qt_fill: pi >= (1+alpha)*opt_guess + h_max(remaining) violated");
  }
  if (Rational(w2) * 2 * (alpha + 1) > alpha * W) {
    throw PreconditionError(
        "qt_fill: w_max(remaining) <= alpha/(2(alpha+1))*W violated");
  }
  const Int t_star = witness.t_star;
  if (t_star >= W) {
    throw PreconditionError("qt_fill: no edges right of t*");
  }

  const Int w_tilde = W - t_star;
  if (w2 > w_tilde) {
    throw PreconditionError("qt_fill: a remaining task is wider than W - t*");
  }
  // Unit tasks carrying the demand right of t*, then the remaining tasks.
  Int next_id = instance.max_id() + 1;
  std::vector<Task> tasks;
  Schedule synthetic_partial;
  for (Int e = t_star; e < W; ++e) {
    tasks.push_back({next_id, 1, profile.at(e)});
    synthetic_partial.starts[next_id] = e - t_star;
    ++next_id;
  }
  for (Int id : remaining) tasks.push_back(instance.task(id));
  const Instance synthetic(w_tilde, std::move(tasks));
  const Schedule filled =
      nfd_fill(synthetic, synthetic_partial, remaining, pi);

  Schedule out = partial;
  for (Int id : remaining) out.starts[id] = filled.start(id) + t_star;
  if (validate_schedule(instance, out, false) > pi) {
    throw DefectError("qt_fill: result exceeds pi");
  }
  return out;
}

Solution two_approx(const Instance& instance) {
  const auto t0 = std::chrono::steady_clock::now();
  const LowerBound lb = lower_bound(instance);
  Schedule partial;
  std::vector<Int> rest;
  for (const Task& t : instance.tasks()) {
    if (2 * t.w > instance.W()) {
      partial.starts[t.id] = 0;
    } else {
      rest.push_back(t.id);
    }
  }
  Solution sol;
  try {
    sol.schedule = nfd_fill(instance, partial, rest, 2 * lb.value);
  } catch (const PreconditionError& e) {
    throw DefectError(std::string("two_approx: ") + e.what());
  }
  sol.report.algorithm = "two-approx";
  sol.report.peak = validate_schedule(instance, sol.schedule, true);
  sol.report.lower_bound = lb.value;
  sol.report.set_ratio();
  sol.report.params["pi"] = std::to_string(2 * lb.value);
  sol.report.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  return sol;
}

}  // namespace dsp
