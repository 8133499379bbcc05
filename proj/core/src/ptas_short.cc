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

#include "dsp/ptas_short.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <tuple>
#include <unordered_map>

#include "dsp/bounds.h"
#include "dsp/lp.h"
#include "dsp/profile.h"

namespace dsp {
namespace {

Int CeilRational(const Rational& r) {
  const Int n = static_cast<Int>(numerator(r));
  const Int d = static_cast<Int>(denominator(r));
  return n >= 0 ? (n + d - 1) / d : -((-n) / d);
}

// Uniform draw in [0, 1) with 53 random bits, exact as a rational.
Rational Uniform(std::mt19937_64& rng) {
  return Rational(static_cast<Int>(rng() >> 11), Int{1} << 53);
}

}  // namespace

Rational ptas_delta(const Rational& eps) {
  if (eps <= 0 || eps >= 1) {
    throw PreconditionError("ptas: eps must lie in (0, 1)");
  }
  const double e = to_double(eps);
  const double second = (1 + 4 * e) * (1 + 4 * e) / (54 * std::log(1 / e));
  const double d = std::min(e / 4, second);
  constexpr Int kScale = 1'000'000;
  const Rational rounded(static_cast<Int>(std::floor(d * kScale)), kScale);
  return std::min(rounded, Rational(eps) / 4);
}

std::vector<Int> horizontal_ids(const Instance& instance,
                                const Rational& delta_w) {
  std::vector<Int> ids;
  for (const Task& t : instance.tasks()) {
    if (Rational(t.w) > delta_w * instance.W()) ids.push_back(t.id);
  }
  return ids;
}

StartCandidates start_candidates(const std::vector<Int>& widths,
                                 Int term_limit, Int W, size_t cap) {
  if (term_limit < 0) throw PreconditionError("candidates: negative limit");
  StartCandidates c;
  c.widths = widths;
  c.term_limit = term_limit;
  // Sum -> fewest terms reaching it.
  std::unordered_map<Int, Int> terms{{0, 0}};
  for (Int w : widths) {
    std::vector<std::pair<Int, Int>> added;
    for (const auto& [s, k] : terms) {
      if (k >= term_limit || s + w >= W) continue;
      added.emplace_back(s + w, k + 1);
    }
    for (const auto& [s, k] : added) {
      auto [it, fresh] = terms.emplace(s, k);
      if (!fresh) it->second = std::min(it->second, k);
    }
    if (terms.size() > cap) {
      throw PreconditionError("candidates: more than " + std::to_string(cap) +
                              " start edges; raise eps");
    }
  }
  for (const auto& [s, k] : terms) c.edges.push_back(s);
  std::sort(c.edges.begin(), c.edges.end());
  return c;
}

StartCandidates horizontal_start_candidates(const Instance& instance,
                                            const Rational& delta_w,
                                            size_t cap) {
  if (delta_w <= 0 || delta_w >= 1) {
    throw PreconditionError("candidates: delta_w must lie in (0, 1)");
  }
  std::vector<Int> widths;
  for (Int id : horizontal_ids(instance, delta_w)) {
    widths.push_back(instance.task(id).w);
  }
  const Rational inv = 1 / delta_w;
  const Int limit =
      static_cast<Int>(numerator(inv) / denominator(inv));
  return start_candidates(widths, limit, instance.W(), cap);
}

std::optional<FractionalStart> solve_start_lp(
    const Instance& instance, const std::vector<Int>& horizontal,
    const StartCandidates& candidates, Int opt_guess, LpStats* stats,
    std::int64_t max_cells) {
  const std::vector<Int>& edges = candidates.edges;
  LpProblem lp;
  std::vector<std::pair<Int, Int>> var_key;
  std::vector<LpRow> capacity(edges.size());
  for (LpRow& row : capacity) row.rhs = opt_guess;
  for (Int id : horizontal) {
    const Task& t = instance.task(id);
    LpRow assign;
    assign.sense = RowSense::kEqual;
    assign.rhs = 1;
    for (size_t k = 0; k < edges.size(); ++k) {
      if (edges[k] + t.w > instance.W()) break;
      const int v = lp.num_vars++;
      var_key.emplace_back(id, edges[k]);
      assign.coeffs.emplace_back(v, 1);
      if (t.h == 0) continue;
      for (size_t e = k; e < edges.size() && edges[e] < edges[k] + t.w; ++e) {
        capacity[e].coeffs.emplace_back(v, t.h);
      }
    }
    lp.rows.push_back(std::move(assign));
  }
  for (LpRow& row : capacity) {
    if (!row.coeffs.empty()) lp.rows.push_back(std::move(row));
  }
  const LpResult r = solve_feasibility(lp, max_cells);
  if (stats != nullptr) {
    stats->vars = lp.num_vars;
    stats->rows = static_cast<Int>(lp.rows.size());
    stats->pivots = r.pivots;
    stats->rational_fallback = r.rational_fallback;
  }
  if (r.status == LpStatus::kInfeasible) return std::nullopt;
  FractionalStart f;
  for (int v = 0; v < lp.num_vars; ++v) {
    if (r.x[v] != 0) f.x[var_key[v]] = r.x[v];
  }
  return f;
}

RoundingResult round_once(const Instance& instance,
                          const FractionalStart& fractional, Int opt_guess,
                          const Rational& eps, std::uint64_t seed) {
  std::map<Int, std::vector<std::pair<Int, Rational>>> dist;
  for (const auto& [key, value] : fractional.x) {
    dist[key.first].emplace_back(key.second, value);
  }
  std::mt19937_64 rng(seed);
  std::vector<std::tuple<Int, Int>> drawn;  // (edge, id)
  for (const auto& [id, options] : dist) {
    const Rational u = Uniform(rng);
    Rational cumulative = 0;
    Int edge = options.back().first;
    for (const auto& [k, value] : options) {
      cumulative += value;
      if (u < cumulative) {
        edge = k;
        break;
      }
    }
    drawn.emplace_back(edge, id);
  }
  std::sort(drawn.begin(), drawn.end());
  const Int cap = floor_mul(1 + eps, opt_guess);
  RoundingResult result;
  result.seed_used = seed;
  result.attempts = 1;
  DemandProfile profile(instance.W());
  for (const auto& [edge, id] : drawn) {
    const Task& t = instance.task(id);
    if (profile.max_over(edge, t.w) + t.h <= cap) {
      profile.add(edge, t.w, t.h);
      result.partial.starts[id] = edge;
    } else {
      result.leftovers.push_back(id);
      result.leftover_area = checked_add(result.leftover_area, t.area());
    }
  }
  std::sort(result.leftovers.begin(), result.leftovers.end());
  return result;
}

RoundingResult round_with_alterations(const Instance& instance,
                                      const FractionalStart& fractional,
                                      Int opt_guess, const Rational& eps,
                                      std::uint64_t seed, int retry_budget) {
  const Int limit = floor_mul(2 * eps, checked_mul(instance.W(), opt_guess));
  for (int a = 0; a < retry_budget; ++a) {
    RoundingResult r =
        round_once(instance, fractional, opt_guess, eps, seed + a);
    if (r.leftover_area <= limit) {
      r.attempts = a + 1;
      return r;
    }
  }
  throw CertifiedFailure("rounding: leftover area above 2 eps W g after " +
                         std::to_string(retry_budget) + " samples");
}

Solution ptas_short(const Instance& instance, const PtasOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const Rational& eps = options.eps;
  const Rational delta = ptas_delta(eps);
  Solution sol;
  sol.report.algorithm = "ptas-short";
  sol.report.lower_bound = lower_bound(instance).value;
  sol.report.params["eps"] = rational_to_string(eps);
  sol.report.params["delta"] = rational_to_string(delta);
  sol.report.params["seed"] = std::to_string(options.seed);

  std::vector<Int> positive;
  Schedule best;
  for (const Task& t : instance.tasks()) {
    if (t.h == 0) {
      best.starts[t.id] = 0;
    } else {
      positive.push_back(t.id);
    }
  }
  const Instance core = restrict_instance(instance, positive);
  std::string source = "empty";
  if (!core.empty()) {
    const Int lb = lower_bound(core).value;
    if (options.check_height && Rational(core.h_max()) > delta * 2 * lb) {
      throw PreconditionError("ptas: h_max " + std::to_string(core.h_max()) +
                              " exceeds delta * 2 LB = " +
                              rational_to_string(delta * 2 * lb));
    }
    const std::vector<Int> horizontal = horizontal_ids(core, delta);
    std::vector<Int> narrow;
    for (const Task& t : core.tasks()) {
      if (std::find(horizontal.begin(), horizontal.end(), t.id) ==
          horizontal.end()) {
        narrow.push_back(t.id);
      }
    }
    const StartCandidates cand =
        horizontal_start_candidates(core, delta, options.candidate_cap);
    sol.report.params["candidates"] = std::to_string(cand.edges.size());

    Int g0 = lb;
    if (options.check_height) {
      g0 = std::max(g0, CeilRational(Rational(core.h_max()) / delta));
    }
    std::vector<Int> guesses;
    Rational r = g0;
    while (true) {
      const Int g = std::min(CeilRational(r), 2 * lb);
      if (guesses.empty() || g > guesses.back()) guesses.push_back(g);
      if (g >= 2 * lb) break;
      r *= 1 + eps;
    }

    std::optional<Schedule> found;
    for (Int g : guesses) {
      const std::string tag = "g=" + std::to_string(g) + ": ";
      LpStats stats;
      const std::optional<FractionalStart> frac = solve_start_lp(
          core, horizontal, cand, g, &stats, options.lp_max_cells);
      sol.report.params["lp_vars"] = std::to_string(stats.vars);
      if (!frac) {
        sol.report.trace.push_back(tag + "start LP infeasible");
        if (g == 2 * lb) {
          throw DefectError("ptas: start LP infeasible at 2 LB");
        }
        continue;
      }
      if (stats.rational_fallback) {
        sol.report.trace.push_back(tag + "LP decided in exact arithmetic");
      }
      try {
        const RoundingResult rounded = round_with_alterations(
            core, *frac, g, eps, options.seed, options.retry_budget);
        Schedule partial = rounded.partial;
        if (!rounded.leftovers.empty()) {
          const Instance rest = restrict_instance(core, rounded.leftovers);
          const Solution box = two_approx(rest);
          const Int box_cap = floor_mul(4 * eps, g);
          if (box.report.peak > box_cap) {
            throw CertifiedFailure("leftover box peak " +
                                   std::to_string(box.report.peak) +
                                   " exceeds floor(4 eps g) = " +
                                   std::to_string(box_cap));
          }
          for (const auto& [id, s] : box.schedule.starts) {
            partial.starts[id] = s;
          }
        }
        const Int pi = floor_mul(1 + 5 * eps, g);
        Schedule full = partial;
        if (!narrow.empty()) {
          const Schedule pushed = left_push(core, partial, pi);
          full = qt_fill(core, pushed, narrow, 4 * eps, g, pi);
        }
        const Int peak = validate_schedule(core, full, true);
        if (peak > pi) {
          throw DefectError("ptas: peak " + std::to_string(peak) +
                            " exceeds pi " + std::to_string(pi));
        }
        sol.report.trace.push_back(
            tag + "peak " + std::to_string(peak) + " <= pi " +
            std::to_string(pi) + ", " +
            std::to_string(rounded.leftovers.size()) + " leftovers after " +
            std::to_string(rounded.attempts) + " samples");
        sol.report.params["opt_guess"] = std::to_string(g);
        sol.report.params["pi"] = std::to_string(pi);
        sol.report.params["attempts"] = std::to_string(rounded.attempts);
        found = full;
        break;
      } catch (const CertifiedFailure& e) {
        sol.report.trace.push_back(tag + e.what());
      } catch (const PreconditionError& e) {
        sol.report.trace.push_back(tag + e.what());
      }
    }
    if (found) {
      source = "pipeline";
    } else {
      found = two_approx(core).schedule;
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
