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

// Approximation for instances whose heights are all small relative to the
// optimum: a start-edge LP over horizontal tasks, randomized rounding with
// alterations, and a sorted fill for the narrow rest.

#ifndef DSP_PTAS_SHORT_H_
#define DSP_PTAS_SHORT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dsp/baseline.h"
#include "dsp/core.h"

namespace dsp {

// Height threshold derived from eps: min(eps/4, (1+4eps)^2 / (54 ln(1/eps))),
// rounded down to a multiple of 1e-6. Requires 0 < eps < 1.
Rational ptas_delta(const Rational& eps);

// Tasks with w > delta_w * W, in instance order.
std::vector<Int> horizontal_ids(const Instance& instance,
                                const Rational& delta_w);

struct StartCandidates {
  std::vector<Int> edges;   // sorted, contains 0
  std::vector<Int> widths;  // generating multiset
  Int term_limit = 0;
};

// All sums of at most term_limit widths (each entry used at most once) that
// are below W. Throws PreconditionError past `cap` distinct sums.
StartCandidates start_candidates(const std::vector<Int>& widths,
                                 Int term_limit, Int W,
                                 size_t cap = 1'000'000);

// Candidates generated by the horizontal tasks, term limit floor(1/delta_w).
StartCandidates horizontal_start_candidates(const Instance& instance,
                                            const Rational& delta_w,
                                            size_t cap = 1'000'000);

struct FractionalStart {
  std::map<std::pair<Int, Int>, Rational> x;  // (id, edge) -> value, nonzero
};

struct LpStats {
  Int vars = 0;
  Int rows = 0;
  std::int64_t pivots = 0;
  bool rational_fallback = false;
};

// Feasibility of: every horizontal task spread over candidate starts k with
// k + w <= W, and demand at most opt_guess at every candidate edge. Returns
// nullopt when infeasible.
std::optional<FractionalStart> solve_start_lp(
    const Instance& instance, const std::vector<Int>& horizontal,
    const StartCandidates& candidates, Int opt_guess,
    LpStats* stats = nullptr, std::int64_t max_cells = 4'000'000);

struct RoundingResult {
  Schedule partial;
  std::vector<Int> leftovers;
  Int leftover_area = 0;
  std::uint64_t seed_used = 0;
  int attempts = 0;
};

// One sample: each task draws an edge from its distribution, then tasks are
// kept in (edge, id) order while the peak stays at most floor((1+eps)g).
RoundingResult round_once(const Instance& instance,
                          const FractionalStart& fractional, Int opt_guess,
                          const Rational& eps, std::uint64_t seed);

// Resamples with seed, seed+1, ... until the leftover area is at most
// 2*eps*W*opt_guess. Throws CertifiedFailure when the budget runs out.
RoundingResult round_with_alterations(const Instance& instance,
                                      const FractionalStart& fractional,
                                      Int opt_guess, const Rational& eps,
                                      std::uint64_t seed,
                                      int retry_budget = 64);

struct PtasOptions {
  Rational eps = Rational(1, 5);
  std::uint64_t seed = 0;
  int retry_budget = 64;
  size_t candidate_cap = 1'000'000;
  std::int64_t lp_max_cells = 4'000'000;
  // When false, instances with tall tasks run anyway; no bound is claimed.
  bool check_height = true;
};

// Throws PreconditionError when h_max > delta * 2 * LB and check_height.
Solution ptas_short(const Instance& instance, const PtasOptions& options = {});

}  // namespace dsp

#endif  // DSP_PTAS_SHORT_H_
