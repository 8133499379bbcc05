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

// The 3/2-approximation for instances of bounded aspect ratio, with its
// near-optimal packing of almost all tasks and the profile discretization it
// relies on.

#ifndef DSP_SQUARE_H_
#define DSP_SQUARE_H_

#include <map>
#include <string>
#include <vector>

#include "dsp/baseline.h"
#include "dsp/core.h"
#include "dsp/exact.h"
#include "dsp/gap.h"
#include "dsp/profile.h"

namespace dsp {

// Disjoint cover. With g = opt_guess: big h > delta g, w > delta W; wide
// h <= mu g, w > delta W; long h > delta g, w <= mu W; tiny h <= mu g,
// w <= mu W; intermediate when either dimension lies in the (mu, delta] band.
struct BandClassification {
  Rational mu;
  Rational delta;
  Int opt_guess = 0;
  std::vector<Int> big;
  std::vector<Int> wide;
  std::vector<Int> long_tasks;
  std::vector<Int> tiny;
  std::vector<Int> intermediate;
};

BandClassification classify_bands(const Instance& instance, const Rational& mu,
                                  const Rational& delta, Int opt_guess);

struct BandParams {
  Rational mu;
  Rational delta;
  Int intermediate_area = 0;
  bool flagged = false;  // no candidate met the area bound
};

// Walks delta = y_j, mu = y_{j+1} with y_0 = eps and y_{j+1} = y_j * eps / 4
// until the intermediate area is at most eps^2 * W * opt_guess.
BandParams choose_band_params(const Instance& instance, const Rational& eps,
                              Int opt_guess);

// Restarts at every edge ceil(k * delta * W) and whenever the demand leaves
// the band [l - t, l + t] of the last stored level l, storing l + t, where
// t = floor(eps * opt_guess). The result lies between D and D + 2t.
DemandProfile discretize_profile(const DemandProfile& demand,
                                 const Rational& eps, const Rational& delta,
                                 Int opt_guess);

// Number of edges where the profile changes value.
Int jump_count(const DemandProfile& profile);

// A free rectangle above a profile: edges [x, x + w), heights [base, base + h).
struct SliceBox {
  Int x = 0;
  Int w = 0;
  Int base = 0;
  Int h = 0;
};

struct LongGrouping {
  ContainerPacking packing;  // vertical containers; leftovers are discarded
  Int discarded_area = 0;
  bool within_bound = true;  // discarded area <= eps^2 * W * opt_guess
  Int height_unit = 1;
  Int width_unit = 1;
};

// Turns unit-width slices of long tasks (edge -> ids covering it) lying in
// `boxes` into vertical containers: heights rounded up to multiples of
// max(1, floor(delta^2 g)), one container per slice of each distinct stripe
// configuration with widths rounded down to multiples of
// max(1, floor(mu W / eps)). Tasks are then poured into containers by height;
// tasks split across containers or reaching the dummy overflow are discarded.
LongGrouping group_long_slices(const Instance& instance,
                               const std::vector<SliceBox>& boxes,
                               const std::map<Int, std::vector<Int>>& slices,
                               const std::vector<Int>& long_ids,
                               const Rational& eps, const Rational& delta,
                               const Rational& mu, Int opt_guess,
                               Int first_container_id = 1);

struct FillBox {
  Int x = 0;
  Int w = 0;
  Int h = 0;
};

// Greedy fill of small tasks (order: h desc, w desc, id) into boxes, edge by
// edge from the left. Returns the ids that did not fit.
std::vector<Int> fill_boxes(const Instance& instance,
                            const std::vector<FillBox>& boxes,
                            const std::vector<Int>& ids, Schedule* out);

struct PecResult {
  Schedule partial;
  std::vector<Int> leftovers;
  Int leftover_area = 0;
  BandClassification bands;
  Int peak = 0;
  Int peak_bound = 0;  // floor((1 + eps) g)
  std::vector<std::string> trace;
};

// Packs all but a small-area set with peak at most (1 + eps) * opt_guess,
// guided by a reference schedule of peak <= opt_guess. Big and wide tasks keep
// their reference starts; long tasks go through group_long_slices; tiny tasks
// fill the remaining boxes. Throws CertifiedFailure when the bound fails.
PecResult bansal_pec(const Instance& instance, const Rational& eps,
                     const Schedule& reference, Int opt_guess);

// Case-1 rows for tasks sorted by (h desc, w desc, id): the prefix that fits
// left to right, then tasks i2+2 .. i1-1 leftwards from the right end.
// Throws CertifiedFailure unless the case applies at this guess.
Schedule square_case1_rows(const Instance& instance, Int opt_guess);

struct SquareOptions {
  Rational beta = 1;
  Rational eps = 0;  // 0 selects 1/(6 beta)
  Rational grid = Rational(1, 1000);
  OracleBudget reference_budget{2'000'000, 5.0, 4096, 40};
};

// Requires h <= w <= beta * h for every task (PreconditionError otherwise).
Solution square_dsp(const Instance& instance,
                    const SquareOptions& options = {});

}  // namespace dsp

#endif  // DSP_SQUARE_H_
