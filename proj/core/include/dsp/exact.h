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

// Exact oracles for DSP and GSP at desk scale.

#ifndef DSP_EXACT_H_
#define DSP_EXACT_H_

#include <cstdint>

#include "dsp/core.h"
#include "dsp/geometry.h"

namespace dsp {

struct OracleBudget {
  std::int64_t node_limit = 200'000'000;
  double time_limit_s = 600.0;
  Int max_W = 4096;
  size_t max_n = 40;
};

struct ExactDspResult {
  Int peak = 0;
  Schedule schedule;
  bool proven_optimal = false;
  Int lower_bound = 0;  // proven lower bound on OPT
  std::int64_t nodes = 0;
};

// Branch and bound: the target peak T is probed from the lower bound upwards
// (then bisected); each probe sweeps start edges left to right where starts
// are restricted to 0 and ends of placed tasks, which some T-left-pushed
// schedule always satisfies. Tasks with identical (w, h) are merged.
ExactDspResult exact_dsp(const Instance& instance,
                         const OracleBudget& budget = {});

struct ExactGspResult {
  Int peak = 0;
  GeomPlacement placement;
  bool proven_optimal = false;
  Int lower_bound = 0;
  std::int64_t nodes = 0;
};

// Strip height by probing box heights upwards. Each probe fills the first
// free cell in row-major order either with the bottom-left corner of a
// remaining rectangle or with waste.
ExactGspResult exact_gsp(const Instance& instance,
                         const OracleBudget& budget = {});

// Decision version: packs rects into box_w x box_h or reports failure.
// Returns false on infeasibility; sets *aborted when the budget ran out.
bool gsp_pack_box(const std::vector<Task>& rects, Int box_w, Int box_h,
                  const OracleBudget& budget, GeomPlacement* out,
                  bool* aborted, std::int64_t* nodes = nullptr);

}  // namespace dsp

#endif  // DSP_EXACT_H_
