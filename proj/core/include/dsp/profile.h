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

// Run-length encoded demand profiles and left-pushing.

#ifndef DSP_PROFILE_H_
#define DSP_PROFILE_H_

#include <set>
#include <vector>

#include "dsp/core.h"

namespace dsp {

struct Run {
  Int start = 0;
  Int demand = 0;
  bool operator==(const Run&) const = default;
};

// Step function edge -> demand over [0, W). Runs are kept canonical: the
// first starts at 0 and neighbours differ in demand.
class DemandProfile {
 public:
  DemandProfile() : DemandProfile(1) {}
  explicit DemandProfile(Int W);
  // Canonicalizes the given runs.
  static DemandProfile FromRuns(Int W, std::vector<Run> runs);
  static DemandProfile FromDense(const std::vector<Int>& demand);

  Int W() const { return W_; }
  const std::vector<Run>& runs() const { return runs_; }

  // Index of the run containing `edge`.
  size_t run_index(Int edge) const;
  Int run_end(size_t index) const {
    return index + 1 < runs_.size() ? runs_[index + 1].start : W_;
  }
  Int at(Int edge) const { return runs_[run_index(edge)].demand; }
  Int max_over(Int start, Int width) const;
  Int min_over(Int start, Int width) const;
  Int peak() const;

  void add(Int start, Int width, Int delta);
  void add(const DemandProfile& other);

  std::vector<Int> dense() const;
  bool operator==(const DemandProfile&) const = default;

 private:
  void canonicalize();

  Int W_;
  std::vector<Run> runs_;
};

DemandProfile build_profile(const Instance& instance, const Schedule& schedule);
Int peak(const DemandProfile& profile);

// pi'-left-pushing. Tasks are visited in ascending (start, id) order, each
// jumping to its leftmost start reachable by single shifts that keep the peak
// at most pi_prime; passes repeat until nothing moves. Frozen ids stay put.
Schedule left_push(const Instance& instance, const Schedule& schedule,
                   Int pi_prime, const std::set<Int>& frozen = {});

struct SortednessWitness {
  Int Q = 0;
  Int t_star = 0;
  bool operator==(const SortednessWitness&) const = default;
};

// Minimal t_star such that demand right of it is non-increasing. Q is the
// minimum demand left of t_star (0 when t_star = 0).
SortednessWitness sortedness_witness(const DemandProfile& profile);
// Same t_star with Q = min(pi_prime - h_cap, min demand left of t_star).
SortednessWitness sortedness_witness(const DemandProfile& profile,
                                     Int pi_prime, Int h_cap);

bool is_non_increasing(const DemandProfile& profile);

}  // namespace dsp

#endif  // DSP_PROFILE_H_
