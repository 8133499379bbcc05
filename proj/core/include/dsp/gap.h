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

// Containers, container packings and the area-profit assignment of tasks to
// a constant number of containers.

#ifndef DSP_GAP_H_
#define DSP_GAP_H_

#include <map>
#include <string>
#include <vector>

#include "dsp/core.h"
#include "dsp/profile.h"

namespace dsp {

enum class ContainerKind { kVertical, kHorizontal };

// A vertical container holds tasks side by side (total width <= width, each
// height <= height). A horizontal one stacks them (each width <= width, total
// height <= height).
struct Container {
  Int id = 0;
  ContainerKind kind = ContainerKind::kVertical;
  Int width = 1;
  Int height = 0;
  bool operator==(const Container&) const = default;
};

// Whether a single task satisfies the per-task dimension rule of a container.
bool fits(const Task& task, const Container& container);

// Size of a task in the capacity dimension of a container.
Int capacity_size(const Task& task, const Container& container);
Int capacity(const Container& container);

struct ContainerPacking {
  std::vector<Container> containers;
  std::map<Int, Int> assignment;          // task id -> container id
  std::map<Int, Int> container_schedule;  // container id -> start edge
  std::vector<Int> leftovers;
};

// Capacity, bounds and reference violations; empty when the packing is valid.
std::vector<std::string> packing_violations(const Instance& instance,
                                            const ContainerPacking& packing);

// Demand profile of the scheduled containers.
DemandProfile container_profile(Int W, const ContainerPacking& packing);

// Tasks of a horizontal container start on its first edge; tasks of a
// vertical container follow each other from its first edge, in id order.
Schedule induced_schedule(const Instance& instance,
                          const ContainerPacking& packing);

// Throws DefectError unless the packing is valid and its induced task profile
// is dominated by the container profile.
void check_packing(const Instance& instance, const ContainerPacking& packing);

struct GapResult {
  std::map<Int, Int> assignment;  // task id -> container id
  std::vector<Int> leftovers;
  Int assigned_area = 0;
  bool exact = false;  // true when the exact capacity-tuple DP was used
};

// Assigns tasks to containers maximizing the packed area. Runs an exact DP
// over capacity tuples when the state space fits `state_limit`, otherwise a
// DP over sizes rounded up to a coarser grid followed by a first-fit pass.
GapResult gap_pack(const std::vector<Task>& tasks,
                   const std::vector<Container>& containers,
                   const Rational& eps_prime,
                   std::int64_t state_limit = 4'000'000);

}  // namespace dsp

#endif  // DSP_GAP_H_
