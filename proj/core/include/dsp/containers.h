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

// Task classification, container construction and the (5/3+eps) pipeline.

#ifndef DSP_CONTAINERS_H_
#define DSP_CONTAINERS_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dsp/baseline.h"
#include "dsp/core.h"
#include "dsp/exact.h"
#include "dsp/gap.h"
#include "dsp/profile.h"

namespace dsp {

// Largest admissible eps for five_thirds.
Rational five_thirds_eps_max();

// Container-count constant K used by mu = delta / K, capped at 10^4.
struct ContainerConstant {
  Int K = 1;
  bool capped = false;
  Rational uncapped;  // the bound before capping
};
ContainerConstant container_constant(const Rational& eps);

struct DeltaMu {
  Rational delta;
  Rational mu;
  Int K = 1;
  Int medium_area = 0;
  bool flagged = false;  // no candidate met a(M) <= eps^2 * g * W
};

DeltaMu choose_delta_mu(const Instance& instance, const Rational& eps,
                        Int opt_guess);

struct Classification {
  Rational eps;
  Rational mu;
  Rational delta;
  Int opt_guess = 0;
  Int K = 1;
  std::vector<Int> tall;
  std::vector<Int> large;
  std::vector<Int> horizontal;
  std::vector<Int> narrow;
  std::vector<Int> medium;
};

// Throws CertifiedFailure when a task is taller than opt_guess.
Classification classify_tasks(const Instance& instance, const Rational& eps,
                              const Rational& mu, const Rational& delta,
                              Int opt_guess, Int K = 1);

// Moves the tall tasks to a prefix in (height desc, id) order, carrying the
// tasks that lie inside a single tall task with it and packing the tasks on
// uncovered edges to the right. Other tasks keep their starts. Throws
// CertifiedFailure when tall paths overlap.
Schedule restructure_tall(const Instance& instance, const Schedule& schedule,
                          const std::vector<Int>& tall);

// Vertical containers for the tall prefix (one per rounded level) and one per
// large task, scheduled where `structured` places them.
ContainerPacking build_tall_large_containers(const Instance& instance,
                                             const Schedule& structured,
                                             const Classification& cls);

struct HorizontalContainers {
  ContainerPacking packing;  // includes the extra W-wide container
  std::vector<Int> removed;  // tasks routed to the extra container
  Int extra_id = 0;
  Int group_height = 0;
};

// Linear grouping of horizontal slices of `reference` followed by a left
// shift under the cap `D`. Container ids start at `first_id`.
HorizontalContainers build_horizontal_containers(const Instance& instance,
                                                 const Schedule& reference,
                                                 const DemandProfile& D,
                                                 const Classification& cls,
                                                 Int first_id);

enum class FiveThirdsMode { kGuided, kEnumerate };

struct FiveThirdsOptions {
  Rational eps = Rational(1, 10);
  FiveThirdsMode mode = FiveThirdsMode::kGuided;
  OracleBudget reference_budget = {2'000'000, 5.0, 4096, 40};
  // Enumerate mode: maximal product of per-container start choices.
  std::int64_t enumerate_limit = 1'000'000;
};

// Schedule of all non-narrow tasks with peak <= floor((5/3+7eps)g) or a
// CertifiedFailure. Guided mode derives the layout from `reference`.
Schedule schedule_non_narrow(const Instance& instance,
                             const Classification& cls,
                             const Schedule& reference,
                             const FiveThirdsOptions& options,
                             std::vector<std::string>* trace = nullptr);

Solution five_thirds(const Instance& instance,
                     const FiveThirdsOptions& options = {});

}  // namespace dsp

#endif  // DSP_CONTAINERS_H_
