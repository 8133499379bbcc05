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

#include "dsp/fixtures.h"

#include <algorithm>
#include <random>

namespace dsp {
namespace {

// Portable draw in [lo, hi].
Int draw(std::mt19937_64& rng, Int lo, Int hi) {
  return lo + static_cast<Int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

std::vector<std::string> named_instance_names() { return {"fig1a", "fig1b"}; }

Instance named_instance(const std::string& name) {
  if (name == "fig1a") {
    return Instance(7, {{1, 2, 3},
                        {2, 2, 3},
                        {3, 4, 1},
                        {4, 4, 1},
                        {5, 3, 1},
                        {6, 1, 1},
                        {7, 1, 2},
                        {8, 1, 2}});
  }
  if (name == "fig1b") {
    const Int sides[] = {6, 6, 5, 5, 3, 2, 2, 1, 1, 1, 1};
    std::vector<Task> tasks;
    for (Int i = 0; i < 11; ++i) tasks.push_back({i + 1, sides[i], sides[i]});
    return Instance(13, std::move(tasks));
  }
  throw PreconditionError("unknown named instance '" + name + "'");
}

Schedule named_schedule(const std::string& name) {
  Schedule s;
  if (name == "fig1a") {
    s.starts = {{1, 0}, {2, 5}, {3, 0}, {4, 3},
                {5, 2}, {6, 3}, {7, 4}, {8, 2}};
  } else if (name == "fig1b") {
    s.starts = {{1, 0}, {2, 7}, {3, 0}, {4, 8}, {5, 5}, {6, 5},
                {7, 6}, {8, 6}, {9, 6}, {10, 6}, {11, 6}};
  } else {
    throw PreconditionError("unknown named instance '" + name + "'");
  }
  return s;
}

Instance hardness_instance(const std::vector<Int>& A, Int inv_eps) {
  std::vector<std::string> errors;
  if (A.size() % 2 != 0) errors.push_back("odd cardinality |A|");
  Int sum = 0;
  for (Int a : A) {
    if (a < 1) errors.push_back("non-positive value in A");
    sum = checked_add(sum, a);
  }
  if (sum % 2 != 0) errors.push_back("odd sum of A");
  if (inv_eps < 1) errors.push_back("inv_eps < 1");
  if (!errors.empty()) throw ValidationError(std::move(errors));
  const Int n = static_cast<Int>(A.size()) / 2;
  const Int C = checked_mul(inv_eps, sum);
  const Int W = checked_add(checked_mul(n, C), sum / 2);
  std::vector<Task> tasks;
  for (size_t i = 0; i < A.size(); ++i) {
    const Int side = checked_add(C, A[i]);
    tasks.push_back({static_cast<Int>(i) + 1, side, side});
  }
  return Instance(W, std::move(tasks));
}

bool has_balanced_partition(const std::vector<Int>& A) {
  const size_t m = A.size();
  if (m % 2 != 0 || m > 30) return false;
  Int sum = 0;
  for (Int a : A) sum += a;
  if (sum % 2 != 0) return false;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<size_t>(__builtin_popcount(mask)) != m / 2) continue;
    Int s = 0;
    for (size_t i = 0; i < m; ++i) {
      if (mask >> i & 1u) s += A[i];
    }
    if (2 * s == sum) return true;
  }
  return false;
}

Instance random_instance(const GeneratorParams& p) {
  std::vector<std::string> errors;
  if (p.n_min < 0 || p.n_min > p.n_max) errors.push_back("empty n range");
  if (p.W_min < 1 || p.W_min > p.W_max) errors.push_back("empty W range");
  if (p.h_min < 0 || p.h_min > p.h_max) errors.push_back("empty h range");
  if (p.beta && (*p.beta < 1 || p.h_min < 1 && p.h_max < 1)) {
    errors.push_back("aspect constraint needs beta >= 1 and positive heights");
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  std::mt19937_64 rng(p.seed);
  const Int W = draw(rng, p.W_min, p.W_max);
  const Int n = draw(rng, p.n_min, p.n_max);
  const Int w_cap = p.w_max > 0 ? std::min(p.w_max, W) : W;
  std::vector<Task> tasks;
  for (Int i = 0; i < n; ++i) {
    Task t;
    t.id = i + 1;
    if (p.beta) {
      // h <= w <= beta*h with w <= w_cap.
      const Int h_lo = std::max<Int>(1, p.h_min);
      const Int h_hi = std::min(p.h_max, w_cap);
      if (h_lo > h_hi) throw ValidationError({"no height fits the width cap"});
      t.h = draw(rng, h_lo, h_hi);
      const Int w_hi = std::min(w_cap, floor_mul(*p.beta, t.h));
      t.w = draw(rng, t.h, w_hi);
    } else {
      t.w = draw(rng, 1, w_cap);
      t.h = draw(rng, p.h_min, p.h_max);
    }
    tasks.push_back(t);
  }
  return Instance(W, std::move(tasks));
}

Instance random_flat_instance(Int W, Int layers, Int max_parts,
                              std::uint64_t seed) {
  if (W < 1 || layers < 0 || max_parts < 1) {
    throw ValidationError({"empty flat-instance range"});
  }
  std::mt19937_64 rng(seed);
  std::vector<Task> tasks;
  Int id = 1;
  for (Int l = 0; l < layers; ++l) {
    const Int parts = draw(rng, 1, std::min(max_parts, W));
    // Choose parts-1 distinct cut points in [1, W-1].
    std::vector<Int> cuts;
    while (static_cast<Int>(cuts.size()) < parts - 1) {
      const Int c = draw(rng, 1, W - 1);
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) {
        cuts.push_back(c);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    Int prev = 0;
    cuts.push_back(W);
    for (Int c : cuts) {
      tasks.push_back({id++, c - prev, 1});
      prev = c;
    }
  }
  return Instance(W, std::move(tasks));
}

}  // namespace dsp
