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

#include "dsp/bounds.h"
#include "dsp/exact.h"
#include "dsp/fixtures.h"
#include "gtest/gtest.h"

namespace dsp {
namespace {

TEST(LowerBound, Fig1a) {
  EXPECT_EQ(lower_bound(named_instance("fig1a")), (LowerBound{3, 2, 4, 4}));
}

TEST(LowerBound, Fig1b) {
  const LowerBound lb = lower_bound(named_instance("fig1b"));
  EXPECT_EQ(lb.area_avg, 11);
  EXPECT_EQ(lb.value, 11);
}

TEST(LowerBound, SingleFullWidthTask) {
  EXPECT_EQ(lower_bound(Instance(5, {{1, 5, 7}})), (LowerBound{7, 7, 7, 7}));
}

TEST(LowerBound, WideUsesStrictHalf) {
  // 2w = W is not wide.
  EXPECT_EQ(lower_bound(Instance(4, {{1, 2, 3}, {2, 2, 3}})).wide_sum, 0);
  EXPECT_EQ(lower_bound(Instance(5, {{1, 3, 3}, {2, 3, 3}})).wide_sum, 6);
}

TEST(LowerBound, ScalesWithHeights) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorParams p;
    p.n_max = 10;
    p.seed = seed;
    const Instance inst = random_instance(p);
    for (Int k : {2, 3, 7}) {
      std::vector<Task> scaled = inst.tasks();
      for (Task& t : scaled) t.h *= k;
      const LowerBound a = lower_bound(inst);
      const LowerBound b = lower_bound(Instance(inst.W(), scaled));
      EXPECT_EQ(b.h_max, k * a.h_max);
      EXPECT_EQ(b.wide_sum, k * a.wide_sum);
      // Exact scaling of the rational average a/W; the ceiling can only
      // shrink relative to k*ceil.
      EXPECT_EQ(b.area_avg, (k * inst.area() + inst.W() - 1) / inst.W());
      EXPECT_LE(b.area_avg, k * a.area_avg);
    }
  }
}

TEST(LowerBound, NeverExceedsExactOptimum) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    GeneratorParams p;
    p.n_max = 10;
    p.W_max = 12;
    p.seed = 1000 + seed;
    const Instance inst = random_instance(p);
    const ExactDspResult r = exact_dsp(inst);
    ASSERT_TRUE(r.proven_optimal);
    EXPECT_LE(lower_bound(inst).value, r.peak);
  }
}

}  // namespace
}  // namespace dsp
