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

#include <random>

#include "dsp/fixtures.h"
#include "dsp/profile.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace dsp {
namespace {

struct RandomCase {
  Instance instance;
  Schedule schedule;
  Int pi = 0;
};

RandomCase MakeCase(std::uint64_t seed, Int n_max, Int W_max) {
  std::mt19937_64 rng(seed);
  GeneratorParams p;
  p.n_min = 1;
  p.n_max = n_max;
  p.W_max = W_max;
  p.h_max = 6;
  p.seed = rng();
  RandomCase c;
  c.instance = random_instance(p);
  for (const Task& t : c.instance.tasks()) {
    c.schedule.starts[t.id] =
        static_cast<Int>(rng() % (c.instance.W() - t.w + 1));
  }
  c.pi = validate_schedule(c.instance, c.schedule, true) +
         static_cast<Int>(rng() % 3);
  return c;
}

TEST(BuildProfile, EmptyScheduleIsOneZeroRun) {
  const DemandProfile p = build_profile(named_instance("fig1a"), Schedule{});
  ASSERT_EQ(p.runs().size(), 1u);
  EXPECT_EQ(p.runs()[0], (dsp::Run{0, 0}));
  EXPECT_EQ(peak(p), 0);
}

TEST(BuildProfile, Fig1aIsFlatFour) {
  const DemandProfile p =
      build_profile(named_instance("fig1a"), named_schedule("fig1a"));
  ASSERT_EQ(p.runs().size(), 1u);
  EXPECT_EQ(p.runs()[0], (dsp::Run{0, 4}));
  EXPECT_EQ(peak(p), 4);
}

TEST(BuildProfile, Additivity) {
  const Instance inst(3, {{1, 2, 1}, {2, 2, 1}});
  Schedule s;
  s.starts = {{1, 0}, {2, 1}};
  const DemandProfile p = build_profile(inst, s);
  EXPECT_EQ(p.runs(), (std::vector<dsp::Run>{{0, 1}, {1, 2}, {2, 1}}));
  EXPECT_EQ(peak(p), 2);
}

TEST(BuildProfile, RunCountAndDenseAgreeWithNaive) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RandomCase c = MakeCase(seed, 12, 30);
    const DemandProfile p = build_profile(c.instance, c.schedule);
    EXPECT_LE(p.runs().size(), 2 * c.instance.size() + 1);
    EXPECT_EQ(p.dense(), testing::naive_demand(c.instance, c.schedule));
    for (size_t i = 1; i < p.runs().size(); ++i) {
      EXPECT_NE(p.runs()[i].demand, p.runs()[i - 1].demand);
    }
  }
}

TEST(BuildProfile, PeakIsMonotoneInAddedTasks) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RandomCase c = MakeCase(seed, 10, 20);
    Schedule partial;
    Int last = 0;
    for (const auto& [id, s] : c.schedule.starts) {
      partial.starts[id] = s;
      const Int now = peak(build_profile(c.instance, partial));
      EXPECT_GE(now, last);
      last = now;
    }
  }
}

TEST(LeftPush, UnobstructedTaskJumpsToZero) {
  const Instance inst(7, {{1, 2, 3}});
  Schedule s;
  s.starts[1] = 3;
  EXPECT_EQ(left_push(inst, s, 3).start(1), 0);
}

TEST(LeftPush, PeakBoundStopsOverlap) {
  const Instance inst(7, {{1, 1, 3}, {2, 1, 3}});
  Schedule s;
  s.starts = {{1, 0}, {2, 5}};
  const Schedule out = left_push(inst, s, 3);
  EXPECT_EQ(out.start(1), 0);
  EXPECT_EQ(out.start(2), 1);
}

TEST(LeftPush, Fig1aIsAFixedPoint) {
  const Instance fig = named_instance("fig1a");
  const Schedule s = named_schedule("fig1a");
  EXPECT_TRUE(testing::is_left_push_fixed_point(fig, s, 4, {}));
  EXPECT_EQ(left_push(fig, s, 4), s);
}

TEST(LeftPush, RejectsInputAbovePi) {
  EXPECT_THROW(left_push(named_instance("fig1a"), named_schedule("fig1a"), 3),
               PreconditionError);
}

TEST(LeftPush, FrozenTasksStay) {
  const Instance inst(7, {{1, 2, 3}, {2, 1, 1}});
  Schedule s;
  s.starts = {{1, 4}, {2, 6}};
  // A saturated frozen task blocks the walk; with slack the task passes it.
  const Schedule blocked = left_push(inst, s, 3, {1});
  EXPECT_EQ(blocked.start(1), 4);
  EXPECT_EQ(blocked.start(2), 6);
  const Schedule out = left_push(inst, s, 4, {1});
  EXPECT_EQ(out.start(1), 4);
  EXPECT_EQ(out.start(2), 0);
}

TEST(LeftPush, PropertiesOnRandomSchedules) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const RandomCase c = MakeCase(seed, 12, 24);
    const Schedule out = left_push(c.instance, c.schedule, c.pi);
    EXPECT_LE(validate_schedule(c.instance, out, true), c.pi);
    EXPECT_TRUE(testing::is_left_push_fixed_point(c.instance, out, c.pi, {}));
    EXPECT_EQ(left_push(c.instance, out, c.pi), out) << "not idempotent";
    const SortednessWitness w = sortedness_witness(
        build_profile(c.instance, out), c.pi, c.instance.h_max());
    const std::vector<Int> d = testing::naive_demand(c.instance, out);
    for (Int e = 0; e < w.t_star; ++e) {
      EXPECT_GE(d[e], c.pi - c.instance.h_max()) << "seed " << seed;
    }
    for (Int e = w.t_star + 1; e < c.instance.W(); ++e) {
      EXPECT_LE(d[e], d[e - 1]) << "seed " << seed;
    }
    for (const Task& t : c.instance.tasks()) {
      std::vector<Int> others;
      for (const Task& u : c.instance.tasks()) {
        if (u.id != t.id) others.push_back(u.w);
      }
      EXPECT_TRUE(testing::subset_sums(others).count(out.start(t.id)))
          << "seed " << seed << " task " << t.id;
    }
  }
}

TEST(SortednessWitness, NonIncreasingProfile) {
  const SortednessWitness w =
      sortedness_witness(DemandProfile::FromDense({5, 4, 2}));
  EXPECT_EQ(w.t_star, 0);
}

TEST(SortednessWitness, RisingPrefix) {
  const SortednessWitness w =
      sortedness_witness(DemandProfile::FromDense({3, 5, 4, 2}));
  EXPECT_EQ(w.t_star, 1);
  EXPECT_EQ(w.Q, 3);
}

TEST(SortednessWitness, ZeroProfile) {
  EXPECT_EQ(sortedness_witness(DemandProfile(6)), (SortednessWitness{0, 0}));
}

TEST(SortednessWitness, CappedVariant) {
  const DemandProfile p = DemandProfile::FromDense({3, 5, 4, 2});
  EXPECT_EQ(sortedness_witness(p, 6, 2).Q, 3);
  EXPECT_EQ(sortedness_witness(p, 4, 2).Q, 2);
}

}  // namespace
}  // namespace dsp
