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

#include "dsp/baseline.h"
#include "dsp/bounds.h"
#include "dsp/fixtures.h"
#include "dsp/profile.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace dsp {
namespace {

std::vector<Int> AllIds(const Instance& inst) {
  std::vector<Int> ids;
  for (const Task& t : inst.tasks()) ids.push_back(t.id);
  return ids;
}

TEST(NfdFill, NothingRemaining) {
  const Instance fig = named_instance("fig1a");
  Schedule partial;
  partial.starts[3] = 0;
  EXPECT_EQ(nfd_fill(fig, partial, {}, 5), partial);
}

TEST(NfdFill, FourUnitTasksOnFourEdges) {
  const Instance inst(4, {{1, 1, 1}, {2, 1, 1}, {3, 1, 1}, {4, 1, 1}});
  const Schedule out = nfd_fill(inst, Schedule{}, AllIds(inst), 2);
  EXPECT_EQ(validate_schedule(inst, out, true), 2);
  // Scan: e=0 takes two tasks, the next breakpoint e=1 takes the rest.
  EXPECT_EQ(out.start(1), 0);
  EXPECT_EQ(out.start(2), 0);
  EXPECT_EQ(out.start(3), 1);
  EXPECT_EQ(out.start(4), 1);
}

TEST(NfdFill, Fig1aOnStackedPrefix) {
  const Instance fig = named_instance("fig1a");
  Schedule partial;
  partial.starts = {{3, 0}, {4, 0}};
  const Schedule out = nfd_fill(fig, partial, {1, 2, 5, 6, 7, 8}, 8);
  EXPECT_LE(validate_schedule(fig, out, true), 8);
  EXPECT_EQ(out.start(3), 0);
  EXPECT_EQ(out.start(4), 0);
}

TEST(NfdFill, NamesTheFailedBullet) {
  const Instance inst(4, {{1, 3, 1}, {2, 1, 5}});
  auto message = [&](const std::vector<Int>& rem, Int pi) -> std::string {
    try {
      nfd_fill(inst, Schedule{}, rem, pi);
    } catch (const PreconditionError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message({2}, 9).find("bullet 1"), std::string::npos);
  EXPECT_NE(message({1}, 9).find("bullet 2"), std::string::npos);
  const Instance dense(4, {{1, 2, 2}, {2, 2, 2}, {3, 2, 2}, {4, 2, 2},
                           {5, 2, 2}});
  try {
    nfd_fill(dense, Schedule{}, AllIds(dense), 8);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("bullet 3"), std::string::npos);
  }
}

TEST(NfdFill, RejectsUnsortedPartial) {
  const Instance inst(4, {{1, 1, 1}, {2, 1, 1}});
  Schedule partial;
  partial.starts[1] = 2;
  EXPECT_THROW(nfd_fill(inst, partial, {2}, 4), PreconditionError);
}

TEST(NfdFill, FrontierIsMonotone) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    GeneratorParams p;
    p.n_max = 30;
    p.W_max = 60;
    p.h_max = 9;
    p.seed = rng();
    const Instance inst = random_instance(p);
    std::vector<Int> narrow;
    for (const Task& t : inst.tasks()) {
      if (2 * t.w <= inst.W()) narrow.push_back(t.id);
    }
    const Instance sub = restrict_instance(inst, narrow);
    const Int pi = 2 * lower_bound(sub).value;
    NfdTrace trace;
    const Schedule out = nfd_fill(sub, Schedule{}, narrow, pi, &trace);
    EXPECT_LE(validate_schedule(sub, out, true), pi);
    for (size_t i = 1; i < trace.frontier.size(); ++i) {
      EXPECT_GT(trace.frontier[i], trace.frontier[i - 1]);
    }
    Int last_start = 0;
    for (Int id : trace.placement_order) {
      EXPECT_GE(out.start(id), last_start);
      last_start = out.start(id);
    }
  }
}

TEST(QtFill, SortedPartialMatchesNfdFill) {
  const Instance inst(6, {{1, 6, 2}, {2, 1, 1}, {3, 1, 2}, {4, 1, 1}});
  Schedule partial;
  partial.starts[1] = 0;
  const Schedule a = qt_fill(inst, partial, {2, 3, 4}, Rational(1), 2, 6);
  const Schedule b = nfd_fill(inst, partial, {2, 3, 4}, 6);
  EXPECT_EQ(a, b);
}

TEST(QtFill, NothingRemaining) {
  const Instance inst(4, {{1, 2, 2}});
  Schedule partial;
  partial.starts[1] = 2;
  EXPECT_EQ(qt_fill(inst, partial, {}, Rational(1), 1, 3), partial);
}

TEST(QtFill, NarrowTasksOnLeftPushedPrefixes) {
  std::mt19937_64 rng(5);
  int exercised = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Int W = 20 + static_cast<Int>(rng() % 40);
    std::vector<Task> tasks;
    Int id = 1;
    Schedule partial;
    const Int n_big = 1 + static_cast<Int>(rng() % 5);
    for (Int i = 0; i < n_big; ++i) {
      const Int w = 1 + static_cast<Int>(rng() % W);
      tasks.push_back({id, w, 1 + static_cast<Int>(rng() % 6)});
      partial.starts[id] = static_cast<Int>(rng() % (W - w + 1));
      ++id;
    }
    std::vector<Int> narrow;
    const Rational alpha(1, 2);
    const Int w_cap = floor_mul(alpha / (2 * (alpha + 1)), W);
    if (w_cap < 1) continue;
    const Int n_small = static_cast<Int>(rng() % 12);
    for (Int i = 0; i < n_small; ++i) {
      tasks.push_back({id, 1 + static_cast<Int>(rng() % w_cap),
                       1 + static_cast<Int>(rng() % 3)});
      narrow.push_back(id++);
    }
    const Instance inst(W, tasks);
    const Int base = validate_schedule(inst, partial, false);
    const Int opt_guess = std::max<Int>(1, lower_bound(inst).value);
    const Int pi = std::max(base, ceil_mul(1 + alpha, opt_guess) + 3);
    const Schedule pushed = left_push(inst, partial, pi);
    try {
      const Schedule out = qt_fill(inst, pushed, narrow, alpha, opt_guess, pi);
      EXPECT_LE(validate_schedule(inst, out, true), pi);
      ++exercised;
    } catch (const PreconditionError&) {
    }
  }
  EXPECT_GT(exercised, 100);
}

TEST(TwoApprox, SingleTask) {
  const Solution s = two_approx(Instance(5, {{1, 3, 4}}));
  EXPECT_EQ(s.report.peak, 4);
  EXPECT_EQ(s.report.ratio, Rational(1));
}

TEST(TwoApprox, NamedInstances) {
  EXPECT_LE(two_approx(named_instance("fig1a")).report.peak, 8);
  EXPECT_LE(two_approx(named_instance("fig1b")).report.peak, 22);
}

TEST(TwoApprox, ThousandRandomInstances) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    GeneratorParams p;
    p.n_max = 40;
    p.W_max = 200;
    p.h_max = 50;
    p.seed = rng();
    const Instance inst = random_instance(p);
    const Solution s = two_approx(inst);
    EXPECT_EQ(validate_schedule(inst, s.schedule, true), s.report.peak);
    EXPECT_LE(s.report.peak, 2 * lower_bound(inst).value);
  }
}

}  // namespace
}  // namespace dsp
