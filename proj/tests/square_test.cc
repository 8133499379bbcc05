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

#include <algorithm>
#include <random>

#include "dsp/baseline.h"
#include "dsp/bounds.h"
#include "dsp/exact.h"
#include "dsp/fixtures.h"
#include "dsp/profile.h"
#include "dsp/square.h"
#include "dsp/steinberg.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace dsp {
namespace {

Int Draw(std::mt19937_64& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

TEST(Steinberg, SingleRectAtOrigin) {
  const GeomPlacement p = steinberg_pack({{4, 3, 2}}, 6, 4);
  EXPECT_EQ(p.pos.at(4), (std::pair<Int, Int>{0, 0}));
}

TEST(Steinberg, RejectsViolations) {
  try {
    steinberg_pack({{1, 3, 3}, {2, 3, 3}}, 6, 3);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("area term"), std::string::npos);
  }
  EXPECT_THROW(steinberg_pack({{1, 7, 1}}, 6, 10), PreconditionError);
  EXPECT_THROW(steinberg_pack({{1, 1, 11}}, 6, 10), PreconditionError);
}

TEST(Steinberg, MinHeightIsTight) {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    const Int W = Draw(rng, 1, 20);
    std::vector<Task> rects;
    Int h_max = 0;
    for (Int id = 1; id <= Draw(rng, 1, 8); ++id) {
      rects.push_back({id, Draw(rng, 1, W), Draw(rng, 1, 9)});
      h_max = std::max(h_max, rects.back().h);
    }
    const Int H = steinberg_min_height(rects, W);
    EXPECT_TRUE(steinberg_violations(rects, W, H).empty());
    if (H > h_max) {
      EXPECT_FALSE(steinberg_violations(rects, W, H - 1).empty());
    }
  }
}

TEST(Steinberg, RandomSetsPackWithoutOverlap) {
  std::mt19937_64 rng(8);
  int packed = 0;
  while (packed < 50) {
    const Int W = Draw(rng, 1, 30);
    const Int H = Draw(rng, 1, 30);
    std::vector<Task> rects;
    for (Int id = 1; id <= Draw(rng, 1, 12); ++id) {
      rects.push_back({id, Draw(rng, 1, W), Draw(rng, 1, H)});
    }
    if (!steinberg_violations(rects, W, H).empty()) {
      EXPECT_THROW(steinberg_pack(rects, W, H), PreconditionError);
      continue;
    }
    EXPECT_TRUE(testing::packing_is_valid(rects, steinberg_pack(rects, W, H)));
    ++packed;
  }
}

TEST(Bands, DisjointCover) {
  std::mt19937_64 rng(2);
  for (int iter = 0; iter < 100; ++iter) {
    GeneratorParams gp;
    gp.n_max = 15;
    gp.W_max = 60;
    gp.h_max = 60;
    gp.seed = rng();
    const Instance inst = random_instance(gp);
    const BandClassification c =
        classify_bands(inst, Rational(1, 20), Rational(1, 4), 40);
    std::vector<Int> all;
    for (const auto* v : {&c.big, &c.wide, &c.long_tasks, &c.tiny,
                          &c.intermediate}) {
      all.insert(all.end(), v->begin(), v->end());
    }
    std::sort(all.begin(), all.end());
    std::vector<Int> ids;
    for (const Task& t : inst.tasks()) ids.push_back(t.id);
    EXPECT_EQ(all, ids);
  }
}

TEST(Bands, Examples) {
  const Instance inst(100, {{1, 50, 50}, {2, 50, 1}, {3, 1, 50}, {4, 1, 1},
                            {5, 10, 1}, {6, 50, 10}});
  const BandClassification c =
      classify_bands(inst, Rational(1, 50), Rational(1, 5), 100);
  EXPECT_EQ(c.big, std::vector<Int>{1});
  EXPECT_EQ(c.wide, std::vector<Int>{2});
  EXPECT_EQ(c.long_tasks, std::vector<Int>{3});
  EXPECT_EQ(c.tiny, std::vector<Int>{4});
  EXPECT_EQ(c.intermediate, (std::vector<Int>{5, 6}));
  EXPECT_THROW(classify_bands(inst, Rational(1, 5), Rational(1, 5), 100),
               PreconditionError);
}

TEST(Bands, ChooserMeetsAreaBound) {
  std::mt19937_64 rng(6);
  for (int iter = 0; iter < 100; ++iter) {
    GeneratorParams gp;
    gp.n_min = 1;
    gp.n_max = 20;
    gp.W_max = 200;
    gp.h_max = 50;
    gp.h_min = 1;
    gp.seed = rng();
    const Instance inst = random_instance(gp);
    const Int g = 2 * lower_bound(inst).value;
    const Rational eps(1, 4);
    const BandParams bp = choose_band_params(inst, eps, g);
    EXPECT_LT(bp.mu, bp.delta);
    EXPECT_FALSE(bp.flagged);
    EXPECT_LE(Rational(bp.intermediate_area), eps * eps * inst.W() * g);
  }
}

std::vector<Int> Dense(const DemandProfile& p) { return p.dense(); }

TEST(Discretize, FlatProfile) {
  const DemandProfile d = DemandProfile::FromRuns(10, {{0, 5}});
  const DemandProfile out =
      discretize_profile(d, Rational(1, 5), Rational(1, 2), 10);
  EXPECT_EQ(out.runs(), (std::vector<dsp::Run>{{0, 7}}));
}

TEST(Discretize, SingleStep) {
  const DemandProfile d = DemandProfile::FromRuns(20, {{0, 4}, {12, 10}});
  const DemandProfile out =
      discretize_profile(d, Rational(1, 5), Rational(1, 4), 10);
  // Restarts at 0, 5, 10, 15 store the same levels; the step stores 12.
  EXPECT_EQ(out.runs(), (std::vector<dsp::Run>{{0, 6}, {12, 12}}));
  EXPECT_EQ(jump_count(out), 1);
}

TEST(Discretize, SawtoothIsFlatPerBlock) {
  std::vector<Int> saw(24);
  for (size_t e = 0; e < saw.size(); ++e) saw[e] = 5 + (e % 2);
  const DemandProfile d = DemandProfile::FromDense(saw);
  const DemandProfile out =
      discretize_profile(d, Rational(1, 5), Rational(1, 4), 10);
  const std::vector<Int> v = Dense(out);
  for (size_t e = 0; e < v.size(); ++e) {
    EXPECT_EQ(v[e], v[e / 6 * 6]) << e;
    EXPECT_GE(v[e], saw[e]);
    EXPECT_LE(v[e], saw[e] + 4);
  }
}

TEST(Discretize, BoundsOnWideProfiles) {
  std::mt19937_64 rng(10);
  for (int iter = 0; iter < 300; ++iter) {
    const Int inv_eps = Draw(rng, 1, 8);
    const Int inv_delta = Draw(rng, 1, 8);
    const Rational eps(1, inv_eps);
    const Rational delta(1, inv_delta);
    const Int W = Draw(rng, inv_delta, 80);
    std::vector<Task> tasks;
    Schedule s;
    for (Int id = 1; id <= Draw(rng, 0, 12); ++id) {
      const Int w_min = floor_mul(delta, W) + 1;
      if (w_min > W) break;
      const Int w = Draw(rng, w_min, W);
      tasks.push_back({id, w, Draw(rng, 1, 6)});
      s.starts[id] = Draw(rng, 0, W - w);
    }
    const Instance inst(W, tasks);
    const DemandProfile d = build_profile(inst, s);
    const Int g = std::max<Int>(1, peak(d)) + Draw(rng, 0, 5);
    const DemandProfile out = discretize_profile(d, eps, delta, g);
    const std::vector<Int> dv = Dense(d);
    const std::vector<Int> ov = Dense(out);
    for (Int e = 0; e < W; ++e) {
      ASSERT_GE(ov[e], dv[e]);
      ASSERT_LE(Rational(ov[e]), dv[e] + 2 * eps * g);
    }
    EXPECT_LE(jump_count(out), 2 * inv_eps * inv_delta + inv_delta)
        << "iter " << iter;
  }
}

TEST(GroupLongSlices, OneConfiguration) {
  std::vector<Task> tasks;
  std::map<Int, std::vector<Int>> slices;
  std::vector<Int> ids;
  for (Int id = 1; id <= 6; ++id) {
    tasks.push_back({id, 1, 3});
    slices[id - 1] = {id};
    ids.push_back(id);
  }
  const Instance inst(10, tasks);
  const LongGrouping g =
      group_long_slices(inst, {{0, 6, 0, 10}}, slices, ids, Rational(1, 2),
                        Rational(1, 4), Rational(1, 100), 10);
  ASSERT_EQ(g.packing.containers.size(), 1u);
  EXPECT_EQ(g.packing.containers[0].width, 6);
  EXPECT_EQ(g.packing.containers[0].height, 3);
  EXPECT_TRUE(g.packing.leftovers.empty());
  EXPECT_EQ(g.packing.assignment.size(), 6u);
  check_packing(inst, g.packing);
}

TEST(GroupLongSlices, TwoHeightsRounded) {
  std::vector<Task> tasks;
  std::map<Int, std::vector<Int>> slices;
  std::vector<Int> ids;
  for (Int id = 1; id <= 6; ++id) {
    tasks.push_back({id, 1, id % 2 == 0 ? 5 : 3});
    slices[id - 1] = {id};
    ids.push_back(id);
  }
  const Instance inst(10, tasks);
  // delta^2 g = 2, so heights round to 4 and 6.
  const LongGrouping g =
      group_long_slices(inst, {{0, 6, 0, 8}}, slices, ids, Rational(1, 2),
                        Rational(1, 2), Rational(1, 100), 8);
  EXPECT_EQ(g.height_unit, 2);
  std::vector<Int> heights;
  for (const Container& c : g.packing.containers) heights.push_back(c.height);
  EXPECT_EQ(heights, (std::vector<Int>{6, 4}));
  EXPECT_TRUE(g.packing.leftovers.empty());
  check_packing(inst, g.packing);
}

TEST(GroupLongSlices, OverflowIsDiscarded) {
  std::vector<Task> tasks;
  std::map<Int, std::vector<Int>> slices;
  std::vector<Int> ids;
  for (Int id = 1; id <= 3; ++id) {
    tasks.push_back({id, 1, 3});
    slices[id - 1] = {id};
    ids.push_back(id);
  }
  const Instance inst(10, tasks);
  // mu W / eps = 2: three stripes round down to a width-2 container.
  const LongGrouping g =
      group_long_slices(inst, {{0, 3, 0, 10}}, slices, ids, Rational(1, 2),
                        Rational(1, 4), Rational(1, 10), 10);
  EXPECT_EQ(g.width_unit, 2);
  EXPECT_EQ(g.packing.leftovers, std::vector<Int>{3});
  EXPECT_EQ(g.discarded_area, 3);
  check_packing(inst, g.packing);
}

TEST(FillBoxes, PlacesUnderBoxHeight) {
  const Instance inst(10, {{1, 2, 2}, {2, 2, 2}, {3, 3, 1}, {4, 9, 1}});
  Schedule s;
  const std::vector<Int> left =
      fill_boxes(inst, {{0, 4, 2}, {5, 5, 3}}, {1, 2, 3, 4}, &s);
  EXPECT_EQ(left, std::vector<Int>{4});
  EXPECT_EQ(s.start(1), 0);
  EXPECT_EQ(s.start(2), 2);
  EXPECT_EQ(s.start(3), 5);
}

TEST(BansalPec, OnlyTinyTasks) {
  std::mt19937_64 rng(1);
  std::vector<Task> tasks;
  for (Int id = 1; id <= 300; ++id) {
    tasks.push_back({id, Draw(rng, 1, 2), Draw(rng, 1, 2)});
  }
  const Instance inst(512, tasks);
  const Solution ref = two_approx(inst);
  const PecResult r = bansal_pec(inst, Rational(1, 2), ref.schedule, 512);
  EXPECT_EQ(r.bands.tiny.size(), 300u);
  EXPECT_TRUE(r.leftovers.empty());
  EXPECT_EQ(r.partial.size(), 300u);
  EXPECT_LE(validate_schedule(inst, r.partial, true), r.peak_bound);
}

TEST(BansalPec, WideAndLongAgainstOracle) {
  std::mt19937_64 rng(4);
  for (int iter = 0; iter < 6; ++iter) {
    std::vector<Task> tasks;
    Int id = 1;
    for (int i = 0; i < 4; ++i) {
      tasks.push_back({id++, Draw(rng, 1, 2), Draw(rng, 300, 500)});
    }
    for (int i = 0; i < 4; ++i) {
      tasks.push_back({id++, Draw(rng, 70, 400), 1});
    }
    const Instance inst(512, tasks);
    const ExactDspResult opt = exact_dsp(inst);
    ASSERT_TRUE(opt.proven_optimal);
    const Rational eps(1, 2);
    const PecResult r = bansal_pec(inst, eps, opt.schedule, opt.peak);
    EXPECT_EQ(r.bands.long_tasks.size(), 4u);
    EXPECT_EQ(r.bands.wide.size(), 4u);
    EXPECT_LE(Rational(peak(build_profile(inst, r.partial))),
              (1 + eps) * opt.peak);
    EXPECT_LE(Rational(r.leftover_area), eps * inst.W() * opt.peak);
  }
}

TEST(BansalPec, LongTasksFillContainers) {
  std::mt19937_64 rng(7);
  std::vector<Task> tasks;
  Int id = 1;
  for (int i = 0; i < 96; ++i) {
    tasks.push_back({id++, 1, Draw(rng, 0, 1) == 0 ? 320 : 400});
  }
  for (int i = 0; i < 6; ++i) tasks.push_back({id++, Draw(rng, 70, 400), 1});
  const Instance inst(512, tasks);
  const Solution ref = two_approx(inst);
  const Int g = ref.report.peak;
  const Rational eps(1, 2);
  const PecResult r = bansal_pec(inst, eps, ref.schedule, g);
  ASSERT_EQ(r.bands.long_tasks.size(), 96u);
  Int placed_long = 0;
  for (Int lid : r.bands.long_tasks) placed_long += r.partial.contains(lid);
  EXPECT_GE(placed_long, 48);
  EXPECT_LE(peak(build_profile(inst, r.partial)), r.peak_bound);
  EXPECT_LE(Rational(r.leftover_area), eps * inst.W() * g);
}

TEST(BansalPec, IntermediateTasksAreLeftovers) {
  std::mt19937_64 rng(12);
  std::vector<Task> tasks;
  for (Int id = 1; id <= 40; ++id) {
    tasks.push_back({id, Draw(rng, 3, 60), Draw(rng, 3, 60)});
  }
  const Instance inst(512, tasks);
  const Solution ref = two_approx(inst);
  const Int g = ref.report.peak;
  const Rational eps(1, 2);
  const PecResult r = bansal_pec(inst, eps, ref.schedule, g);
  for (Int id : r.bands.intermediate) {
    EXPECT_TRUE(std::binary_search(r.leftovers.begin(), r.leftovers.end(), id));
  }
  Int area = 0;
  for (Int id : r.bands.intermediate) area += inst.task(id).area();
  const Rational e = eps / 4;
  EXPECT_LE(Rational(area), e * e * inst.W() * g);
  EXPECT_EQ(r.partial.size() + r.leftovers.size(), inst.size());
}

TEST(SquareDsp, SingleSquare) {
  EXPECT_EQ(square_dsp(Instance(10, {{1, 4, 4}})).report.peak, 4);
}

TEST(SquareDsp, Fig1b) {
  const Solution s = square_dsp(named_instance("fig1b"));
  EXPECT_LE(s.report.peak, 16);
}

TEST(SquareDsp, Preconditions) {
  EXPECT_THROW(square_dsp(Instance(10, {{1, 2, 3}})), PreconditionError);
  EXPECT_THROW(square_dsp(Instance(10, {{1, 5, 2}})), PreconditionError);
  SquareOptions o;
  o.beta = Rational(5, 2);
  EXPECT_NO_THROW(square_dsp(Instance(10, {{1, 5, 2}}), o));
  o.beta = Rational(1, 2);
  EXPECT_THROW(square_dsp(Instance(10, {{1, 1, 1}}), o), PreconditionError);
}

Instance CaseOneInstance() {
  std::vector<Task> tasks;
  Int id = 1;
  for (int i = 0; i < 433; ++i) tasks.push_back({id++, 5, 5});
  for (int i = 0; i < 50; ++i) tasks.push_back({id++, 1, 1});
  return Instance(1200, tasks);
}

TEST(SquareDsp, CaseOneTwoRows) {
  const Instance inst = CaseOneInstance();
  const Solution s = square_dsp(inst);
  EXPECT_EQ(s.report.params.at("branch"), "case-1");
  EXPECT_EQ(validate_schedule(inst, s.schedule, true), s.report.peak);
  EXPECT_LE(s.report.peak, 15);  // OPT is 10: two rows of 5-squares
  const Schedule rows = square_case1_rows(inst, 10);
  std::vector<Int> tall(inst.W(), 0);
  for (const auto& [id, x] : rows.starts) {
    const Task& t = inst.task(id);
    if (100 * t.h <= 49 * 10) continue;
    for (Int e = x; e < x + t.w; ++e) ++tall[e];
  }
  EXPECT_LE(*std::max_element(tall.begin(), tall.end()), 2);
}

TEST(SquareDsp, CaseTwoSortedFill) {
  std::mt19937_64 rng(5);
  std::vector<Task> tasks;
  for (Int id = 1; id <= 300; ++id) {
    const Int side = Draw(rng, 1, 8);
    tasks.push_back({id, side, side});
  }
  const Instance inst(2000, tasks);
  const Solution s = square_dsp(inst);
  EXPECT_EQ(s.report.params.at("branch"), "case-2");
  EXPECT_EQ(validate_schedule(inst, s.schedule, true), s.report.peak);
  EXPECT_LE(2 * s.report.peak, 3 * lower_bound(inst).value + 1);
}

TEST(SquareDsp, OracleSweep) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 60; ++iter) {
    GeneratorParams gp;
    gp.n_min = 1;
    gp.n_max = 7;
    gp.W_max = 14;
    gp.h_min = 1;
    gp.h_max = 7;
    gp.beta = Rational(1);
    gp.seed = rng();
    const Instance inst = random_instance(gp);
    const ExactDspResult opt = exact_dsp(inst);
    ASSERT_TRUE(opt.proven_optimal);
    const Solution s = square_dsp(inst);
    EXPECT_EQ(validate_schedule(inst, s.schedule, true), s.report.peak);
    EXPECT_LE(2 * s.report.peak, 3 * opt.peak + 1) << "iter " << iter;
  }
}

}  // namespace
}  // namespace dsp
