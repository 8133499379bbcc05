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

#include "dsp/core.h"
#include "dsp/fixtures.h"
#include "dsp/json_io.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace dsp {
namespace {

bool Mentions(const ValidationError& e, const std::string& needle) {
  for (const std::string& v : e.violations()) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(ValidateInstance, Fig1aIsValid) {
  const Instance fig = named_instance("fig1a");
  EXPECT_EQ(fig.W(), 7);
  EXPECT_EQ(fig.size(), 8u);
  EXPECT_EQ(fig.area(), 28);
}

TEST(ValidateInstance, WidthExceedsW) {
  try {
    validate_instance(5, {{1, 6, 1}});
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(Mentions(e, "width exceeds W"));
  }
}

TEST(ValidateInstance, SingleZeroHeightTaskOnUnitPath) {
  const Instance inst = validate_instance(1, {{1, 1, 0}});
  EXPECT_EQ(inst.h_max(), 0);
}

TEST(ValidateInstance, ListsEveryViolation) {
  try {
    validate_instance(0, {{1, 0, -1}, {1, 2, 1}});
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(Mentions(e, "W < 1"));
    EXPECT_TRUE(Mentions(e, "duplicate id 1"));
    EXPECT_TRUE(Mentions(e, "width < 1"));
    EXPECT_TRUE(Mentions(e, "negative height"));
  }
}

TEST(ValidateInstance, AreaOverflowIsChecked) {
  const Int big = Int{1} << 40;
  EXPECT_THROW(validate_instance(big, {{1, big, big}}), ValidationError);
}

TEST(ValidateSchedule, Fig1aPeakIsFour) {
  EXPECT_EQ(validate_schedule(named_instance("fig1a"),
                              named_schedule("fig1a"), true),
            4);
}

TEST(ValidateSchedule, EmptyScheduleHasPeakZero) {
  EXPECT_EQ(validate_schedule(named_instance("fig1a"), Schedule{}, false), 0);
}

TEST(ValidateSchedule, MissingTaskUnderRequireTotal) {
  Schedule s = named_schedule("fig1a");
  s.starts.erase(8);
  EXPECT_THROW(validate_schedule(named_instance("fig1a"), s, true),
               ValidationError);
  EXPECT_EQ(validate_schedule(named_instance("fig1a"), s, false), 4);
}

TEST(ValidateSchedule, OutOfBoundsAndUnknownId) {
  const Instance fig = named_instance("fig1a");
  Schedule s;
  s.starts[1] = 6;
  s.starts[99] = 0;
  try {
    validate_schedule(fig, s, false);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(Mentions(e, "out of bounds"));
    EXPECT_TRUE(Mentions(e, "unknown id 99"));
  }
}

TEST(ValidateSchedule, PeakMatchesNaiveEvaluator) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    GeneratorParams p;
    p.n_max = 15;
    p.W_max = trial < 190 ? 40 : 10000;
    p.h_max = 20;
    p.seed = rng();
    const Instance inst = random_instance(p);
    Schedule s;
    for (const Task& t : inst.tasks()) {
      if (rng() % 4 == 0) continue;
      s.starts[t.id] = static_cast<Int>(rng() % (inst.W() - t.w + 1));
    }
    EXPECT_EQ(validate_schedule(inst, s, false), testing::naive_peak(inst, s));
  }
}

TEST(JsonRoundTrip, InstanceAndSchedule) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    GeneratorParams p;
    p.n_max = 12;
    p.seed = rng();
    const Instance inst = random_instance(p);
    EXPECT_EQ(instance_from_json(instance_to_json(inst)), inst);
    Schedule s;
    for (const Task& t : inst.tasks()) {
      s.starts[t.id] = static_cast<Int>(rng() % (inst.W() - t.w + 1));
    }
    EXPECT_EQ(schedule_from_json(schedule_to_json(s)), s);
  }
}

TEST(JsonIo, MalformedInputIsAParseError) {
  EXPECT_THROW(instance_from_json("{\"W\": 3, \"tasks\": ["), ParseError);
  EXPECT_THROW(instance_from_json("{\"W\": \"x\", \"tasks\": []}"),
               ParseError);
  EXPECT_THROW(schedule_from_json("{\"starts\": {\"a\": 1}}"), ParseError);
  EXPECT_THROW(instance_from_json("{\"W\": 3, \"tasks\": [{\"id\":1,"
                                  "\"w\":4,\"h\":1}]}"),
               ValidationError);
}

TEST(Rational, ParsesDecimalsAndFractions) {
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("1/3"), Rational(1, 3));
  EXPECT_EQ(parse_rational("2"), Rational(2));
  EXPECT_THROW(parse_rational("abc"), PreconditionError);
  EXPECT_THROW(parse_rational("1/0"), PreconditionError);
  EXPECT_EQ(floor_mul(Rational(2, 3), 4), 2);
  EXPECT_EQ(ceil_mul(Rational(2, 3), 4), 3);
  EXPECT_EQ(ceil_mul(Rational(1, 2), 4), 2);
}

}  // namespace
}  // namespace dsp
