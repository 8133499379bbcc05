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

// Domain types for Demand Strip Packing: tasks on a path of W edges, partial
// or total schedules, and the validation shared by every algorithm.

#ifndef DSP_CORE_H_
#define DSP_CORE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dsp {

using Int = std::int64_t;
using Rational = boost::multiprecision::cpp_rational;

// Error hierarchy. The CLI maps ValidationError to exit 1, PreconditionError
// and CertifiedFailure surface as messages, DefectError to exit 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Malformed external input (JSON syntax or shape).
class ParseError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A guess-dependent step could not certify its bound; the caller is expected
// to try a larger opt_guess.
class CertifiedFailure : public Error {
 public:
  using Error::Error;
};

// An internal contradiction that a proof rules out.
class DefectError : public Error {
 public:
  using Error::Error;
};

struct Task {
  Int id = 0;
  Int w = 1;
  Int h = 0;

  Int area() const { return w * h; }
  bool operator==(const Task&) const = default;
};

class Instance {
 public:
  Instance() = default;
  // Throws ValidationError listing every violated invariant.
  Instance(Int W, std::vector<Task> tasks);

  Int W() const { return W_; }
  const std::vector<Task>& tasks() const { return tasks_; }
  size_t size() const { return tasks_.size(); }
  bool empty() const { return tasks_.empty(); }

  bool contains(Int id) const { return index_.count(id) > 0; }
  size_t index_of(Int id) const;
  const Task& task(Int id) const { return tasks_[index_of(id)]; }

  Int h_max() const { return h_max_; }
  Int w_max() const { return w_max_; }
  Int total_height() const { return total_height_; }
  Int area() const { return area_; }
  Int max_id() const;

  bool operator==(const Instance& other) const {
    return W_ == other.W_ && tasks_ == other.tasks_;
  }

 private:
  Int W_ = 1;
  std::vector<Task> tasks_;
  std::unordered_map<Int, size_t> index_;
  Int h_max_ = 0;
  Int w_max_ = 0;
  Int total_height_ = 0;
  Int area_ = 0;
};

Instance validate_instance(Int W, std::vector<Task> tasks);

// Sub-instance over the same path keeping the given ids in instance order.
Instance restrict_instance(const Instance& instance,
                           const std::vector<Int>& ids);

struct Schedule {
  std::map<Int, Int> starts;

  bool contains(Int id) const { return starts.count(id) > 0; }
  Int start(Int id) const { return starts.at(id); }
  size_t size() const { return starts.size(); }
  bool operator==(const Schedule&) const = default;
};

// Returns the peak. Throws ValidationError on unknown ids, out-of-range
// starts, and (with require_total) unscheduled tasks.
Int validate_schedule(const Instance& instance, const Schedule& schedule,
                      bool require_total);

// Ids of instance tasks absent from the schedule, in instance order.
std::vector<Int> unscheduled_ids(const Instance& instance,
                                 const Schedule& schedule);

struct SolveReport {
  std::string algorithm;
  Int peak = 0;
  Int lower_bound = 0;
  Rational ratio = 0;
  double wall_ms = 0.0;
  std::map<std::string, std::string> params;
  std::vector<std::string> trace;
  std::optional<bool> proven_optimal;

  void set_ratio() {
    ratio = lower_bound > 0 ? Rational(peak, lower_bound) : Rational(1);
  }
};

// Exact parsing of "0.1", "1/10", "3" into a rational.
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& r);
double to_double(const Rational& r);

// Checked 64-bit helpers; throw ValidationError on overflow.
Int checked_mul(Int a, Int b);
Int checked_add(Int a, Int b);

// floor(r * k) and ceil(r * k) for non-negative k.
Int floor_mul(const Rational& r, Int k);
Int ceil_mul(const Rational& r, Int k);

}  // namespace dsp

#endif  // DSP_CORE_H_
