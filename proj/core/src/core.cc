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

#include "dsp/core.h"

#include <algorithm>
#include <sstream>

namespace dsp {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join(violations)), violations_(std::move(violations)) {}

Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw ValidationError({"integer overflow in product"});
  }
  return out;
}

Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ValidationError({"integer overflow in sum"});
  }
  return out;
}

Instance::Instance(Int W, std::vector<Task> tasks)
    : W_(W), tasks_(std::move(tasks)) {
  std::vector<std::string> errors;
  if (W_ < 1) errors.push_back("W < 1 (W = " + std::to_string(W_) + ")");
  for (size_t i = 0; i < tasks_.size(); ++i) {
    const Task& t = tasks_[i];
    const std::string tag = "task " + std::to_string(t.id);
    if (!index_.emplace(t.id, i).second) {
      errors.push_back("duplicate id " + std::to_string(t.id));
    }
    if (t.id < 0) errors.push_back(tag + ": negative id");
    if (t.w < 1) errors.push_back(tag + ": width < 1");
    if (W_ >= 1 && t.w > W_) errors.push_back(tag + ": width exceeds W");
    if (t.h < 0) errors.push_back(tag + ": negative height");
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  for (const Task& t : tasks_) {
    h_max_ = std::max(h_max_, t.h);
    w_max_ = std::max(w_max_, t.w);
    total_height_ = checked_add(total_height_, t.h);
    area_ = checked_add(area_, checked_mul(t.w, t.h));
  }
}

size_t Instance::index_of(Int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw ValidationError({"unknown task id " + std::to_string(id)});
  }
  return it->second;
}

Int Instance::max_id() const {
  Int m = -1;
  for (const Task& t : tasks_) m = std::max(m, t.id);
  return m;
}

Instance validate_instance(Int W, std::vector<Task> tasks) {
  return Instance(W, std::move(tasks));
}

Instance restrict_instance(const Instance& instance,
                           const std::vector<Int>& ids) {
  std::vector<char> keep(instance.size(), 0);
  for (Int id : ids) keep[instance.index_of(id)] = 1;
  std::vector<Task> tasks;
  for (size_t i = 0; i < instance.size(); ++i) {
    if (keep[i]) tasks.push_back(instance.tasks()[i]);
  }
  return Instance(instance.W(), std::move(tasks));
}

Int validate_schedule(const Instance& instance, const Schedule& schedule,
                      bool require_total) {
  std::vector<std::string> errors;
  std::vector<std::pair<Int, Int>> events;  // (edge, delta)
  for (const auto& [id, start] : schedule.starts) {
    if (!instance.contains(id)) {
      errors.push_back("unknown id " + std::to_string(id));
      continue;
    }
    const Task& t = instance.task(id);
    if (start < 0 || start + t.w > instance.W()) {
      errors.push_back("task " + std::to_string(id) + " out of bounds (start " +
                       std::to_string(start) + ", width " +
                       std::to_string(t.w) + ")");
      continue;
    }
    events.emplace_back(start, t.h);
    events.emplace_back(start + t.w, -t.h);
  }
  if (require_total) {
    for (Int id : unscheduled_ids(instance, schedule)) {
      errors.push_back("task " + std::to_string(id) + " unscheduled");
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  std::sort(events.begin(), events.end());
  Int demand = 0;
  Int peak = 0;
  for (size_t i = 0; i < events.size();) {
    const Int edge = events[i].first;
    for (; i < events.size() && events[i].first == edge; ++i) {
      demand = checked_add(demand, events[i].second);
    }
    peak = std::max(peak, demand);
  }
  return peak;
}

std::vector<Int> unscheduled_ids(const Instance& instance,
                                 const Schedule& schedule) {
  std::vector<Int> out;
  for (const Task& t : instance.tasks()) {
    if (!schedule.contains(t.id)) out.push_back(t.id);
  }
  return out;
}

Rational parse_rational(const std::string& text) {
  auto fail = [&]() -> Rational {
    throw PreconditionError("not a rational number: '" + text + "'");
  };
  if (text.empty()) return fail();
  const size_t slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      Rational num = parse_rational(text.substr(0, slash));
      Rational den = parse_rational(text.substr(slash + 1));
      if (den == 0) return fail();
      return num / den;
    }
    size_t pos = 0;
    bool negative = false;
    if (text[0] == '-' || text[0] == '+') {
      negative = text[0] == '-';
      pos = 1;
    }
    boost::multiprecision::cpp_int num = 0;
    boost::multiprecision::cpp_int den = 1;
    bool seen_digit = false;
    bool seen_dot = false;
    for (; pos < text.size(); ++pos) {
      const char c = text[pos];
      if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        num = num * 10 + (c - '0');
        if (seen_dot) den *= 10;
        seen_digit = true;
      } else {
        return fail();
      }
    }
    if (!seen_digit) return fail();
    Rational r(num, den);
    return negative ? Rational(-r) : r;
  } catch (const PreconditionError&) {
    return fail();
  }
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream out;
  out << numerator(r);
  if (denominator(r) != 1) out << "/" << denominator(r);
  return out.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Int floor_mul(const Rational& r, Int k) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = numerator(r) * k;
  const cpp_int den = denominator(r);
  cpp_int q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q.convert_to<Int>();
}

Int ceil_mul(const Rational& r, Int k) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = numerator(r) * k;
  const cpp_int den = denominator(r);
  cpp_int q = num / den;
  if (num > 0 && q * den != num) q += 1;
  return q.convert_to<Int>();
}

}  // namespace dsp
