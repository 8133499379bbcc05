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

#include "dsp/json_io.h"

#include "json.hpp"

namespace dsp {
namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Int get_int(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer()) {
    throw ParseError(std::string("expected integer field '") + key + "'");
  }
  return j.at(key).get<Int>();
}

Int parse_id(const std::string& key) {
  size_t pos = 0;
  Int id = 0;
  try {
    id = std::stoll(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != key.size() || key.empty()) {
    throw ParseError("schedule key '" + key + "' is not an integer id");
  }
  return id;
}

}  // namespace

Instance instance_from_json(const std::string& text) {
  const json j = parse(text);
  const Int W = get_int(j, "W");
  if (!j.contains("tasks") || !j.at("tasks").is_array()) {
    throw ParseError("expected array field 'tasks'");
  }
  std::vector<Task> tasks;
  for (const json& t : j.at("tasks")) {
    tasks.push_back({get_int(t, "id"), get_int(t, "w"), get_int(t, "h")});
  }
  return Instance(W, std::move(tasks));
}

std::string instance_to_json(const Instance& instance) {
  json tasks = json::array();
  for (const Task& t : instance.tasks()) {
    tasks.push_back({{"id", t.id}, {"w", t.w}, {"h", t.h}});
  }
  return json{{"W", instance.W()}, {"tasks", tasks}}.dump();
}

Schedule schedule_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("starts") || !j.at("starts").is_object()) {
    throw ParseError("expected object field 'starts'");
  }
  Schedule s;
  for (const auto& [key, value] : j.at("starts").items()) {
    if (!value.is_number_integer()) {
      throw ParseError("start of task " + key + " is not an integer");
    }
    s.starts[parse_id(key)] = value.get<Int>();
  }
  return s;
}

std::string schedule_to_json(const Schedule& schedule) {
  json starts = json::object();
  for (const auto& [id, start] : schedule.starts) {
    starts[std::to_string(id)] = start;
  }
  return json{{"starts", starts}}.dump();
}

std::string profile_to_json(const DemandProfile& profile) {
  json runs = json::array();
  for (const Run& r : profile.runs()) runs.push_back({r.start, r.demand});
  return runs.dump();
}

DemandProfile profile_from_json(Int W, const std::string& text) {
  const json j = parse(text);
  if (!j.is_array()) throw ParseError("profile must be an array of runs");
  std::vector<Run> runs;
  for (const json& r : j) {
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() ||
        !r[1].is_number_integer()) {
      throw ParseError("profile run must be [start, demand]");
    }
    runs.push_back({r[0].get<Int>(), r[1].get<Int>()});
  }
  return DemandProfile::FromRuns(W, std::move(runs));
}

std::string placement_to_json(const GeomPlacement& placement) {
  json pos = json::object();
  for (const auto& [id, xy] : placement.pos) {
    pos[std::to_string(id)] = {xy.first, xy.second};
  }
  return json{{"box_w", placement.box_w},
              {"box_h", placement.box_h},
              {"pos", pos}}
      .dump();
}

GeomPlacement placement_from_json(const std::string& text) {
  const json j = parse(text);
  GeomPlacement p;
  p.box_w = get_int(j, "box_w");
  p.box_h = get_int(j, "box_h");
  if (!j.contains("pos") || !j.at("pos").is_object()) {
    throw ParseError("expected object field 'pos'");
  }
  for (const auto& [key, xy] : j.at("pos").items()) {
    if (!xy.is_array() || xy.size() != 2 || !xy[0].is_number_integer() ||
        !xy[1].is_number_integer()) {
      throw ParseError("position of rect " + key + " must be [x, y]");
    }
    p.pos[parse_id(key)] = {xy[0].get<Int>(), xy[1].get<Int>()};
  }
  return p;
}

std::string report_to_json(const SolveReport& report) {
  json j = {{"algorithm", report.algorithm},
            {"peak", report.peak},
            {"lower_bound", report.lower_bound},
            {"ratio", rational_to_string(report.ratio)},
            {"ratio_value", to_double(report.ratio)},
            {"wall_ms", report.wall_ms},
            {"params", report.params},
            {"trace", report.trace}};
  if (report.proven_optimal) j["proven_optimal"] = *report.proven_optimal;
  return j.dump();
}

}  // namespace dsp
