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

// JSON formats: instances {"W", "tasks": [{"id","w","h"}]}, schedules
// {"starts": {"<id>": start}}, profiles [[start, demand], ...].

#ifndef DSP_JSON_IO_H_
#define DSP_JSON_IO_H_

#include <string>

#include "dsp/core.h"
#include "dsp/geometry.h"
#include "dsp/profile.h"

namespace dsp {

// Parsing throws ParseError on malformed JSON and ValidationError on
// well-formed data that violates an invariant.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& instance);

Schedule schedule_from_json(const std::string& text);
std::string schedule_to_json(const Schedule& schedule);

std::string profile_to_json(const DemandProfile& profile);
DemandProfile profile_from_json(Int W, const std::string& text);

std::string placement_to_json(const GeomPlacement& placement);
GeomPlacement placement_from_json(const std::string& text);

std::string report_to_json(const SolveReport& report);

}  // namespace dsp

#endif  // DSP_JSON_IO_H_
