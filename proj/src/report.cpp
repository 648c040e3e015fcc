// Copyright 2026 The qimatch Authors. All Rights Reserved.
//
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

#include "qimatch/report.hpp"

#include <string>

namespace qimatch {

namespace {

nlohmann::ordered_json coords_json(const std::vector<Coord>& coords) {
  auto out = nlohmann::ordered_json::array();
  for (const Coord& c : coords) out.push_back({{"x", c.x}, {"y", c.y}});
  return out;
}

}  // namespace

nlohmann::ordered_json to_json(const MatchReport& report) {
  nlohmann::ordered_json j;
  j["dims"] = {{"n", report.dims.n}, {"m", report.dims.m}, {"q", report.dims.q}, {"a", report.dims.a}};
  j["plan"] = {{"mode", std::string(to_string(report.plan.mode))},
               {"iterations", report.plan.iterations},
               {"predicted_success", report.plan.predicted_success},
               {"lower_bound", report.plan.lower_bound}};
  j["result"] = {{"top_index", report.top_index},
                 {"x", report.top.x},
                 {"y", report.top.y},
                 {"marked_count", report.marked_count}};
  if (report.verify) {
    j["verify"] = {{"full_block", coords_json(report.verify->full_block)},
                   {"anchor", coords_json(report.verify->anchor)},
                   {"top_in_full_block", report.verify->top_in_full_block}};
  }
  if (report.samples) {
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [index, count] : report.samples->counts) counts[std::to_string(index)] = count;
    j["samples"] = {{"seed", report.samples->seed}, {"counts", counts}};
  }
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();
  for (const auto& [stage, ms] : report.timings_ms) timings[stage] = ms;
  j["timings_ms"] = timings;
  return j;
}

}  // namespace qimatch
