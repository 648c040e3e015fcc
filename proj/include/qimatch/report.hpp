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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qimatch/image.hpp"
#include "qimatch/planning.hpp"

namespace qimatch {

struct Verification {
  std::vector<Coord> full_block;
  std::vector<Coord> anchor;
  bool top_in_full_block = false;
};

struct SampleSummary {
  std::uint64_t seed = 0;
  std::map<PositionIndex, std::uint64_t> counts;
};

struct MatchReport {
  MatchDims dims;
  IterationPlan plan;
  std::uint64_t marked_count = 0;
  std::vector<Coord> marked_locations;
  PositionIndex top_index = 0;
  Coord top;
  std::optional<SampleSummary> samples;
  std::optional<Verification> verify;
  // Wall-clock milliseconds per stage, in insertion order. Left empty
  // unless timing output was requested, so reports stay reproducible.
  std::vector<std::pair<std::string, double>> timings_ms;
};

// Keys are emitted in a fixed order:
// dims, plan, result, verify (if present), samples (if present), timings_ms.
nlohmann::ordered_json to_json(const MatchReport& report);

}  // namespace qimatch
