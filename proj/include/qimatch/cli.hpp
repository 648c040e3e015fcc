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
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qimatch/image.hpp"
#include "qimatch/planning.hpp"
#include "qimatch/report.hpp"

namespace qimatch::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitValidation = 2,
  kExitNoMatch = 3,
  kExitMismatch = 4,
};

struct MatchOptions {
  std::string big_path;
  std::string small_path;
  PlanMode mode = PlanMode::kExactScan;
  std::optional<std::uint64_t> iterations;  // overrides the plan
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  bool verify = false;
  bool timings = false;
  std::optional<std::string> json_path;
};

// Runs the full pipeline on in-memory images. Throws ValidationError on
// unusable input. An empty marked set yields marked_count == 0 and the
// uniform state's report without running amplification.
MatchReport build_match_report(const Image& big, const Image& small, const MatchOptions& options);

int cmd_match(const MatchOptions& options, std::ostream& out, std::ostream& err);

struct Table1Row {
  std::uint64_t a = 0;
  std::optional<std::uint64_t> exact;
  std::optional<std::uint64_t> fit;
  std::optional<std::uint64_t> optimal;
  double predicted_success = 0.0;  // at the first requested mode
  double lower_bound = 0.0;
};

struct Table1Options {
  std::uint64_t max_a = 65536;
  std::vector<PlanMode> modes = {PlanMode::kExactScan, PlanMode::kLinearFit, PlanMode::kOptimalScan};
  std::optional<std::string> csv_path;
};

std::vector<Table1Row> table1_rows(const Table1Options& options);
int cmd_table1(const Table1Options& options, std::ostream& out, std::ostream& err);

// Replays the embedded 4x4 / 2x2 example with exact fractions and checks
// every value; returns kExitMismatch on any deviation.
int cmd_example(std::ostream& out, std::ostream& err);

struct AnalyzeOptions {
  std::uint64_t a = 4;
  std::optional<std::uint64_t> sweep_i;  // default: exact plan + 1
};

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qimatch::cli
