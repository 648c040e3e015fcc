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

/**
 * @file
 * Iteration-count planning for a single marked index on an a x a image.
 *
 * Three planners are provided:
 *  - kExactScan: smallest integer i >= 1 at which the quartic
 *      i^4 + 4i^3 + (2 - 3a^2) i^2 + (-1 - 6a^2) i + 3/2 a^4 - 3/2 a^2
 *    becomes negative. Evaluated in exact integer arithmetic.
 *  - kLinearFit: the linear fit round(0.7962 a - 0.6057).
 *  - kOptimalScan: first local maximum of the marked probability along
 *    the amplitude recurrence.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace qimatch {

enum class PlanMode { kExactScan, kLinearFit, kOptimalScan };

std::string_view to_string(PlanMode mode);
// Accepts "exact", "fit", "optimal".
std::optional<PlanMode> parse_plan_mode(std::string_view name);

struct IterationPlan {
  std::uint64_t a = 0;
  PlanMode mode = PlanMode::kExactScan;
  std::uint64_t iterations = 0;
  double predicted_success = 0.0;  // t_i0^2 from the recurrence
  double lower_bound = 0.0;
};

// Largest side length accepted by the planners.
inline constexpr std::uint64_t kMaxPlanSide = std::uint64_t{1} << 24;

__extension__ using Int128 = __int128;

// Sign-exact evaluation of the quartic above; the value returned is
// twice the quartic, which is always an integer.
Int128 doubled_quartic(std::uint64_t i, std::uint64_t a);

std::uint64_t exact_scan_iterations(std::uint64_t a);
std::uint64_t linear_fit_iterations(std::uint64_t a);
std::uint64_t optimal_scan_iterations(std::uint64_t a);

// Throws std::invalid_argument unless a is a power of two in [2, kMaxPlanSide].
IterationPlan plan_iterations(std::uint64_t a, PlanMode mode = PlanMode::kExactScan);

// Marked-index probability after `iterations` rounds, single marked index.
double success_probability(std::uint64_t a, std::uint64_t iterations);

// (0.9194 + 0.0567/a + 0.2302/a^2 - 0.0336/a^3)^2
double probability_lower_bound(double a);

// a - (2i^2+4i+1)/a + ((2/3)i^4 + (8/3)i^3 + (4/3)i^2 - (2/3)i)/a^3, the
// upper estimate of a^2 t_i - t_i0 whose sign change defines kExactScan.
double iteration_bound_polynomial(double i, double a);

// Closed-form lower root of the quartic, evaluated with principal complex
// roots. `iterations` is ceil(real part).
struct RadicalEstimate {
  std::complex<long double> lower_root;
  std::uint64_t iterations = 0;
  bool real = false;  // |imag| < 1e-6
  bool agrees_with_scan = false;
};

RadicalEstimate radical_crosscheck(std::uint64_t a);

// Header "a,mode,iterations,predicted_success,lower_bound", one row per plan.
void write_plans_csv(std::ostream& out, std::span<const IterationPlan> plans);

}  // namespace qimatch
