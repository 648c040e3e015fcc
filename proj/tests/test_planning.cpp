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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qimatch/grover.hpp"
#include "qimatch/planning.hpp"

using namespace qimatch;

namespace {

// Rational evaluation of the quartic, independent of the Int128 path.
Rational quartic(std::int64_t i, std::int64_t a) {
  const Rational x(i);
  const Rational s(a);
  return x * x * x * x + Rational(4) * x * x * x + (Rational(2) - Rational(3) * s * s) * x * x +
         (Rational(-1) - Rational(6) * s * s) * x + Rational(3, 2) * s * s * s * s -
         Rational(3, 2) * s * s;
}

}  // namespace

TEST_CASE("doubled_quartic agrees with rational evaluation") {
  for (std::int64_t a : {2, 4, 8, 16, 32, 64}) {
    for (std::int64_t i = 0; i <= 2 * a; ++i) {
      CHECK(Rational(static_cast<std::int64_t>(doubled_quartic(i, a)), 2) == quartic(i, a));
    }
  }
}

TEST_CASE("exact-scan planning small sides") {
  CHECK(exact_scan_iterations(2) == 1);
  CHECK(exact_scan_iterations(4) == 3);
  CHECK(exact_scan_iterations(8) == 6);
  CHECK(exact_scan_iterations(16) == 12);
  CHECK(exact_scan_iterations(1024) == 815);
  // smallest sign change: the quartic is non-negative one step earlier
  for (std::uint64_t a = 2; a <= 4096; a *= 2) {
    const std::uint64_t i = exact_scan_iterations(a);
    CHECK(doubled_quartic(i, a) < 0);
    for (std::uint64_t j = 1; j < i; ++j) REQUIRE(doubled_quartic(j, a) >= 0);
  }
}

TEST_CASE("exact-scan planning large sides") {
  CHECK(exact_scan_iterations(32768) == 26090);
  // Exact arithmetic puts the first negative value at 13045 and 52181 for
  // these sides; the quartic is still positive one step earlier.
  CHECK(doubled_quartic(13044, 16384) > 0);
  CHECK(doubled_quartic(13045, 16384) < 0);
  CHECK(exact_scan_iterations(16384) == 13045);
  CHECK(doubled_quartic(52180, 65536) > 0);
  CHECK(exact_scan_iterations(65536) == 52181);
}

TEST_CASE("radical cross-check agrees with the integer scan") {
  for (std::uint64_t a = 4; a <= 65536; a *= 2) {
    const RadicalEstimate r = radical_crosscheck(a);
    CHECK(r.real);
    CHECK(r.agrees_with_scan);
    CHECK(r.iterations == exact_scan_iterations(a));
  }
  const RadicalEstimate r4 = radical_crosscheck(4);
  CHECK(static_cast<double>(r4.lower_root.real()) == doctest::Approx(2.14967935616).epsilon(1e-9));
  CHECK(static_cast<double>(radical_crosscheck(16384).lower_root.real()) ==
        doctest::Approx(13044.3539327).epsilon(1e-9));
  CHECK(static_cast<double>(radical_crosscheck(65536).lower_root.real()) ==
        doctest::Approx(52180.4158168).epsilon(1e-9));
}

TEST_CASE("linear-fit planning") {
  CHECK(linear_fit_iterations(2) == 1);
  CHECK(linear_fit_iterations(4) == 3);
  const std::uint64_t fit = linear_fit_iterations(32768);
  CHECK(fit >= 26089);
  CHECK(fit <= 26091);
  CHECK(fit == 26089);  // 0.7962 * 32768 - 0.6057 = 26089.2759
}

TEST_CASE("optimal-scan planning finds the first local maximum") {
  CHECK(optimal_scan_iterations(2) == 1);
  CHECK(optimal_scan_iterations(4) == 3);
  for (std::uint64_t a = 4; a <= 256; a *= 2) {
    const std::uint64_t peak = optimal_scan_iterations(a);
    const double here = success_probability(a, peak);
    CHECK(here >= success_probability(a, peak - 1));
    CHECK(here > success_probability(a, peak + 1));
  }
}

TEST_CASE("plan_iterations") {
  const IterationPlan p = plan_iterations(4);
  CHECK(p.mode == PlanMode::kExactScan);
  CHECK(p.iterations == 3);
  CHECK(p.predicted_success == doctest::Approx(0.9613).epsilon(1e-4));
  CHECK(p.lower_bound == doctest::Approx(0.8976).epsilon(5e-4));

  for (PlanMode mode : {PlanMode::kExactScan, PlanMode::kLinearFit, PlanMode::kOptimalScan}) {
    for (std::uint64_t a = 2; a <= 1024; a *= 2) {
      const IterationPlan plan = plan_iterations(a, mode);
      CHECK(plan.iterations >= 1);
      CHECK(plan.predicted_success >= 0.0);
      CHECK(plan.predicted_success <= 1.0 + 1e-12);
    }
  }
  CHECK_THROWS_AS(plan_iterations(1), std::invalid_argument);
  CHECK_THROWS_AS(plan_iterations(12), std::invalid_argument);
  CHECK_THROWS_AS(plan_iterations(kMaxPlanSide * 2), std::invalid_argument);
}

TEST_CASE("probability_lower_bound") {
  CHECK(std::abs(probability_lower_bound(4) - 0.8976) <= 5e-4);
  CHECK(probability_lower_bound(1e9) == doctest::Approx(0.9194 * 0.9194).epsilon(1e-8));
  CHECK(success_probability(4, 3) >= probability_lower_bound(4));
  CHECK(success_probability(4, 3) == doctest::Approx(0.9613).epsilon(1e-4));
  CHECK_THROWS_AS(probability_lower_bound(1), std::invalid_argument);
}

TEST_CASE("iteration bound polynomial dominates a^2 t_i - t_i0") {
  for (std::uint64_t a = 4; a <= 256; a *= 2) {
    const std::uint64_t hat = exact_scan_iterations(a);
    auto p = initial_pair<double>(a);
    for (std::uint64_t i = 1; i <= hat; ++i) {
      p = recurrence_step(p);
      if (i < 2) continue;
      const double lhs = static_cast<double>(a * a) * p.t - p.t0;
      CHECK(lhs < iteration_bound_polynomial(static_cast<double>(i), static_cast<double>(a)));
    }
    // the bound polynomial is 2/(3a^3) times the quartic
    const double scaled = 2.0 / (3.0 * std::pow(static_cast<double>(a), 3)) *
                          static_cast<double>(doubled_quartic(hat, a)) / 2.0;
    CHECK(iteration_bound_polynomial(static_cast<double>(hat), static_cast<double>(a)) ==
          doctest::Approx(scaled).epsilon(1e-9));
  }
}

TEST_CASE("plan mode names") {
  for (PlanMode mode : {PlanMode::kExactScan, PlanMode::kLinearFit, PlanMode::kOptimalScan}) {
    CHECK(parse_plan_mode(to_string(mode)) == mode);
  }
  CHECK_FALSE(parse_plan_mode("best").has_value());
}

TEST_CASE("plans CSV") {
  const IterationPlan plans[] = {plan_iterations(4), plan_iterations(4, PlanMode::kLinearFit)};
  std::ostringstream out;
  write_plans_csv(out, plans);
  std::istringstream lines(out.str());
  std::string header, first, second, extra;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(header == "a,mode,iterations,predicted_success,lower_bound");
  CHECK(first.rfind("4,exact,3,0.96131", 0) == 0);
  CHECK(second.rfind("4,fit,3,", 0) == 0);
  CHECK_FALSE(std::getline(lines, extra));
}
