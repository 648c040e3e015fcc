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

#include "qimatch/planning.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "qimatch/grover.hpp"

namespace qimatch {

std::string_view to_string(PlanMode mode) {
  switch (mode) {
    case PlanMode::kExactScan:
      return "exact";
    case PlanMode::kLinearFit:
      return "fit";
    case PlanMode::kOptimalScan:
      return "optimal";
  }
  return "unknown";
}

std::optional<PlanMode> parse_plan_mode(std::string_view name) {
  if (name == "exact") return PlanMode::kExactScan;
  if (name == "fit") return PlanMode::kLinearFit;
  if (name == "optimal") return PlanMode::kOptimalScan;
  return std::nullopt;
}

namespace {

void require_side(std::uint64_t a) {
  if (a < 2 || a > kMaxPlanSide || !std::has_single_bit(a)) {
    throw std::invalid_argument(
        fmt::format("side length {} must be a power of two in [2, {}]", a, kMaxPlanSide));
  }
}

}  // namespace

Int128 doubled_quartic(std::uint64_t i, std::uint64_t a) {
  const Int128 x = static_cast<Int128>(i);
  const Int128 a2 = static_cast<Int128>(a) * static_cast<Int128>(a);
  const Int128 x2 = x * x;
  return 2 * x2 * x2 + 8 * x2 * x + 2 * (2 - 3 * a2) * x2 + 2 * (-1 - 6 * a2) * x + 3 * a2 * a2 -
         3 * a2;
}

std::uint64_t exact_scan_iterations(std::uint64_t a) {
  require_side(a);
  // The quartic is positive at i = 0 and its smallest positive root lies
  // below a, so a forward scan terminates within a steps.
  std::uint64_t i = 1;
  while (doubled_quartic(i, a) >= 0) {
    if (i > a) throw std::logic_error(fmt::format("no sign change found below a = {}", a));
    ++i;
  }
  return i;
}

std::uint64_t linear_fit_iterations(std::uint64_t a) {
  require_side(a);
  const double fit = 0.7962 * static_cast<double>(a) - 0.6057;
  const auto rounded = static_cast<std::int64_t>(std::floor(fit + 0.5));
  return rounded < 1 ? 1 : static_cast<std::uint64_t>(rounded);
}

std::uint64_t optimal_scan_iterations(std::uint64_t a) {
  require_side(a);
  auto p = initial_pair<double>(a);
  for (;;) {
    const auto next = recurrence_step(p);
    if (next.t0 * next.t0 < p.t0 * p.t0) break;
    p = next;
  }
  return p.i < 1 ? 1 : p.i;
}

double success_probability(std::uint64_t a, std::uint64_t iterations) {
  const auto p = recurrence_run<double>(a, iterations);
  return p.t0 * p.t0;
}

double probability_lower_bound(double a) {
  if (!(a >= 2.0)) throw std::invalid_argument("side length must be at least 2");
  const double root = 0.9194 + 0.0567 / a + 0.2302 / (a * a) - 0.0336 / (a * a * a);
  return root * root;
}

double iteration_bound_polynomial(double i, double a) {
  const double i2 = i * i;
  const double top = (2.0 / 3.0) * i2 * i2 + (8.0 / 3.0) * i2 * i + (4.0 / 3.0) * i2 - (2.0 / 3.0) * i;
  return a - (2.0 * i2 + 4.0 * i + 1.0) / a + top / (a * a * a);
}

IterationPlan plan_iterations(std::uint64_t a, PlanMode mode) {
  require_side(a);
  IterationPlan plan;
  plan.a = a;
  plan.mode = mode;
  switch (mode) {
    case PlanMode::kExactScan:
      plan.iterations = exact_scan_iterations(a);
      break;
    case PlanMode::kLinearFit:
      plan.iterations = linear_fit_iterations(a);
      break;
    case PlanMode::kOptimalScan:
      plan.iterations = optimal_scan_iterations(a);
      break;
  }
  plan.predicted_success = success_probability(a, plan.iterations);
  plan.lower_bound = probability_lower_bound(static_cast<double>(a));
  return plan;
}

RadicalEstimate radical_crosscheck(std::uint64_t a) {
  require_side(a);
  using Real = long double;
  using Complex = std::complex<Real>;
  const Real side = static_cast<Real>(a);
  const Real b = 4;
  const Real c = 2 - 3 * side * side;
  const Real d = -1 - 6 * side * side;
  const Real e = 1.5L * side * side * side * side - 1.5L * side * side;

  const Real alpha = c * c - 3 * b * d + 12 * e;
  const Real beta = 2 * c * c * c - 9 * b * c * d + 27 * d * d + 27 * b * b * e - 72 * c * e;
  const Complex disc = std::sqrt(Complex(-4 * alpha * alpha * alpha + beta * beta));
  const Complex cube = std::pow(Complex(beta) + disc, Real{1} / 3);
  const Real cbrt2 = std::cbrt(Real{2});
  const Complex big_a = cbrt2 * alpha / (Real{3} * cube);
  const Complex big_b = cube / (Real{3} * cbrt2);

  const Real q = b * b * b / 8 - b * c / 2 + d;
  const Complex two_s = std::sqrt(Real{4} - Real{2} * c / 3 + big_a + big_b);
  const Complex lower = Real{-1} + Real{0.5} * two_s -
                        Real{0.5} * std::sqrt(Real{8} - Real{4} * c / 3 - big_a - big_b - Real{2} * q / two_s);

  RadicalEstimate out;
  out.lower_root = lower;
  out.real = std::abs(lower.imag()) < 1e-6L;
  const Real ceiling = std::ceil(lower.real());
  out.iterations = ceiling < 1 ? 1 : static_cast<std::uint64_t>(ceiling);
  out.agrees_with_scan = out.real && out.iterations == exact_scan_iterations(a);
  return out;
}

void write_plans_csv(std::ostream& out, std::span<const IterationPlan> plans) {
  out << "a,mode,iterations,predicted_success,lower_bound\n";
  for (const IterationPlan& p : plans) {
    out << fmt::format("{},{},{},{:.10f},{:.10f}\n", p.a, to_string(p.mode), p.iterations,
                       p.predicted_success, p.lower_bound);
  }
}

}  // namespace qimatch
