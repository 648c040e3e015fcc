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

#include "qimatch/cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <system_error>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qimatch/fixtures.hpp"
#include "qimatch/gate_oracle.hpp"
#include "qimatch/grover.hpp"
#include "qimatch/joint_state.hpp"

namespace qimatch::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string format_fraction(const Rational& r) {
  if (r.denominator() == 1) return fmt::format("{}", r.numerator());
  return fmt::format("{}/{}", r.numerator(), r.denominator());
}

std::string format_coords(const std::vector<Coord>& coords) {
  std::string out;
  for (const Coord& c : coords) {
    if (!out.empty()) out += ' ';
    out += fmt::format("({},{})", c.x, c.y);
  }
  return out.empty() ? "-" : out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::system_error(errno, std::generic_category(), path);
  file << contents;
  if (!file) throw std::system_error(errno, std::generic_category(), path);
}

}  // namespace

MatchReport build_match_report(const Image& big, const Image& small, const MatchOptions& options) {
  MatchReport report;
  auto started = Clock::now();
  auto lap = [&](const char* stage) {
    if (options.timings) report.timings_ms.emplace_back(stage, elapsed_ms(started));
    started = Clock::now();
  };

  report.dims = validate_pair(big, small);
  const GqirImage enc_big = encode_gqir(big, report.dims);
  const GqirImage enc_small = encode_gqir(small, report.dims);
  lap("encode");

  const JointState marked_state = apply_u2(apply_u1(prepare_initial(enc_big, enc_small)));
  std::vector<PositionIndex> marked = marked_set(marked_state);
  report.marked_count = marked.size();
  for (PositionIndex k : marked) report.marked_locations.push_back(position_coords(k, report.dims.a));
  lap("mark");

  report.plan = plan_iterations(report.dims.a, options.mode);
  if (options.iterations) {
    report.plan.iterations = *options.iterations;
    report.plan.predicted_success = success_probability(report.dims.a, *options.iterations);
  }
  lap("plan");

  SubspaceState state = init_subspace(report.dims.n, std::move(marked));
  // Amplification is the identity on the uniform state when nothing is
  // marked, so it is skipped.
  if (report.marked_count > 0) state = run_grover(std::move(state), report.plan.iterations);
  report.top_index = state.top_index();
  report.top = position_coords(report.top_index, report.dims.a);
  lap("amplify");

  if (options.samples > 0) {
    report.samples = SampleSummary{options.seed,
                                   sample_measurement(state, options.seed, options.samples)};
  }
  lap("sample");

  if (options.verify) {
    Verification v;
    v.full_block = classical_match(big, small, MatchMode::kFullBlock).locations;
    v.anchor = classical_match(big, small, MatchMode::kAnchorPixel).locations;
    v.top_in_full_block = std::find(v.full_block.begin(), v.full_block.end(), report.top) !=
                          v.full_block.end();
    report.verify = std::move(v);
    lap("verify");
  }
  return report;
}

int cmd_match(const MatchOptions& options, std::ostream& out, std::ostream& err) {
  Image big(1, 1, 1, {0});
  Image small(1, 1, 1, {0});
  try {
    big = load_pgm_file(options.big_path);
    small = load_pgm_file(options.small_path);
  } catch (const std::system_error& e) {
    fmt::print(err, "error: cannot read {}\n", e.what());
    return kExitIo;
  } catch (const PgmError& e) {
    fmt::print(err, "error: invalid PGM: {}\n", e.what());
    return kExitValidation;
  } catch (const ValidationError& e) {
    fmt::print(err, "error: invalid image: {}\n", e.what());
    return kExitValidation;
  }

  MatchReport report;
  try {
    report = build_match_report(big, small, options);
  } catch (const ValidationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const std::length_error& e) {
    fmt::print(err, "error: instance too large: {}\n", e.what());
    return kExitValidation;
  }

  fmt::print(out, "dims: n={} m={} q={} a={}\n", report.dims.n, report.dims.m, report.dims.q,
             report.dims.a);
  fmt::print(out, "plan: mode={} iterations={} predicted_success={:.6f} lower_bound={:.6f}\n",
             to_string(report.plan.mode), report.plan.iterations, report.plan.predicted_success,
             report.plan.lower_bound);
  fmt::print(out, "marked: {} {}\n", report.marked_count, format_coords(report.marked_locations));
  if (report.marked_count == 0) {
    fmt::print(out, "result: no match (final state is uniform)\n");
  } else {
    fmt::print(out, "result: top_index={} (x={}, y={})\n", report.top_index, report.top.x,
               report.top.y);
  }
  if (report.samples) {
    std::string counts;
    for (const auto& [k, c] : report.samples->counts) counts += fmt::format(" {}:{}", k, c);
    fmt::print(out, "samples: seed={}{}\n", report.samples->seed, counts);
  }
  if (report.verify) {
    fmt::print(out, "verify: full_block={} anchor={}\n", format_coords(report.verify->full_block),
               format_coords(report.verify->anchor));
    if (report.marked_count > 0 && !report.verify->top_in_full_block) {
      fmt::print(out, "verify: WARNING top location ({},{}) is not a full-block match\n",
                 report.top.x, report.top.y);
    }
  }
  for (const auto& [stage, ms] : report.timings_ms) fmt::print(out, "time {}: {:.3f} ms\n", stage, ms);

  if (options.json_path) {
    try {
      write_file(*options.json_path, to_json(report).dump(2) + "\n");
    } catch (const std::system_error& e) {
      fmt::print(err, "error: cannot write {}\n", e.what());
      return kExitIo;
    }
  }
  return report.marked_count == 0 ? kExitNoMatch : kExitOk;
}

std::vector<Table1Row> table1_rows(const Table1Options& options) {
  if (options.max_a < 4 || options.max_a > kMaxPlanSide || !std::has_single_bit(options.max_a)) {
    throw std::invalid_argument(
        fmt::format("--max-a {} must be a power of two in [4, {}]", options.max_a, kMaxPlanSide));
  }
  if (options.modes.empty()) throw std::invalid_argument("at least one mode is required");
  std::vector<Table1Row> rows;
  for (std::uint64_t a = 4; a <= options.max_a; a *= 2) {
    Table1Row row;
    row.a = a;
    for (PlanMode mode : options.modes) {
      const IterationPlan plan = plan_iterations(a, mode);
      if (mode == options.modes.front()) row.predicted_success = plan.predicted_success;
      row.lower_bound = plan.lower_bound;
      switch (mode) {
        case PlanMode::kExactScan:
          row.exact = plan.iterations;
          break;
        case PlanMode::kLinearFit:
          row.fit = plan.iterations;
          break;
        case PlanMode::kOptimalScan:
          row.optimal = plan.iterations;
          break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

int cmd_table1(const Table1Options& options, std::ostream& out, std::ostream& err) {
  std::vector<Table1Row> rows;
  try {
    rows = table1_rows(options);
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitValidation;
  }
  auto cell = [](const std::optional<std::uint64_t>& v) {
    return v ? fmt::format("{}", *v) : std::string("-");
  };
  fmt::print(out, "{:>8} {:>10} {:>10} {:>10} {:>18} {:>12}\n", "a", "i_exact", "i_fit", "i_optimal",
             "predicted_success", "lower_bound");
  for (const Table1Row& r : rows) {
    fmt::print(out, "{:>8} {:>10} {:>10} {:>10} {:>18.10f} {:>12.6f}\n", r.a, cell(r.exact),
               cell(r.fit), cell(r.optimal), r.predicted_success, r.lower_bound);
  }

  if (options.csv_path) {
    std::vector<IterationPlan> plans;
    for (const Table1Row& r : rows) {
      for (PlanMode mode : options.modes) plans.push_back(plan_iterations(r.a, mode));
    }
    std::ostringstream csv;
    write_plans_csv(csv, plans);
    try {
      write_file(*options.csv_path, csv.str());
    } catch (const std::system_error& e) {
      fmt::print(err, "error: cannot write {}\n", e.what());
      return kExitIo;
    }
  }
  return kExitOk;
}

int cmd_example(std::ostream& out, std::ostream& err) {
  bool ok = true;
  auto check = [&](bool cond, const std::string& what) {
    if (!cond) {
      fmt::print(err, "MISMATCH: {}\n", what);
      ok = false;
    }
  };

  const Image big = fixtures::worked_example_big();
  const Image small = fixtures::worked_example_small();
  const MatchDims dims = validate_pair(big, small);
  const JointState state =
      apply_u2(apply_u1(prepare_initial(encode_gqir(big, dims), encode_gqir(small, dims))));
  const auto marked = marked_set(state);
  fmt::print(out, "joint state: {} branches, marked k_A = {{{}}}\n", state.branches().size(),
             fmt::join(marked, ","));
  check(marked == std::vector<PositionIndex>{5}, "marked set should be {5}");

  const std::uint64_t planned = exact_scan_iterations(dims.a);
  fmt::print(out, "planned iterations: {}\n", planned);
  check(planned == 3, "planned iteration count should be 3");

  const Rational expected[4][2] = {
      {Rational(3, 16), Rational(11, 16)},
      {Rational(5, 64), Rational(61, 64)},
      {Rational(-13, 256), Rational(251, 256)},
      {Rational(0), Rational(781, 1024)},
  };
  auto pair = initial_pair<Rational>(dims.a);
  SubspaceState vec = init_subspace(dims.n, marked);
  for (std::uint64_t i = 1; i <= 4; ++i) {
    pair = recurrence_step(pair);
    vec = run_grover(std::move(vec), 1);
    const bool overshoot = i == 4;
    if (overshoot) {
      fmt::print(out, "iteration {}: t{}0 = {} ({} {} {})\n", i, i, format_fraction(pair.t0),
                 pair.t0 < expected[2][1] ? "<" : ">=", format_fraction(expected[2][1]),
                 "overshoot");
      check(pair.t0 == expected[3][1], "fourth-iteration marked amplitude should be 781/1024");
      check(pair.t0 < expected[2][1], "fourth iteration should overshoot");
    } else {
      fmt::print(out, "iteration {}: t{}0 = {}, t{} = {}\n", i, i, format_fraction(pair.t0), i,
                 format_fraction(pair.t));
      check(pair.t == expected[i - 1][0] && pair.t0 == expected[i - 1][1],
            fmt::format("iteration {} amplitudes", i));
    }
    // floating-point vector run must reproduce the exact fractions bit-for-bit
    check(vec.amplitudes()[5] == boost::rational_cast<double>(pair.t0) &&
              vec.amplitudes()[0] == boost::rational_cast<double>(pair.t),
          fmt::format("vector simulation at iteration {}", i));
  }

  const Rational t30 = expected[2][1];
  const Rational t3 = expected[2][0];
  const double p_marked = boost::rational_cast<double>(t30 * t30);
  const double p_other = boost::rational_cast<double>(t3 * t3);
  const double bound = probability_lower_bound(static_cast<double>(dims.a));
  fmt::print(out, "P(marked) = {} = {:.4f}\n", format_fraction(t30 * t30), p_marked);
  fmt::print(out, "P(other)  = {} = {:.6f}\n", format_fraction(t3 * t3), p_other);
  fmt::print(out, "lower bound = {:.4f}; {:.4f} > {:.4f}\n", bound, p_marked, bound);
  check(std::abs(p_marked - 0.9613) <= 1e-4, "marked probability 0.9613");
  check(std::abs(p_other - 0.002579) <= 1e-6, "other-pixel probability 0.002579");
  check(std::abs(bound - 0.8976) <= 5e-4, "lower bound 0.8976");
  check(p_marked > bound, "probability should exceed the lower bound");

  fmt::print(out, "{}\n", ok ? "example: OK" : "example: MISMATCH");
  return ok ? kExitOk : kExitMismatch;
}

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err) {
  std::uint64_t exact = 0;
  std::uint64_t peak = 0;
  try {
    exact = exact_scan_iterations(options.a);
    peak = optimal_scan_iterations(options.a);
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitValidation;
  }
  const std::uint64_t sweep = options.sweep_i.value_or(std::max(exact, peak) + 1);

  fmt::print(out, "i,t_i,t_i0,t_i0_sq,flags\n");
  auto p = initial_pair<double>(options.a);
  for (std::uint64_t i = 0; i <= sweep; ++i) {
    std::string flags;
    if (i == peak) flags += "peak";
    if (i == exact) flags += flags.empty() ? "exact" : "+exact";
    fmt::print(out, "{},{:.17g},{:.17g},{:.17g},{}\n", i, p.t, p.t0, p.t0 * p.t0, flags);
    p = recurrence_step(p);
  }
  fmt::print(out, "# first local maximum: i={}\n", peak);
  fmt::print(out, "# exact-scan iterations: i={}\n", exact);
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum image matching simulator"};
  app.require_subcommand(1);

  MatchOptions match;
  std::string mode_name = "exact";
  std::optional<std::uint64_t> iterations;
  std::optional<std::string> json_path;
  auto* match_cmd = app.add_subcommand("match", "Locate a small image inside a big image");
  match_cmd->add_option("--big", match.big_path, "Big image (PGM)")->required();
  match_cmd->add_option("--small", match.small_path, "Small image (PGM)")->required();
  match_cmd->add_option("--mode", mode_name, "Iteration planner: exact|fit|optimal")
      ->check(CLI::IsMember({"exact", "fit", "optimal"}));
  match_cmd->add_option("--iterations", iterations, "Override the planned iteration count");
  match_cmd->add_option("--samples", match.samples, "Number of measurement draws")
      ->check(CLI::PositiveNumber);
  match_cmd->add_option("--seed", match.seed, "Measurement RNG seed");
  match_cmd->add_flag("--verify", match.verify, "Cross-check with classical exhaustive search");
  match_cmd->add_flag("--timings", match.timings, "Record per-stage wall-clock timings");
  match_cmd->add_option("--json", json_path, "Write the report as JSON");

  Table1Options table;
  std::vector<std::string> mode_names = {"exact", "fit", "optimal"};
  std::optional<std::string> csv_path;
  auto* table_cmd = app.add_subcommand("table1", "Iteration counts for a = 4 .. max-a");
  table_cmd->add_option("--max-a", table.max_a, "Largest side length (power of two)");
  table_cmd->add_option("--modes", mode_names, "Planners to include")
      ->delimiter(',')
      ->check(CLI::IsMember({"exact", "fit", "optimal"}));
  table_cmd->add_option("--csv", csv_path, "Write plans as CSV");

  auto* example_cmd = app.add_subcommand("example", "Replay the embedded 4x4 / 2x2 example");

  AnalyzeOptions analyze;
  std::optional<std::uint64_t> sweep;
  auto* analyze_cmd = app.add_subcommand("analyze", "Amplitude recurrence curve for one side length");
  analyze_cmd->add_option("--a", analyze.a, "Side length (power of two)")->required();
  analyze_cmd->add_option("--sweep-i", sweep, "Last iteration to print");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*match_cmd) {
    match.mode = *parse_plan_mode(mode_name);
    match.iterations = iterations;
    match.json_path = json_path;
    return cmd_match(match, out, err);
  }
  if (*table_cmd) {
    table.modes.clear();
    for (const std::string& name : mode_names) table.modes.push_back(*parse_plan_mode(name));
    table.csv_path = csv_path;
    return cmd_table1(table, out, err);
  }
  if (*example_cmd) return cmd_example(out, err);
  analyze.sweep_i = sweep;
  return cmd_analyze(analyze, out, err);
}

}  // namespace qimatch::cli
