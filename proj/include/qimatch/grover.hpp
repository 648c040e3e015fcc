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
 * Amplitude amplification on the k_A position subspace: marked-phase flip,
 * inversion about the mean, the two-value recurrence it induces for a
 * single marked index, and projective measurement sampling.
 */

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

#include "qimatch/image.hpp"

namespace qimatch {

// Real amplitude vector over the 2^(2n) basis states of k_A.
class SubspaceState {
 public:
  // Arbitrary amplitudes; size must be 2^(2n) and marked indices in range.
  SubspaceState(unsigned n, std::vector<double> amplitudes, std::vector<PositionIndex> marked);

  unsigned n() const noexcept { return n_; }
  std::uint64_t side() const noexcept { return std::uint64_t{1} << n_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const double> amplitudes() const noexcept { return amplitudes_; }
  // Sorted, unique.
  std::span<const PositionIndex> marked() const noexcept { return marked_; }
  bool is_marked(PositionIndex k) const;
  double squared_norm() const;
  double probability(PositionIndex k) const { return amplitudes_.at(k) * amplitudes_.at(k); }
  // First index of maximal probability.
  PositionIndex top_index() const;

  friend bool operator==(const SubspaceState&, const SubspaceState&) = default;

 private:
  unsigned n_;
  std::vector<double> amplitudes_;
  std::vector<PositionIndex> marked_;
};

// Work counters for complexity accounting. amplitude_reads counts
// accumulations into the mean; amplitude_writes counts stored updates.
struct EngineCounters {
  std::uint64_t phase_flips = 0;
  std::uint64_t diffusions = 0;
  std::uint64_t amplitude_reads = 0;
  std::uint64_t amplitude_writes = 0;

  std::uint64_t total_ops() const noexcept { return amplitude_reads + amplitude_writes; }
};

// Largest register half-size the engine will allocate (2^(2n) doubles).
inline constexpr unsigned kMaxSubspaceHalfSize = 12;

// Uniform state with every amplitude 2^-n.
SubspaceState init_subspace(unsigned n, std::vector<PositionIndex> marked);

// Negates marked amplitudes.
SubspaceState phase_flip(const SubspaceState& state, EngineCounters* counters = nullptr);

// Inversion about the mean, s_j -> 2*mean - s_j. The mean is accumulated
// in index order with Neumaier compensation, so results do not depend on
// how the caller schedules work.
SubspaceState diffuse(const SubspaceState& state, EngineCounters* counters = nullptr);

// `iterations` rounds of phase_flip followed by diffuse.
SubspaceState run_grover(SubspaceState state, std::uint64_t iterations,
                         EngineCounters* counters = nullptr);

// Draws `samples` indices i.i.d. with probability amplitude^2. The stream
// is a 64-bit Mersenne Twister mapped to [0, 1) through its top 53 bits,
// so histograms are reproducible across standard libraries.
std::map<PositionIndex, std::uint64_t> sample_measurement(const SubspaceState& state,
                                                          std::uint64_t seed, std::uint64_t samples);

/// Single-marked-index state after i rounds: every unmarked amplitude is t,
/// the marked amplitude is t0. `a` is the image side 2^n.
template <typename Scalar>
struct BasicAmplitudePair {
  Scalar t{};
  Scalar t0{};
  std::uint64_t i = 0;
  std::uint64_t a = 2;

  friend bool operator==(const BasicAmplitudePair&, const BasicAmplitudePair&) = default;
};

using AmplitudePair = BasicAmplitudePair<double>;
using Rational = boost::rational<std::int64_t>;
using ExactAmplitudePair = BasicAmplitudePair<Rational>;

template <typename Scalar>
BasicAmplitudePair<Scalar> initial_pair(std::uint64_t a) {
  if (a < 2) throw std::invalid_argument("side length must be at least 2");
  const Scalar start = Scalar(1) / Scalar(static_cast<std::int64_t>(a));
  return {start, start, 0, a};
}

// One phase-flip + diffusion round expressed on the pair:
//   t0' = -2 t0/a^2 - 2 t/a^2 + 2 t + t0
//   t'  = -2 t0/a^2 - 2 t/a^2 + t
template <typename Scalar>
BasicAmplitudePair<Scalar> recurrence_step(const BasicAmplitudePair<Scalar>& p) {
  const auto a = static_cast<std::int64_t>(p.a);
  const Scalar a2 = Scalar(a) * Scalar(a);
  const Scalar shift = -Scalar(2) * p.t0 / a2 - Scalar(2) * p.t / a2;
  return {shift + p.t, shift + Scalar(2) * p.t + p.t0, p.i + 1, p.a};
}

template <typename Scalar>
BasicAmplitudePair<Scalar> recurrence_run(std::uint64_t a, std::uint64_t iterations) {
  auto p = initial_pair<Scalar>(a);
  for (std::uint64_t i = 0; i < iterations; ++i) p = recurrence_step(p);
  return p;
}

// Explicit polynomial forms of (t_i, t_i0) in 1/a for 1 <= i <= 4.
template <typename Scalar>
BasicAmplitudePair<Scalar> closed_form_t(std::uint64_t i, std::uint64_t a) {
  if (i < 1 || i > 4) throw std::out_of_range("closed forms are tabulated for 1 <= i <= 4");
  if (a < 2) throw std::invalid_argument("side length must be at least 2");
  // Coefficients of a^-1, a^-3, a^-5, a^-7, a^-9.
  static constexpr std::int64_t kMarked[4][5] = {
      {3, -4, 0, 0, 0},
      {5, -20, 16, 0, 0},
      {7, -56, 112, -64, 0},
      {9, -120, 432, -576, 256},
  };
  static constexpr std::int64_t kUnmarked[4][5] = {
      {1, -4, 0, 0, 0},
      {1, -12, 16, 0, 0},
      {1, -24, 80, -64, 0},
      {1, -40, 240, -448, 256},
  };
  const Scalar inv_a = Scalar(1) / Scalar(static_cast<std::int64_t>(a));
  const Scalar inv_a2 = inv_a * inv_a;
  Scalar t{0};
  Scalar t0{0};
  Scalar power = inv_a;
  for (std::uint64_t j = 0; j <= i; ++j) {
    if (j > 0) power *= inv_a2;
    t += Scalar(kUnmarked[i - 1][j]) * power;
    t0 += Scalar(kMarked[i - 1][j]) * power;
  }
  return {t, t0, i, a};
}

}  // namespace qimatch
