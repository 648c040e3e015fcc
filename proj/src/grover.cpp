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

#include "qimatch/grover.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

namespace qimatch {

SubspaceState::SubspaceState(unsigned n, std::vector<double> amplitudes,
                             std::vector<PositionIndex> marked)
    : n_(n), amplitudes_(std::move(amplitudes)), marked_(std::move(marked)) {
  if (n_ > kMaxSubspaceHalfSize) {
    throw std::length_error(fmt::format("register half-size {} exceeds {}", n_, kMaxSubspaceHalfSize));
  }
  const std::uint64_t dim = std::uint64_t{1} << (2 * n_);
  if (amplitudes_.size() != dim) {
    throw std::invalid_argument(
        fmt::format("expected {} amplitudes, got {}", dim, amplitudes_.size()));
  }
  std::sort(marked_.begin(), marked_.end());
  marked_.erase(std::unique(marked_.begin(), marked_.end()), marked_.end());
  if (!marked_.empty() && marked_.back() >= dim) {
    throw std::out_of_range(fmt::format("marked index {} outside [0, {})", marked_.back(), dim));
  }
}

bool SubspaceState::is_marked(PositionIndex k) const {
  return std::binary_search(marked_.begin(), marked_.end(), k);
}

double SubspaceState::squared_norm() const {
  double total = 0.0;
  for (double v : amplitudes_) total += v * v;
  return total;
}

PositionIndex SubspaceState::top_index() const {
  PositionIndex best = 0;
  double best_p = -1.0;
  for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
    const double p = amplitudes_[k] * amplitudes_[k];
    if (p > best_p) {
      best_p = p;
      best = k;
    }
  }
  return best;
}

SubspaceState init_subspace(unsigned n, std::vector<PositionIndex> marked) {
  if (n > kMaxSubspaceHalfSize) {
    throw std::length_error(fmt::format("register half-size {} exceeds {}", n, kMaxSubspaceHalfSize));
  }
  const std::uint64_t dim = std::uint64_t{1} << (2 * n);
  return SubspaceState(n, std::vector<double>(dim, std::ldexp(1.0, -static_cast<int>(n))),
                       std::move(marked));
}

SubspaceState phase_flip(const SubspaceState& state, EngineCounters* counters) {
  std::vector<double> amps(state.amplitudes().begin(), state.amplitudes().end());
  for (PositionIndex k : state.marked()) amps[k] = -amps[k];
  if (counters) {
    ++counters->phase_flips;
    counters->amplitude_writes += state.marked().size();
  }
  return SubspaceState(state.n(), std::move(amps),
                       std::vector<PositionIndex>(state.marked().begin(), state.marked().end()));
}

SubspaceState diffuse(const SubspaceState& state, EngineCounters* counters) {
  const auto amps_in = state.amplitudes();
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : amps_in) {
    const double next = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - next) + v;
    } else {
      compensation += (v - next) + sum;
    }
    sum = next;
  }
  const double mean = (sum + compensation) / static_cast<double>(amps_in.size());

  std::vector<double> amps(amps_in.size());
  for (std::size_t j = 0; j < amps.size(); ++j) amps[j] = 2.0 * mean - amps_in[j];
  if (counters) {
    ++counters->diffusions;
    counters->amplitude_reads += amps.size();
    counters->amplitude_writes += amps.size();
  }
  return SubspaceState(state.n(), std::move(amps),
                       std::vector<PositionIndex>(state.marked().begin(), state.marked().end()));
}

SubspaceState run_grover(SubspaceState state, std::uint64_t iterations, EngineCounters* counters) {
  for (std::uint64_t i = 0; i < iterations; ++i) {
    state = diffuse(phase_flip(state, counters), counters);
  }
  return state;
}

std::map<PositionIndex, std::uint64_t> sample_measurement(const SubspaceState& state,
                                                          std::uint64_t seed, std::uint64_t samples) {
  if (samples == 0) throw std::invalid_argument("at least one sample is required");
  const auto amps = state.amplitudes();
  std::vector<double> cumulative(amps.size());
  double running = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    running += amps[k] * amps[k];
    cumulative[k] = running;
  }
  if (!(running > 0.0)) throw std::invalid_argument("cannot sample from a zero state");

  std::mt19937_64 rng(seed);
  std::map<PositionIndex, std::uint64_t> histogram;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double u = std::ldexp(static_cast<double>(rng() >> 11), -53) * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    auto k = static_cast<PositionIndex>(it - cumulative.begin());
    if (it == cumulative.end()) {
      // u rounded up to the total; take the last index with weight
      k = amps.size() - 1;
      while (amps[k] == 0.0) --k;
    }
    ++histogram[k];
  }
  return histogram;
}

}  // namespace qimatch
