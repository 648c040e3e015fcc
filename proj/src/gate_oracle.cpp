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

#include "qimatch/gate_oracle.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace qimatch {

QubitLayout QubitLayout::make(unsigned n, unsigned m, unsigned q) {
  QubitLayout l;
  unsigned offset = 0;
  auto next = [&offset](unsigned width) {
    Register r{offset, width};
    offset += width;
    return r;
  };
  l.k_b = next(2 * m);
  l.i_b = next(q);
  l.k_a = next(2 * n);
  l.i_a = next(q);
  l.f = next(1);
  l.g = next(1);
  l.total = offset;
  return l;
}

DenseState::DenseState(QubitLayout layout, unsigned qubit_cap) : layout_(layout) {
  if (layout_.total > qubit_cap) {
    throw QubitCapError(
        fmt::format("{} qubits requested, cap is {}", layout_.total, qubit_cap));
  }
  amplitudes_.assign(std::size_t{1} << layout_.total, 0.0);
}

double DenseState::squared_norm() const {
  double total = 0.0;
  for (double v : amplitudes_) total += v * v;
  return total;
}

void DenseState::apply_controlled_x(std::span<const GateControl> controls, unsigned target) {
  if (target >= layout_.total) throw std::out_of_range("target qubit out of range");
  std::uint64_t ctrl_mask = 0;
  std::uint64_t ctrl_value = 0;
  for (const GateControl& c : controls) {
    if (c.qubit >= layout_.total || c.qubit == target) {
      throw std::out_of_range("invalid control qubit");
    }
    ctrl_mask |= std::uint64_t{1} << c.qubit;
    if (c.on_one) ctrl_value |= std::uint64_t{1} << c.qubit;
  }
  const std::uint64_t target_bit = std::uint64_t{1} << target;
  for (std::uint64_t basis = 0; basis < amplitudes_.size(); ++basis) {
    if ((basis & target_bit) != 0 || (basis & ctrl_mask) != ctrl_value) continue;
    std::swap(amplitudes_[basis], amplitudes_[basis | target_bit]);
  }
  ++gates_applied_;
}

DenseState dense_simulate_steps12(const GqirImage& big, const GqirImage& small, unsigned qubit_cap) {
  if (big.side_log <= small.side_log || big.bit_depth != small.bit_depth) {
    throw ValidationError(ValidationError::Kind::kSizeOrder, "inconsistent image pair");
  }
  const unsigned q = big.bit_depth;
  DenseState state(QubitLayout::make(big.side_log, small.side_log, q), qubit_cap);
  const QubitLayout& l = state.layout();

  // Uniform superposition with |g> = (|0> - |1>)/sqrt(2) and f = 0.
  const double amp = std::ldexp(1.0, -static_cast<int>(big.side_log + small.side_log)) / std::sqrt(2.0);
  for (const GqirEntry& ea : big.entries) {
    for (const GqirEntry& eb : small.entries) {
      const std::uint64_t base =
          l.i_a.place(ea.value) | l.k_a.place(ea.k) | l.i_b.place(eb.value) | l.k_b.place(eb.k);
      state.set_amplitude(base | l.g.place(0), amp);
      state.set_amplitude(base | l.g.place(1), -amp);
    }
  }

  for (unsigned bit = 0; bit < q; ++bit) {
    const GateControl ctrl{l.i_b.offset + bit, true};
    state.apply_controlled_x(std::span(&ctrl, 1), l.i_a.offset + bit);
  }

  std::vector<GateControl> controls;
  for (unsigned bit = 0; bit < l.i_a.width; ++bit) controls.push_back({l.i_a.offset + bit, false});
  for (unsigned bit = 0; bit < l.k_b.width; ++bit) controls.push_back({l.k_b.offset + bit, false});
  state.apply_controlled_x(controls, l.f.offset);
  return state;
}

std::vector<PositionIndex> measure_dense_marked(const DenseState& state) {
  const QubitLayout& l = state.layout();
  const auto amps = state.amplitudes();
  std::vector<PositionIndex> out;
  for (std::uint64_t basis = 0; basis < amps.size(); ++basis) {
    if (l.f.extract(basis) == 1 && std::abs(amps[basis]) > 1e-12) out.push_back(l.k_a.extract(basis));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MatchResult classical_match(const Image& big, const Image& small, MatchMode mode) {
  const MatchDims dims = validate_pair(big, small);
  const std::uint64_t side_a = dims.a;
  const std::uint64_t side_b = std::uint64_t{1} << dims.m;

  MatchResult result;
  result.mode = mode;
  if (mode == MatchMode::kAnchorPixel) {
    const Pixel anchor = small.at(0, 0);
    for (std::uint64_t y = 0; y < side_a; ++y) {
      for (std::uint64_t x = 0; x < side_a; ++x) {
        ++result.comparisons;
        if (big.at(x, y) == anchor) result.locations.push_back({x, y});
      }
    }
    return result;
  }

  const std::uint64_t last = side_a - side_b;
  for (std::uint64_t y = 0; y <= last; ++y) {
    for (std::uint64_t x = 0; x <= last; ++x) {
      bool all_equal = true;
      for (std::uint64_t dy = 0; dy < side_b; ++dy) {
        for (std::uint64_t dx = 0; dx < side_b; ++dx) {
          ++result.comparisons;
          all_equal = all_equal && big.at(x + dx, y + dy) == small.at(dx, dy);
        }
      }
      if (all_equal) result.locations.push_back({x, y});
    }
  }
  return result;
}

}  // namespace qimatch
