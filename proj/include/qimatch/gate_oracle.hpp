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
 * Reference oracles that share no code path with the structured
 * simulator: a dense gate-level statevector for the comparison and
 * marking stages, and classical exhaustive template matching.
 */

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qimatch/image.hpp"

namespace qimatch {

class QubitCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Contiguous run of qubits inside the basis index; bit 0 of the register
// is qubit `offset`.
struct Register {
  unsigned offset = 0;
  unsigned width = 0;

  std::uint64_t extract(std::uint64_t basis) const {
    return width == 0 ? 0 : (basis >> offset) & ((std::uint64_t{1} << width) - 1);
  }
  std::uint64_t place(std::uint64_t value) const { return width == 0 ? 0 : value << offset; }
};

// Register order, most significant first: g, f, I_A, k_A, I_B, k_B.
struct QubitLayout {
  Register g;
  Register f;
  Register i_a;
  Register k_a;
  Register i_b;
  Register k_b;
  unsigned total = 0;

  static QubitLayout make(unsigned n, unsigned m, unsigned q);
};

inline constexpr unsigned kDefaultQubitCap = 22;

struct GateControl {
  unsigned qubit = 0;
  bool on_one = true;  // false: fires when the control qubit is |0>
};

class DenseState {
 public:
  DenseState(QubitLayout layout, unsigned qubit_cap = kDefaultQubitCap);

  const QubitLayout& layout() const noexcept { return layout_; }
  std::span<const double> amplitudes() const noexcept { return amplitudes_; }
  double amplitude(std::uint64_t basis) const { return amplitudes_.at(basis); }
  void set_amplitude(std::uint64_t basis, double value) { amplitudes_.at(basis) = value; }
  double squared_norm() const;
  std::uint64_t gates_applied() const noexcept { return gates_applied_; }

  // Multi-controlled X on `target`. With one control this is a CNOT.
  void apply_controlled_x(std::span<const GateControl> controls, unsigned target);

 private:
  QubitLayout layout_;
  std::vector<double> amplitudes_;
  std::uint64_t gates_applied_ = 0;
};

// Prepares |g>|f>|A>|B> with g = (|0> - |1>)/sqrt(2), then applies one
// CNOT per intensity bit (I_B -> I_A) and the multi-controlled NOT onto
// f controlled on I_A = 0 and k_B = 0.
DenseState dense_simulate_steps12(const GqirImage& big, const GqirImage& small,
                                  unsigned qubit_cap = kDefaultQubitCap);

// Sorted k_A values of basis states with f = 1 and nonzero amplitude.
std::vector<PositionIndex> measure_dense_marked(const DenseState& state);

enum class MatchMode { kFullBlock, kAnchorPixel };

struct MatchResult {
  std::vector<Coord> locations;  // upper-left corners, row-major order
  MatchMode mode = MatchMode::kFullBlock;
  std::uint64_t comparisons = 0;
};

// Exhaustive search. kFullBlock compares every pixel of every candidate
// block (no early exit), so comparisons == 4^m (2^n - 2^m + 1)^2.
// kAnchorPixel compares each pixel of the big image with the small
// image's pixel (0, 0), so comparisons == 4^n.
MatchResult classical_match(const Image& big, const Image& small, MatchMode mode);

}  // namespace qimatch
