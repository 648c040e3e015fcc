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
 * Structured simulation of the comparison and marking stages.
 *
 * The register |g>|f>|I_A>|k_A>|I_B>|k_B> is held as one branch per
 * (k_A, k_B) pair; every other register is a deterministic function of
 * that pair, so a sparse branch list is exact. The |g> ancilla stays in
 * (|0> - |1>)/sqrt(2) throughout and is not stored.
 */

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qimatch/image.hpp"

namespace qimatch {

class StageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Branch {
  bool f = false;
  Pixel i_a = 0;  // I_A, or I_A xor I_B after the comparison stage
  PositionIndex k_a = 0;
  Pixel i_b = 0;
  PositionIndex k_b = 0;
  double amplitude = 0.0;

  friend bool operator==(const Branch&, const Branch&) = default;
};

enum class Stage { kPrepared, kAfterU1, kAfterU2 };

// Upper bound on 2^(2n+2m) accepted by prepare_initial.
inline constexpr std::uint64_t kMaxJointBranches = std::uint64_t{1} << 22;

class JointState {
 public:
  const MatchDims& dims() const noexcept { return dims_; }
  Stage stage() const noexcept { return stage_; }
  // Ordered by (k_a, k_b).
  std::span<const Branch> branches() const noexcept { return branches_; }
  double squared_norm() const;

  friend JointState prepare_initial(const GqirImage& big, const GqirImage& small);
  friend JointState apply_u1(const JointState& state);
  friend JointState apply_u2(const JointState& state);

 private:
  JointState(MatchDims dims, Stage stage, std::vector<Branch> branches)
      : dims_(dims), stage_(stage), branches_(std::move(branches)) {}

  MatchDims dims_;
  Stage stage_;
  std::vector<Branch> branches_;
};

// Psi_0: uniform superposition over (k_a, k_b) with f = 0.
JointState prepare_initial(const GqirImage& big, const GqirImage& small);

// Bitwise CNOT from I_B onto I_A: i_a <- i_a xor i_b.
JointState apply_u1(const JointState& state);

// Multi-controlled NOT onto f, firing when i_a == 0 and k_b == 0.
JointState apply_u2(const JointState& state);

// Sorted k_a values of branches with f == 1.
std::vector<PositionIndex> marked_set(const JointState& state);

// One "f i_a k_a i_b k_b amplitude" line per branch in (k_a, k_b) order.
std::string dump(const JointState& state);

}  // namespace qimatch
