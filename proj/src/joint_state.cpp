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

#include "qimatch/joint_state.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace qimatch {

namespace {

void require_stage(const JointState& state, Stage expected, const char* op) {
  if (state.stage() != expected) {
    throw StageError(fmt::format("{} applied at the wrong stage", op));
  }
}

}  // namespace

double JointState::squared_norm() const {
  double total = 0.0;
  for (const Branch& b : branches_) total += b.amplitude * b.amplitude;
  return total;
}

JointState prepare_initial(const GqirImage& big, const GqirImage& small) {
  if (big.side_log <= small.side_log) {
    throw ValidationError(ValidationError::Kind::kSizeOrder,
                          fmt::format("big register half-size {} must exceed small {}", big.side_log,
                                      small.side_log));
  }
  if (big.bit_depth != small.bit_depth) {
    throw ValidationError(ValidationError::Kind::kBadImage,
                          fmt::format("bit depth mismatch: {} vs {}", big.bit_depth, small.bit_depth));
  }
  const std::uint64_t size_a = big.side() * big.side();
  const std::uint64_t size_b = small.side() * small.side();
  if (big.entries.size() != size_a || small.entries.size() != size_b) {
    throw ValidationError(ValidationError::Kind::kBadImage, "encoded image does not cover its grid");
  }
  if (size_a > kMaxJointBranches / size_b) {
    throw std::length_error(fmt::format("joint state would need {} x {} branches", size_a, size_b));
  }

  const MatchDims dims{big.side_log, small.side_log, big.bit_depth, big.side()};
  const double amplitude = std::ldexp(1.0, -static_cast<int>(dims.n + dims.m));

  std::vector<Branch> branches;
  branches.reserve(size_a * size_b);
  for (const GqirEntry& ea : big.entries) {
    for (const GqirEntry& eb : small.entries) {
      branches.push_back(Branch{false, ea.value, ea.k, eb.value, eb.k, amplitude});
    }
  }
  return JointState(dims, Stage::kPrepared, std::move(branches));
}

JointState apply_u1(const JointState& state) {
  require_stage(state, Stage::kPrepared, "U1");
  std::vector<Branch> branches(state.branches().begin(), state.branches().end());
  for (Branch& b : branches) b.i_a ^= b.i_b;
  return JointState(state.dims(), Stage::kAfterU1, std::move(branches));
}

JointState apply_u2(const JointState& state) {
  require_stage(state, Stage::kAfterU1, "U2");
  std::vector<Branch> branches(state.branches().begin(), state.branches().end());
  for (Branch& b : branches) {
    if (b.i_a == 0 && b.k_b == 0) b.f = !b.f;
  }
  return JointState(state.dims(), Stage::kAfterU2, std::move(branches));
}

std::vector<PositionIndex> marked_set(const JointState& state) {
  require_stage(state, Stage::kAfterU2, "marked_set");
  std::vector<PositionIndex> out;
  for (const Branch& b : state.branches()) {
    if (b.f) out.push_back(b.k_a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string dump(const JointState& state) {
  std::string out;
  for (const Branch& b : state.branches()) {
    out += fmt::format("{} {} {} {} {} {}\n", b.f ? 1 : 0, b.i_a, b.k_a, b.i_b, b.k_b, b.amplitude);
  }
  return out;
}

}  // namespace qimatch
