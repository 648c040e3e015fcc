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
#include <random>

#include "qimatch/fixtures.hpp"
#include "qimatch/joint_state.hpp"
#include "test_support.hpp"

using namespace qimatch;

namespace {

struct Pair {
  Image big;
  Image small;
  MatchDims dims;
  GqirImage enc_big;
  GqirImage enc_small;
};

Pair make_pair(Image big, Image small) {
  const MatchDims dims = validate_pair(big, small);
  GqirImage eb = encode_gqir(big, dims);
  GqirImage es = encode_gqir(small, dims);
  return Pair{std::move(big), std::move(small), dims, std::move(eb), std::move(es)};
}

Pair worked_example() {
  return make_pair(fixtures::worked_example_big(), fixtures::worked_example_small());
}

const Branch& branch_at(const JointState& s, PositionIndex k_a, PositionIndex k_b) {
  const std::uint64_t per_a = std::uint64_t{1} << (2 * s.dims().m);
  return s.branches()[k_a * per_a + k_b];
}

}  // namespace

TEST_CASE("prepare_initial on the worked example") {
  const Pair p = worked_example();
  const JointState s = prepare_initial(p.enc_big, p.enc_small);
  CHECK(s.stage() == Stage::kPrepared);
  CHECK(s.branches().size() == 64);
  CHECK(branch_at(s, 0, 0) == Branch{false, 162, 0, 160, 0, 0.125});
  CHECK(s.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("prepare_initial smallest pair") {
  const Pair p = make_pair(Image(2, 2, 2, {1, 2, 3, 0}), Image(1, 1, 2, {3}));
  const JointState s = prepare_initial(p.enc_big, p.enc_small);
  CHECK(s.branches().size() == 4);
  for (const Branch& b : s.branches()) CHECK(b.amplitude == 0.5);
}

TEST_CASE("prepare_initial rejects inconsistent encodings") {
  const Pair p = worked_example();
  CHECK_THROWS_AS(prepare_initial(p.enc_small, p.enc_big), ValidationError);
  GqirImage deeper = p.enc_small;
  deeper.bit_depth = 9;
  CHECK_THROWS_AS(prepare_initial(p.enc_big, deeper), ValidationError);
}

TEST_CASE("golden dumps match the worked-example listings") {
  const Pair p = worked_example();
  const JointState s0 = prepare_initial(p.enc_big, p.enc_small);
  CHECK(dump(s0) == testing::read_text(QIMATCH_TEST_DATA "/fig7_psi0.txt"));
  const JointState s2 = apply_u2(apply_u1(s0));
  CHECK(dump(s2) == testing::read_text(QIMATCH_TEST_DATA "/fig7_psi2.txt"));
}

TEST_CASE("apply_u1 xors intensities") {
  const Pair p = worked_example();
  const JointState s0 = prepare_initial(p.enc_big, p.enc_small);
  const JointState s1 = apply_u1(s0);
  CHECK(s1.stage() == Stage::kAfterU1);
  CHECK(branch_at(s1, 0, 0).i_a == 2);
  CHECK(branch_at(s1, 5, 0).i_a == 0);  // equal pixels

  // involution: xor with i_b again restores every original i_a
  for (std::size_t j = 0; j < s0.branches().size(); ++j) {
    const Branch& before = s0.branches()[j];
    const Branch& after = s1.branches()[j];
    CHECK((after.i_a ^ after.i_b) == before.i_a);
    CHECK(after.amplitude == before.amplitude);
    CHECK(after.i_b == before.i_b);
  }
}

TEST_CASE("apply_u2 marks only i_a == 0 and k_b == 0") {
  const Pair p = worked_example();
  const JointState s1 = apply_u1(prepare_initial(p.enc_big, p.enc_small));
  const JointState s2 = apply_u2(s1);
  CHECK(s2.stage() == Stage::kAfterU2);
  CHECK(branch_at(s2, 5, 0).f);
  CHECK(branch_at(s2, 3, 3).i_a == 0);
  CHECK_FALSE(branch_at(s2, 3, 3).f);
  for (std::size_t j = 0; j < s1.branches().size(); ++j) {
    Branch expected = s1.branches()[j];
    expected.f = expected.i_a == 0 && expected.k_b == 0;
    CHECK(s2.branches()[j] == expected);
  }
}

TEST_CASE("stage ordering is enforced") {
  const Pair p = worked_example();
  const JointState s0 = prepare_initial(p.enc_big, p.enc_small);
  CHECK_THROWS_AS(apply_u2(s0), StageError);
  CHECK_THROWS_AS(marked_set(s0), StageError);
  const JointState s1 = apply_u1(s0);
  CHECK_THROWS_AS(apply_u1(s1), StageError);
  CHECK_THROWS_AS(marked_set(s1), StageError);
  const JointState s2 = apply_u2(s1);
  CHECK_THROWS_AS(apply_u1(s2), StageError);
  CHECK_THROWS_AS(apply_u2(s2), StageError);
}

TEST_CASE("marked_set") {
  SUBCASE("worked example") {
    const Pair p = worked_example();
    CHECK(marked_set(apply_u2(apply_u1(prepare_initial(p.enc_big, p.enc_small)))) ==
          std::vector<PositionIndex>{5});
  }
  SUBCASE("no match") {
    const Pair p = make_pair(Image(2, 2, 3, {1, 2, 3, 4}), Image(1, 1, 3, {7}));
    CHECK(marked_set(apply_u2(apply_u1(prepare_initial(p.enc_big, p.enc_small)))).empty());
  }
  SUBCASE("value repeated l times") {
    const Pair p = make_pair(Image(4, 4, 4, {9, 1, 9, 2, 3, 4, 5, 9, 6, 7, 8, 0, 9, 1, 2, 3}),
                             Image(2, 2, 4, {9, 0, 0, 0}));
    CHECK(marked_set(apply_u2(apply_u1(prepare_initial(p.enc_big, p.enc_small)))) ==
          std::vector<PositionIndex>{0, 2, 7, 12});
  }
  SUBCASE("random 8x8 against a linear scan") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
      const Pair p = make_pair(testing::random_image(rng, 8, 3), testing::random_image(rng, 2, 3));
      CHECK(marked_set(apply_u2(apply_u1(prepare_initial(p.enc_big, p.enc_small)))) ==
            testing::scan_anchor(p.big, p.small.pixels()[0]));
    }
  }
}

TEST_CASE("property: pipeline invariants on random instances") {
  std::mt19937_64 rng(424242);
  for (int rep = 0; rep < 200; ++rep) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 3);
    const unsigned m = static_cast<unsigned>(rng() % n);
    const unsigned q = 1 + static_cast<unsigned>(rng() % 4);
    const Pair p = make_pair(testing::random_image(rng, std::size_t{1} << n, q),
                             testing::random_image(rng, std::size_t{1} << m, q));
    const std::size_t expected_branches = std::size_t{1} << (2 * n + 2 * m);

    const JointState s0 = prepare_initial(p.enc_big, p.enc_small);
    const JointState s1 = apply_u1(s0);
    const JointState s2 = apply_u2(s1);
    for (const JointState* s : {&s0, &s1, &s2}) {
      CHECK(s->branches().size() == expected_branches);
      CHECK(std::abs(s->squared_norm() - 1.0) <= 1e-12);
    }
    for (std::size_t j = 0; j < expected_branches; ++j) {
      const Branch& b1 = s1.branches()[j];
      const Branch& b2 = s2.branches()[j];
      CHECK(b2.f == (b1.i_a == 0 && b1.k_b == 0));
      CHECK(b2.i_a == b1.i_a);
      CHECK(b2.k_a == b1.k_a);
      CHECK(b2.k_b == b1.k_b);
      CHECK(b2.amplitude == b1.amplitude);
    }
    CHECK(marked_set(s2) == testing::scan_anchor(p.big, p.small.pixels()[0]));
  }
}
