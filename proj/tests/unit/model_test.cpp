// Copyright 2026 The qsolver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsolver/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "qsolver/error.hpp"
#include "test_util.hpp"

using namespace qsolver;

TEST(index_of_bits, single_qubit) {
  const std::vector<int> qm{0};
  EXPECT_EQ(index_of_bits("1", qm, 1), (std::vector<BasisIndex>{1}));
}

TEST(index_of_bits, two_of_three_qubits) {
  // Enumeration oracle: keep x whose bit qm[j] equals bits[j].
  const std::vector<int> qm{0, 1};
  std::vector<BasisIndex> expected;
  for (BasisIndex x = 0; x < 8; ++x) {
    if (((x >> 0) & 1) == 0 && ((x >> 1) & 1) == 0) expected.push_back(x);
  }
  ASSERT_EQ(expected, (std::vector<BasisIndex>{0, 4}));
  EXPECT_EQ(index_of_bits("00", qm, 3), expected);
}

TEST(index_of_bits, observation_set_of_the_worked_example) {
  const std::vector<int> qm{0, 1, 2};
  const auto s = observation_indices(ObservationSet{{"010", "101"}}, qm, 3);
  ASSERT_EQ(s.size(), 2u);
  // char j is qubit j: '010' -> qubit 1 set -> 2; '101' -> qubits 0 and 2 -> 5
  EXPECT_EQ(s, (std::vector<BasisIndex>{2, 5}));
}

TEST(index_of_bits, rejects_length_mismatch) {
  const std::vector<int> qm{0, 1};
  EXPECT_THROW(index_of_bits("0", qm, 2), FormatError);
  EXPECT_THROW(index_of_bits("0a", qm, 2), FormatError);
}

TEST(index_of_bits, partitions_the_basis) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) all[q] = q;
    std::shuffle(all.begin(), all.end(), rng);
    const int k = std::uniform_int_distribution<int>(1, n)(rng);
    const std::vector<int> qm(all.begin(), all.begin() + k);

    std::multiset<BasisIndex> seen;
    for (BasisIndex o = 0; o < (BasisIndex{1} << k); ++o) {
      for (BasisIndex x : index_of_bits(outcome_string(o, qm.size()), qm, n)) seen.insert(x);
    }
    ASSERT_EQ(seen.size(), std::size_t{1} << n);
    for (BasisIndex x = 0; x < (BasisIndex{1} << n); ++x) ASSERT_EQ(seen.count(x), 1u);
  }
}

TEST(outcome_strings, round_trip_and_marginal_index) {
  EXPECT_EQ(outcome_string(2, 3), "010");
  EXPECT_EQ(parse_outcome_string("101"), 5u);
  const std::vector<int> qm{2, 0};
  // index 4 = qubit 2 set -> char 0 of the outcome string -> marginal 1
  EXPECT_EQ(marginal_index(4, qm), 1u);
  EXPECT_EQ(marginal_index(1, qm), 2u);
}

TEST(normalize, examples) {
  const StateVector unit(1, {1.0, 0.0});
  EXPECT_EQ(normalize(unit), unit);

  const auto scaled = normalize(StateVector(1, {2.0, 0.0}));
  EXPECT_DOUBLE_EQ(scaled[0].real(), 1.0);
  EXPECT_DOUBLE_EQ(scaled[1].real(), 0.0);

  const auto plus = normalize(StateVector(1, {1.0, 1.0}));
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(plus[0].real(), r, 1e-15);
  EXPECT_NEAR(plus[1].real(), r, 1e-15);
  EXPECT_NEAR(plus.norm_squared(), 1.0, 1e-12);
}

TEST(normalize, zero_vector_is_degenerate) {
  EXPECT_THROW(normalize(StateVector(2, std::vector<Amplitude>(4))), DegenerateStateError);
}

TEST(normalize, idempotent) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Amplitude> amps(8);
    for (auto& a : amps) a = Amplitude(gauss(rng), gauss(rng));
    const auto once = normalize(StateVector(3, amps));
    const auto twice = normalize(once);
    EXPECT_LT(test_support::max_abs_diff(once, twice), 1e-12);
    EXPECT_LT(std::abs(once.norm_squared() - 1.0), 1e-12);
  }
}

TEST(state_vector, validates_shape_and_values) {
  EXPECT_THROW(StateVector(2, std::vector<Amplitude>(3)), FormatError);
  EXPECT_THROW(StateVector(1, {Amplitude(NAN, 0.0), 0.0}), FormatError);
  EXPECT_THROW(StateVector(0, {}), FormatError);
  EXPECT_EQ(StateVector::basis(2, 3)[3], Amplitude(1.0));
}

TEST(flags, spellings_round_trip) {
  for (auto f : {ConstraintFlag::In, ConstraintFlag::NotIn, ConstraintFlag::Eq, ConstraintFlag::Gt,
                 ConstraintFlag::Lt}) {
    EXPECT_EQ(parse_flag(flag_spelling(f)), f);
  }
  EXPECT_EQ(flag_spelling(ConstraintFlag::Eq), "==");
  EXPECT_THROW(parse_flag(">="), FormatError);
}

TEST(validate_constraint, rejects_bad_payloads) {
  ConstraintSpec c{ConstraintFlag::In, {0, 0}, ObservationSet{{"00"}}};
  EXPECT_THROW(validate_constraint(c, 2), FormatError);  // repeated qubit
  c.measured = {0, 2};
  EXPECT_THROW(validate_constraint(c, 2), FormatError);  // out of range
  c.measured = {0, 1};
  c.payload = ObservationSet{{"0"}};
  EXPECT_THROW(validate_constraint(c, 2), FormatError);  // length mismatch

  ConstraintSpec eq{ConstraintFlag::Eq, {0}, Distribution{{0.5, 0.5, 0.0}}};
  EXPECT_THROW(validate_constraint(eq, 1), FormatError);
  eq.payload = Distribution{{0.7, 0.7}};
  EXPECT_NO_THROW(validate_constraint(eq, 1));
  EXPECT_THROW(validate_constraint(eq, 1, 0.01), FormatError);  // 1.4 > 1 + 0.02

  ConstraintSpec gt{ConstraintFlag::Gt, {0}, PairList{{{2, 0.3}}}};
  EXPECT_THROW(validate_constraint(gt, 1), FormatError);
  gt.payload = ObservationSet{{"0"}};
  EXPECT_THROW(validate_constraint(gt, 1), FormatError);  // wrong payload kind
}

TEST(outcomes, status_names) {
  EXPECT_EQ(status_name(SolveOutcome{UnsatOutcome{}}), "unsat");
  EXPECT_EQ(status_name(SolveOutcome{TimeoutOutcome{1.0}}), "timeout");
  EXPECT_EQ(status_name(SolveOutcome{NoFeasibleOutcome{}}), "nf");
  EXPECT_EQ(status_name(SolveOutcome{SatOutcome{{}, StateVector::basis(1, 0), 1}}), "sat");
}
