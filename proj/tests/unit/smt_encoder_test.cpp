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

#include "qsolver/smt_encoder.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "qsolver/error.hpp"
#include "qsolver/problem_io.hpp"
#include "qsolver/simulator.hpp"
#include "qsolver/smtlib.hpp"
#include "qsolver/solver_driver.hpp"
#include "test_util.hpp"

using namespace qsolver;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

smtlib::Assignment assignment_of(const IntervalModel& model) {
  smtlib::Assignment out;
  for (const auto& [name, iv] : model) out[name] = iv.midpoint();
  return out;
}

ProblemSpec single(int n, std::vector<GateInstance> seg, ConstraintSpec c) {
  return ProblemSpec{n, {Moment{std::move(seg), std::move(c)}}};
}

}  // namespace

TEST(format_real, examples) {
  EXPECT_EQ(format_real(0.0), "0.0");
  EXPECT_EQ(format_real(1.0), "1.0");
  EXPECT_EQ(format_real(0.29), "0.29");
  EXPECT_EQ(format_real(-0.5), "(- 0.5)");
  EXPECT_EQ(format_real(1e-13), "0.0000000000001");
}

TEST(format_real, round_trips_through_the_reader) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    EXPECT_EQ(smtlib::evaluate_real(smtlib::parse(format_real(x))[0], {}), x);
  }
}

TEST(amplitude_variable, naming) {
  EXPECT_EQ(amplitude_variable('a', 3, 0), "a_3_0");
  EXPECT_EQ(amplitude_variable('b', 0, 2), "b_0_2");
  EXPECT_TRUE(is_initial_variable("a_5_0"));
  EXPECT_FALSE(is_initial_variable("a_5_1"));
  EXPECT_FALSE(is_initial_variable("x"));
}

TEST(encode_problem, identity_on_one_qubit_matches_golden) {
  const auto problem = single(1, {}, {ConstraintFlag::In, {0}, ObservationSet{{"0"}}});
  const auto doc = encode_problem(problem, {});
  EXPECT_EQ(doc.declarations.size(), 8u);
  EXPECT_EQ(doc.to_smtlib(), read_file(QSOLVER_TEST_DATA_DIR "/identity_1q.smt2"));
}

TEST(encode_problem, worked_example_counts) {
  const auto problem =
      parse_problem(read_file(QSOLVER_TEST_DATA_DIR "/paper_example.txt"), 3);
  const auto doc = encode_problem(problem, {});
  EXPECT_EQ(doc.declarations.size(), 32u);
  // normalization + 16 transitions + 6 zero-probability assertions
  ASSERT_EQ(doc.assertions.size(), 23u);
  int zero = 0;
  for (const auto& a : doc.assertions) zero += a.ends_with(" 0.0)") ? 1 : 0;
  EXPECT_EQ(zero, 6);
  EXPECT_NO_THROW(smtlib::read_script(doc.to_smtlib()));
}

TEST(encode_transition, pauli_x_and_s) {
  const auto x = split_real_imag(build_gate_matrix("x", {}));
  EXPECT_EQ(encode_transition(x.real, x.imag, 1),
            (std::vector<std::string>{"(= a_0_1 a_1_0)", "(= a_1_1 a_0_0)", "(= b_0_1 b_1_0)",
                                      "(= b_1_1 b_0_0)"}));
  const auto s = split_real_imag(build_gate_matrix("s", {}));
  const auto eqs = encode_transition(s.real, s.imag, 2);
  ASSERT_EQ(eqs.size(), 4u);
  EXPECT_EQ(eqs[1], "(= a_1_2 (* (- 1.0) b_1_1))");
  EXPECT_EQ(eqs[3], "(= b_1_2 a_1_1)");
  EXPECT_THROW(encode_transition(s.real, s.imag, 0), FormatError);
}

TEST(encode_constraint, equality_gives_one_assertion_per_outcome) {
  const ConstraintSpec eq{ConstraintFlag::Eq, {0, 1}, Distribution{{0.25, 0.25, 0.25, 0.25}}};
  const auto out = encode_constraint(eq, 1, 2, 0.01);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0], "(<= (abs (- (+ (* a_0_1 a_0_1) (* b_0_1 b_0_1)) 0.25)) 0.01)");
}

TEST(encode_constraint, bounds_are_shifted_by_delta) {
  const ConstraintSpec gt{ConstraintFlag::Gt, {0}, PairList{{{1, 0.3}}}};
  const ConstraintSpec lt{ConstraintFlag::Lt, {0}, PairList{{{1, 0.38}}}};
  EXPECT_EQ(encode_constraint(gt, 1, 1, 0.01).front(),
            "(> (+ (* a_1_1 a_1_1) (* b_1_1 b_1_1)) 0.29)");
  EXPECT_EQ(encode_constraint(lt, 1, 1, 0.01).front(),
            "(<= (+ (* a_1_1 a_1_1) (* b_1_1 b_1_1)) 0.39)");
}

TEST(encode_exclusion, examples) {
  IntervalModel m{{"a_0_0", {0.5, 0.5}}, {"a_0_1", {0.1, 0.2}}};
  EXPECT_EQ(encode_exclusion(m, 0.0005), "(or (< a_0_0 0.4995) (> a_0_0 0.5005))");

  m["b_1_0"] = {-0.25, -0.25};
  const auto two = encode_exclusion(m, 0.0005);
  ASSERT_TRUE(two);
  const auto clause = smtlib::parse(*two)[0];
  EXPECT_EQ(clause.list().size(), 5u);  // "or" + four disjuncts

  EXPECT_FALSE(encode_exclusion(IntervalModel{{"a_0_1", {0.0, 0.0}}}, 0.0005));
}

TEST(encode_exclusion, sound_for_random_models) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double eps = 0.0005;
  for (int trial = 0; trial < 200; ++trial) {
    IntervalModel m;
    for (BasisIndex x = 0; x < 4; ++x) {
      for (char part : {'a', 'b'}) {
        const double lo = u(rng);
        m[amplitude_variable(part, x, 0)] = {lo, lo + 0.001};
      }
    }
    const auto clause = smtlib::parse(*encode_exclusion(m, eps))[0];
    auto inside = assignment_of(m);
    EXPECT_FALSE(smtlib::evaluate_bool(clause, inside));
    auto moved = inside;
    auto& v = moved[amplitude_variable('b', 2, 0)];
    v += 0.0005 + eps + 1e-6;
    EXPECT_TRUE(smtlib::evaluate_bool(clause, moved));
  }
}

TEST(encode_problem, exclusions_append_one_clause_each) {
  const auto problem = single(1, {{"h", {}, {0}}}, {ConstraintFlag::In, {0}, ObservationSet{{"0"}}});
  const auto base = encode_problem(problem, {});
  std::vector<IntervalModel> ex{IntervalModel{{"a_0_0", {1.0, 1.0}}},
                                IntervalModel{{"a_0_0", {0.5, 0.5}}}};
  const auto doc = encode_problem(problem, ex);
  ASSERT_EQ(doc.assertions.size(), base.assertions.size() + 2);
  EXPECT_TRUE(doc.assertions.back().starts_with("(or"));
}

TEST(encode_problem, substitution_of_simulated_states) {
  // Transitions and normalization hold for any simulated state; constraint truth follows the
  // marginal probabilities computed directly.
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    ProblemSpec p{n, {}};
    const double threshold = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    for (int k = 0; k < 2; ++k) {
      p.moments.push_back(
          {test_support::random_circuit(rng, n, 4), {ConstraintFlag::Gt, {0}, PairList{{{1, threshold}}}}});
    }
    const auto psi = test_support::random_state(rng, n);
    const auto doc = encode_problem(p, {});
    const auto values = assignment_of(point_model(p, psi));
    const auto script = smtlib::read_script(doc.to_smtlib());
    const std::size_t transitions = 2 * 2 * (std::size_t{1} << n);
    ASSERT_EQ(script.assertions.size(), 1 + transitions + 2);
    for (std::size_t i = 0; i <= transitions; ++i) {
      EXPECT_LT(smtlib::violation(script.assertions[i], values), 1e-9);
    }
    for (std::size_t k = 0; k < 2; ++k) {
      const std::vector<int> q0{0};
      const double mp = marginal_probs(run_to_moment(psi, p, k), q0)[1];
      if (std::abs(mp - (threshold - kDefaultSolveTolerance)) < 1e-9) continue;
      EXPECT_EQ(smtlib::evaluate_bool(script.assertions[1 + transitions + k], values),
                mp > threshold - kDefaultSolveTolerance);
    }
  }
}
