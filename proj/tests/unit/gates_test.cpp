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

#include "qsolver/gates.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qsolver/error.hpp"
#include "test_util.hpp"

using namespace qsolver;
using namespace std::complex_literals;
using test_support::max_abs_diff;

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix eye(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix m2(Amplitude a, Amplitude b, Amplitude c, Amplitude d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const ComplexMatrix kX = m2(0.0, 1.0, 1.0, 0.0);
const ComplexMatrix kP0 = m2(1.0, 0.0, 0.0, 0.0);
const ComplexMatrix kP1 = m2(0.0, 0.0, 0.0, 1.0);

// Single-qubit operator on qubit q of n; qubit 0 is the rightmost Kronecker factor.
ComplexMatrix on_qubit(const ComplexMatrix& u, int q, int n) {
  return kron(kron(eye(Eigen::Index{1} << (n - 1 - q)), u), eye(Eigen::Index{1} << q));
}

// Reference embedding by definition: equal on untouched bits, local block otherwise.
ComplexMatrix embed_by_definition(const ComplexMatrix& local, const std::vector<int>& qs, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  BasisIndex mask = 0;
  for (int q : qs) mask |= BasisIndex{1} << q;
  auto local_of = [&](BasisIndex x) {
    Eigen::Index l = 0;
    for (std::size_t j = 0; j < qs.size(); ++j) l |= static_cast<Eigen::Index>((x >> qs[j]) & 1) << j;
    return l;
  };
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (BasisIndex r = 0; r < static_cast<BasisIndex>(dim); ++r)
    for (BasisIndex c = 0; c < static_cast<BasisIndex>(dim); ++c)
      if ((r & ~mask) == (c & ~mask)) out(r, c) = local(local_of(r), local_of(c));
  return out;
}

}  // namespace

TEST(gate_catalog, has_all_gates_once) {
  const auto cat = gate_catalog();
  EXPECT_EQ(cat.size(), 29u);
  for (const auto& g : cat) {
    const auto found = find_gate(g.name);
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(found->arity, g.arity);
  }
  EXPECT_FALSE(find_gate("cnot").has_value());
}

TEST(build_gate_matrix, fixed_examples) {
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LT(max_abs_diff(build_gate_matrix("x", {}), kX), 1e-15);
  EXPECT_LT(max_abs_diff(build_gate_matrix("h", {}), m2(r, r, r, -r)), 1e-15);
  const double zero = 0.0;
  EXPECT_LT(max_abs_diff(build_gate_matrix("rz", {&zero, 1}), eye(2)), 1e-15);
  EXPECT_LT(max_abs_diff(build_gate_matrix("s", {}), m2(1.0, 0.0, 0.0, 1i)), 1e-15);
  const double theta = std::numbers::pi;
  EXPECT_LT(max_abs_diff(build_gate_matrix("rx", {&theta, 1}), m2(0.0, -1i, -1i, 0.0)), 1e-15);
}

TEST(build_gate_matrix, controlled_gates_put_controls_on_low_bits) {
  const ComplexMatrix expected = kron(kX, kP1) + kron(eye(2), kP0);
  EXPECT_LT(max_abs_diff(build_gate_matrix("cx", {}), expected), 1e-15);

  const ComplexMatrix ccx = kron(kX, kron(kP1, kP1)) + kron(eye(2), eye(4) - kron(kP1, kP1));
  EXPECT_LT(max_abs_diff(build_gate_matrix("ccx", {}), ccx), 1e-15);
}

TEST(embed_gate, x_on_qubit_one_of_two) {
  const auto u = embed_gate({"x", {}, {1}}, 2);
  // 0 <-> 2 and 1 <-> 3
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(2, 0) = expected(0, 2) = expected(3, 1) = expected(1, 3) = 1.0;
  EXPECT_LT(max_abs_diff(u, expected), 1e-15);
}

TEST(embed_gate, cx_zero_to_one) {
  const auto u = embed_gate({"cx", {}, {0, 1}}, 2);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(2, 2) = 1.0;
  expected(3, 1) = expected(1, 3) = 1.0;
  EXPECT_LT(max_abs_diff(u, expected), 1e-15);
}

TEST(embed_gate, single_qubit_matches_kronecker_product) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 4; ++n) {
    for (int q = 0; q < n; ++q) {
      for (const char* name : {"h", "t", "sx", "y"}) {
        const GateInstance g{name, {}, {q}};
        EXPECT_LT(max_abs_diff(embed_gate(g, n), on_qubit(build_gate_matrix(name, {}), q, n)),
                  1e-15)
            << name << " on " << q << " of " << n;
      }
    }
  }
}

TEST(embed_gate, matches_definition_for_random_gates) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 4)(rng);
    const auto g = test_support::random_gate(rng, n);
    const auto local = build_gate_matrix(g.name, g.params);
    EXPECT_LT(max_abs_diff(embed_gate(g, n), embed_by_definition(local, g.qubits, n)), 1e-15)
        << g.name;
  }
}

TEST(compose_segment, h_then_t_by_hand) {
  const std::vector<GateInstance> seg{{"h", {}, {0}}, {"t", {}, {0}}};
  const double r = 1.0 / std::sqrt(2.0);
  const Amplitude w = std::polar(1.0, std::numbers::pi / 4);
  // T * H
  EXPECT_LT(max_abs_diff(compose_segment(seg, 1), m2(r, r, r * w, -r * w)), 1e-15);
}

TEST(compose_segment, empty_is_identity) {
  EXPECT_EQ(compose_segment({}, 3), eye(8));
}

TEST(compose_segment, single_gate_equals_embed_exactly) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = test_support::random_gate(rng, 3);
    const std::vector<GateInstance> seg{g};
    EXPECT_EQ(compose_segment(seg, 3), embed_gate(g, 3));
  }
}

TEST(compose_segment, concatenation_is_product) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = test_support::random_circuit(rng, 3, 4);
    const auto b = test_support::random_circuit(rng, 3, 5);
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    EXPECT_LT(max_abs_diff(compose_segment(ab, 3), compose_segment(b, 3) * compose_segment(a, 3)),
              1e-12);
  }
}

TEST(gate_matrices, random_instances_are_unitary) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = test_support::random_gate(rng, 4);
    EXPECT_LT(unitarity_defect(embed_gate(g, 4)), 1e-9) << g.name;
  }
}

TEST(gate_matrices, self_inverse_gates_square_to_identity) {
  for (const auto& sig : gate_catalog()) {
    if (!sig.self_inverse) continue;
    const auto u = build_gate_matrix(sig.name, {});
    EXPECT_LT(max_abs_diff(u * u, eye(u.rows())), 1e-12) << sig.name;
  }
}

TEST(split_real_imag, examples) {
  const auto x = split_real_imag(kX);
  EXPECT_EQ(x.real, kX.real());
  EXPECT_TRUE(x.imag.isZero(0.0));

  const auto y = split_real_imag(build_gate_matrix("y", {}));
  RealMatrix y_imag(2, 2);
  y_imag << 0, -1, 1, 0;
  EXPECT_TRUE(y.real.isZero(0.0));
  EXPECT_EQ(y.imag, y_imag);

  const auto s = split_real_imag(build_gate_matrix("s", {}));
  RealMatrix s_real(2, 2), s_imag(2, 2);
  s_real << 1, 0, 0, 0;
  s_imag << 0, 0, 0, 1;
  EXPECT_LT((s.real - s_real).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(s.imag, s_imag);
}

TEST(validate_gate, rejects_bad_instances) {
  EXPECT_THROW(validate_gate({"foo", {}, {0}}, 2), GateError);
  EXPECT_THROW(validate_gate({"cx", {}, {0, 0}}, 2), GateError);
  EXPECT_THROW(validate_gate({"cx", {}, {0}}, 2), GateError);
  EXPECT_THROW(validate_gate({"rz", {}, {0}}, 2), GateError);
  EXPECT_THROW(validate_gate({"x", {}, {2}}, 2), GateError);
  EXPECT_NO_THROW(validate_gate({"ccx", {}, {2, 0, 1}}, 3));
}
