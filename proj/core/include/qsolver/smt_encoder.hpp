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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsolver/gates.hpp"
#include "qsolver/model.hpp"

namespace qsolver {

inline constexpr double kDefaultSolveTolerance = 0.01;
inline constexpr double kDefaultExclusionSlack = 0.0005;
/// Transition coefficients with smaller magnitude are not emitted.
inline constexpr double kCoefficientCutoff = 1e-12;

/// An SMT-LIB2 problem over real variables a_<i>_<t> / b_<i>_<t>, the real
/// and imaginary parts of amplitude i after moment t (t = 0 is the input).
struct SmtDocument {
  std::string logic = "QF_NRA";
  std::vector<std::string> declarations;
  /// Bodies of the (assert ...) commands.
  std::vector<std::string> assertions;

  std::string to_smtlib() const;
};

std::string amplitude_variable(char part, BasisIndex index, std::size_t step);

/// Decimal literal accepted by SMT-LIB readers: shortest round-trip digits,
/// never exponent notation, negatives written as (- x).
std::string format_real(double value);

/// (+ (* a_x_t a_x_t) (* b_x_t b_x_t))
std::string probability_term(BasisIndex index, std::size_t step);

/// Σ_x (a_x_0² + b_x_0²) = 1
std::string encode_normalization(int num_qubits);

/// a_i_t = Σ R_ij a_j_{t-1} - M_ij b_j_{t-1}, b_i_t = Σ M_ij a_j_{t-1} + R_ij b_j_{t-1}.
/// Emits the a-equalities for every i, then the b-equalities.
std::vector<std::string> encode_transition(const RealMatrix& real, const RealMatrix& imag,
                                           std::size_t step);

/// Probability constraints of one moment over the step-`step` variables.
std::vector<std::string> encode_constraint(const ConstraintSpec& constraint, std::size_t step,
                                           int num_qubits, double delta_eq);

/// One disjunction forcing some t = 0 variable out of its widened interval.
/// Returns nothing for a model without t = 0 entries.
std::optional<std::string> encode_exclusion(const IntervalModel& model, double eps);

SmtDocument encode_problem(const ProblemSpec& problem, std::span<const IntervalModel> exclusions,
                           double eps = kDefaultExclusionSlack,
                           double delta_eq = kDefaultSolveTolerance);

/// True for names of the form a_<i>_0 / b_<i>_0.
bool is_initial_variable(const std::string& name);

}  // namespace qsolver
