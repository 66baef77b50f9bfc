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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qsolver/model.hpp"
#include "qsolver/simulator.hpp"

namespace qsolver {

inline constexpr std::uint64_t kDefaultShots = 100000;
inline constexpr double kDefaultAssertionTolerance = 0.05;

/// Threshold for the aggregate frequency of an `in` set (before tolerance).
inline constexpr double kInThreshold = 0.95;
/// Threshold for the aggregate frequency of a `not_in` set (before tolerance).
inline constexpr double kNotInThreshold = 0.05;

struct AssertionVerdict {
  std::size_t moment = 0;
  bool pass = false;
  /// Outcome string -> observed frequency mp_x.
  std::map<std::string, double> observed;
  /// Human-readable form of the checked condition.
  std::string required;
  /// Signed slack of the binding inequality; positive (or zero for ==) iff pass.
  double margin = 0.0;
};

/// Checks measurement counts against one constraint. Throws FormatError when
/// the counts were taken over a different qubit list.
AssertionVerdict check_assertion(const MeasurementCounts& counts, const ConstraintSpec& constraint,
                                 double delta_i);

/// Same rules applied to a frequency vector indexed by marginal outcome; used
/// with exact marginal probabilities as the infinite-shot limit.
AssertionVerdict check_frequencies(std::span<const double> frequencies,
                                   const ConstraintSpec& constraint, double delta_i);

/// Re-simulates the prefix up to each moment, samples its measured qubits and
/// checks the moment's constraint. Moment k samples with seed + k.
std::vector<AssertionVerdict> verify_solution(const StateVector& state, const ProblemSpec& problem,
                                              std::uint64_t shots, double delta_i,
                                              std::uint64_t seed);

bool all_pass(std::span<const AssertionVerdict> verdicts) noexcept;

struct ScriptOptions {
  std::uint64_t shots = kDefaultShots;
  double delta_i = kDefaultAssertionTolerance;
  std::uint64_t seed = 0;
};

/// Standalone Python script for one moment: initializes `state`, replays
/// segments 0..k, measures the moment's qubits and asserts its condition.
/// Exits with status 1 when the assertion fails and prints a JSON summary line.
std::string render_assertion_script(const ProblemSpec& problem, std::size_t k,
                                    const StateVector& state, const ScriptOptions& options = {});

}  // namespace qsolver
