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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qsolver/model.hpp"
#include "qsolver/smt_encoder.hpp"

namespace qsolver {

inline constexpr double kDefaultPrecision = 0.001;
inline constexpr const char* kSolverPathEnv = "QSOLVER_SOLVER_PATH";

/// A model covering at least the t = 0 variables.
struct SolverSat {
  IntervalModel model;
  /// Remaining constraint violation (0 for an external backend).
  double residual = 0.0;
};
struct SolverUnsat {
  /// Smallest penalty reached by the numeric search; 0 when proved exactly.
  double residual = 0.0;
};
struct SolverTimeout {
  double elapsed_seconds = 0.0;
};
/// Best candidate of a search that neither converged nor ruled the problem out.
struct SolverUnknown {
  IntervalModel best;
  double residual = 0.0;
};

using SolverResult = std::variant<SolverSat, SolverUnsat, SolverTimeout, SolverUnknown>;

/// How a backend prints its verdict and model. The defaults read dReal 4:
///
///   delta-sat with delta = 0.001
///   a_0_0 : [0.70710678118654746, 0.70710678118654757]
struct OutputDialect {
  std::vector<std::string> sat_markers{"delta-sat", "sat"};
  std::vector<std::string> unsat_markers{"unsat"};
  /// Separators between a variable name and its interval.
  std::vector<std::string> separators{":", "="};
};

struct ExternalSolverOptions {
  std::string executable;
  double precision = kDefaultPrecision;
  double timeout_seconds = 1000.0;
  std::filesystem::path work_dir = ".";
  std::string file_name = "attempt_1.smt2";
  /// Argument list; "{precision}" and "{file}" are substituted.
  std::vector<std::string> arguments{"--precision", "{precision}", "--model", "{file}"};
  OutputDialect dialect;
};

/// Interprets backend stdout. Throws BackendOutputError when no verdict is found.
SolverResult parse_solver_output(std::string_view output, const OutputDialect& dialect = {});

/// Explicit path first, then $QSOLVER_SOLVER_PATH. Empty when neither is set.
std::optional<std::string> resolve_solver_path(const std::optional<std::string>& explicit_path);

/// Writes the document, runs the backend and parses its output. The process
/// is killed once the timeout elapses. Throws BackendNotFoundError when the
/// executable cannot be started.
SolverResult run_external(const SmtDocument& document, const ExternalSolverOptions& options);

/// Interval midpoints as amplitudes, renormalized. Throws FormatError when a
/// t = 0 variable is missing and DegenerateStateError on an all-zero result.
StateVector extract_state(const IntervalModel& model, int num_qubits);

/// Every a/b variable of every step as a point interval, obtained by
/// simulating `initial` through the problem.
IntervalModel point_model(const ProblemSpec& problem, const StateVector& initial);

struct FallbackOptions {
  double eps = kDefaultExclusionSlack;
  double delta_eq = kDefaultSolveTolerance;
  /// Random restarts of the penalty search (also the number of resamples on
  /// the subspace route).
  int budget = 24;
  std::uint64_t seed = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Penalty below which a point counts as feasible.
  double feasible_penalty = 1e-10;
  /// Best penalty above which the problem is reported unsatisfiable.
  double unsat_penalty = 1e-6;
};

/// Built-in solver. Problems made only of in/not_in constraints are solved
/// exactly: the feasible inputs form the intersection of the preimages of the
/// allowed subspaces. Anything else goes to penalty_solve.
SolverResult fallback_solve(const ProblemSpec& problem, std::span<const IntervalModel> exclusions,
                            const FallbackOptions& options = {});

/// Random restarts plus coordinate descent on the squared constraint
/// violations (including exclusions) over the normalized input state.
SolverResult penalty_solve(const ProblemSpec& problem, std::span<const IntervalModel> exclusions,
                           const FallbackOptions& options = {});

/// The objective minimized by penalty_solve; `initial` is used as given.
double constraint_penalty(const ProblemSpec& problem, const StateVector& initial,
                          std::span<const IntervalModel> exclusions, double eps, double delta_eq);

}  // namespace qsolver
