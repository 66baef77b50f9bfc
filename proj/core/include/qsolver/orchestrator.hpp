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
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsolver/model.hpp"
#include "qsolver/problem_io.hpp"
#include "qsolver/smt_encoder.hpp"
#include "qsolver/solver_driver.hpp"
#include "qsolver/verifier.hpp"

namespace qsolver {

struct RunConfig {
  int num_qubits = 1;
  std::filesystem::path problem_path;
  std::optional<std::string> solver_path;
  double precision = kDefaultPrecision;
  double delta_eq = kDefaultSolveTolerance;
  double delta_i = kDefaultAssertionTolerance;
  std::uint64_t shots = kDefaultShots;
  double eps = kDefaultExclusionSlack;
  int max_attempts = 10;
  double timeout_seconds = 1000.0;
  std::uint64_t seed = 0;
  bool use_fallback = false;
  std::filesystem::path work_dir = "qsolver_work";

  /// Throws FormatError when a tolerance is not positive or max_attempts < 1.
  void validate() const;
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  /// `remaining_seconds` is what is left of the run's cumulative budget.
  virtual SolverResult solve(const ProblemSpec& problem, const SmtDocument& document,
                             std::span<const IntervalModel> exclusions, int attempt,
                             double remaining_seconds) = 0;
};

/// Writes attempt_<k>.smt2 into the work directory and runs the external binary.
class ExternalBackend final : public SolverBackend {
 public:
  ExternalBackend(std::string executable, double precision, std::filesystem::path work_dir);
  std::string name() const override { return "external"; }
  SolverResult solve(const ProblemSpec& problem, const SmtDocument& document,
                     std::span<const IntervalModel> exclusions, int attempt,
                     double remaining_seconds) override;

 private:
  std::string executable_;
  double precision_;
  std::filesystem::path work_dir_;
};

class FallbackBackend final : public SolverBackend {
 public:
  FallbackBackend(double eps, double delta_eq, std::uint64_t seed);
  std::string name() const override { return "fallback"; }
  SolverResult solve(const ProblemSpec& problem, const SmtDocument& document,
                     std::span<const IntervalModel> exclusions, int attempt,
                     double remaining_seconds) override;

 private:
  double eps_;
  double delta_eq_;
  std::uint64_t seed_;
};

using VerifyFn = std::function<std::vector<AssertionVerdict>(const StateVector&,
                                                             const ProblemSpec&, int attempt)>;

struct LoopHooks {
  /// Replaces the sampling verifier.
  VerifyFn verify;
  /// Called with every document before it is solved.
  std::function<void(int attempt, const SmtDocument&)> on_document;
};

/// Encode, solve, extract, verify; on a failed verification the candidate is
/// excluded and the next attempt starts. The time budget is cumulative.
RunSummary solve_loop(const ProblemSpec& problem, const RunConfig& config, SolverBackend& backend,
                      const LoopHooks& hooks = {});

/// External backend when a solver path resolves and use_fallback is off,
/// otherwise the built-in fallback.
std::unique_ptr<SolverBackend> make_backend(const RunConfig& config);

/// Reads and parses config.problem_path, then runs solve_loop.
RunSummary solve_loop(const RunConfig& config, const LoopHooks& hooks = {});

/// 0 sat, 2 unsat, 3 timeout, 4 nf.
int exit_code(const SolveOutcome& outcome) noexcept;

}  // namespace qsolver
