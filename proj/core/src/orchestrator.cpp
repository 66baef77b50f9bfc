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

#include "qsolver/orchestrator.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "qsolver/error.hpp"

namespace qsolver {

namespace {

using clock_type = std::chrono::steady_clock;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

void RunConfig::validate() const {
  if (num_qubits < 1 || num_qubits > kMaxQubits) throw FormatError("qubit count out of range");
  if (!(precision > 0.0)) throw FormatError("precision must be positive");
  if (!(delta_eq > 0.0)) throw FormatError("delta_eq must be positive");
  if (!(delta_i > 0.0 && delta_i < 0.5)) throw FormatError("delta_i must be in (0, 0.5)");
  if (!(eps > 0.0)) throw FormatError("eps must be positive");
  if (shots < 1) throw FormatError("shots must be at least 1");
  if (max_attempts < 1) throw FormatError("max_attempts must be at least 1");
  if (!(timeout_seconds > 0.0)) throw FormatError("timeout must be positive");
}

ExternalBackend::ExternalBackend(std::string executable, double precision,
                                 std::filesystem::path work_dir)
    : executable_(std::move(executable)), precision_(precision), work_dir_(std::move(work_dir)) {}

SolverResult ExternalBackend::solve(const ProblemSpec&, const SmtDocument& document,
                                    std::span<const IntervalModel>, int attempt,
                                    double remaining_seconds) {
  ExternalSolverOptions options;
  options.executable = executable_;
  options.precision = precision_;
  options.timeout_seconds = remaining_seconds;
  options.work_dir = work_dir_;
  options.file_name = "attempt_" + std::to_string(attempt) + ".smt2";
  return run_external(document, options);
}

FallbackBackend::FallbackBackend(double eps, double delta_eq, std::uint64_t seed)
    : eps_(eps), delta_eq_(delta_eq), seed_(seed) {}

SolverResult FallbackBackend::solve(const ProblemSpec& problem, const SmtDocument&,
                                    std::span<const IntervalModel> exclusions, int attempt,
                                    double remaining_seconds) {
  FallbackOptions options;
  options.eps = eps_;
  options.delta_eq = delta_eq_;
  options.seed = seed_ + static_cast<std::uint64_t>(attempt);
  options.deadline = clock_type::now() + std::chrono::duration_cast<clock_type::duration>(
                                             std::chrono::duration<double>(remaining_seconds));
  return fallback_solve(problem, exclusions, options);
}

RunSummary solve_loop(const ProblemSpec& problem, const RunConfig& config, SolverBackend& backend,
                      const LoopHooks& hooks) {
  config.validate();
  validate_problem(problem, config.delta_eq);
  if (problem.num_qubits != config.num_qubits) {
    throw FormatError("problem and configuration disagree on the qubit count");
  }

  const auto start = clock_type::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock_type::now() - start).count(); };
  VerifyFn verify = hooks.verify;
  if (!verify) {
    verify = [&config](const StateVector& s, const ProblemSpec& p, int attempt) {
      return verify_solution(s, p, config.shots, config.delta_i,
                             config.seed + 1000003ULL * static_cast<std::uint64_t>(attempt));
    };
  }

  RunSummary summary;
  summary.seed = config.seed;
  summary.backend = backend.name();
  std::vector<IntervalModel> exclusions;
  std::vector<StateVector> failed;

  auto finish = [&](SolveOutcome outcome) {
    summary.outcome = std::move(outcome);
    summary.elapsed_seconds = elapsed();
    return summary;
  };

  for (int attempt = 1; attempt <= config.max_attempts; ++attempt) {
    if (elapsed() >= config.timeout_seconds) return finish(TimeoutOutcome{elapsed()});

    const SmtDocument doc = encode_problem(problem, exclusions, config.eps, config.delta_eq);
    if (hooks.on_document) hooks.on_document(attempt, doc);
    summary.attempts = attempt;
    const SolverResult result =
        backend.solve(problem, doc, exclusions, attempt, config.timeout_seconds - elapsed());

    const IntervalModel* model = std::visit(
        overloaded{[](const SolverSat& s) -> const IntervalModel* { return &s.model; },
                   [](const SolverUnknown& s) -> const IntervalModel* { return &s.best; },
                   [](const auto&) -> const IntervalModel* { return nullptr; }},
        result);
    if (std::holds_alternative<SolverUnsat>(result)) return finish(UnsatOutcome{});
    if (std::holds_alternative<SolverTimeout>(result)) return finish(TimeoutOutcome{elapsed()});

    std::optional<StateVector> state;
    try {
      state = extract_state(*model, problem.num_qubits);
    } catch (const DegenerateStateError&) {
      // counts as a failed candidate; the exclusion pushes the search away
      failed.push_back(StateVector(problem.num_qubits,
                                   std::vector<Amplitude>(std::size_t{1} << problem.num_qubits)));
      exclusions.push_back(*model);
      summary.verdicts.clear();
      continue;
    } catch (const FormatError& e) {
      throw BackendOutputError(std::string("unusable model: ") + e.what(), "");
    }

    summary.verdicts = verify(*state, problem, attempt);
    if (all_pass(summary.verdicts)) return finish(SatOutcome{*model, *state, attempt});
    failed.push_back(*state);
    exclusions.push_back(*model);
  }
  return finish(NoFeasibleOutcome{std::move(failed)});
}

std::unique_ptr<SolverBackend> make_backend(const RunConfig& config) {
  if (!config.use_fallback) {
    if (auto path = resolve_solver_path(config.solver_path)) {
      return std::make_unique<ExternalBackend>(*path, config.precision, config.work_dir);
    }
  }
  return std::make_unique<FallbackBackend>(config.eps, config.delta_eq, config.seed);
}

RunSummary solve_loop(const RunConfig& config, const LoopHooks& hooks) {
  std::ifstream in(config.problem_path);
  if (!in) throw FormatError("cannot read problem file '" + config.problem_path.string() + "'");
  std::stringstream text;
  text << in.rdbuf();
  const ProblemSpec problem = parse_problem(text.str(), config.num_qubits);
  auto backend = make_backend(config);
  return solve_loop(problem, config, *backend, hooks);
}

int exit_code(const SolveOutcome& outcome) noexcept {
  switch (outcome.index()) {
    case 0:
      return 0;
    case 1:
      return 2;
    case 2:
      return 3;
    default:
      return 4;
  }
}

}  // namespace qsolver
