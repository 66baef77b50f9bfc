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

// qsolver: find input states of a quantum program that satisfy measurement
// constraints at several moments.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qsolver/error.hpp"
#include "qsolver/orchestrator.hpp"
#include "qsolver/problem_io.hpp"
#include "qsolver/smt_encoder.hpp"
#include "qsolver/verifier.hpp"

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw qsolver::FormatError("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw qsolver::Error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solve multi-moment measurement constraints on quantum program inputs"};
  app.set_version_flag("--version", "qsolver 0.1.0");

  qsolver::RunConfig config;
  std::string problem_path;
  std::string solver_path;
  std::string work_dir = config.work_dir.string();
  std::string report_path;
  std::string scripts_dir;
  bool emit_smt_only = false;

  app.add_option("-n,--qubits", config.num_qubits, "Number of qubits")
      ->required()
      ->check(CLI::Range(1, qsolver::kMaxQubits));
  app.add_option("-p,--problem", problem_path, "Problem file")->required()->check(CLI::ExistingFile);
  app.add_option("--solver-path", solver_path,
                 std::string("External delta-decision solver (default: $") +
                     qsolver::kSolverPathEnv + ")");
  app.add_option("--precision", config.precision, "Backend precision")->capture_default_str();
  app.add_option("--delta-eq", config.delta_eq, "Solve-time tolerance for ==, >, <")
      ->capture_default_str();
  app.add_option("--delta-i", config.delta_i, "Assertion tolerance")->capture_default_str();
  app.add_option("--shots", config.shots, "Measurement shots per assertion")->capture_default_str();
  app.add_option("--eps", config.eps, "Exclusion slack around rejected models")
      ->capture_default_str();
  app.add_option("--max-attempts", config.max_attempts, "Failed verifications before giving up")
      ->capture_default_str();
  app.add_option("--timeout", config.timeout_seconds, "Cumulative time budget in seconds")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Seed for sampling and the built-in solver")
      ->capture_default_str();
  app.add_flag("--use-fallback", config.use_fallback, "Use the built-in solver even if a backend is set");
  app.add_option("--workdir", work_dir, "Directory for attempt_<k>.smt2 files")->capture_default_str();
  app.add_flag("--emit-smt-only", emit_smt_only, "Write attempt_1.smt2 and stop");
  app.add_option("--emit-scripts", scripts_dir, "Write assert_moment_<k>.py for a solution here");
  app.add_option("--report", report_path, "Write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  config.problem_path = problem_path;
  config.work_dir = work_dir;
  if (!solver_path.empty()) config.solver_path = solver_path;

  try {
    config.validate();
    const auto problem = qsolver::parse_problem(read_file(config.problem_path), config.num_qubits);

    if (emit_smt_only) {
      const auto doc = qsolver::encode_problem(problem, {}, config.eps, config.delta_eq);
      const auto path = config.work_dir / "attempt_1.smt2";
      write_file(path, doc.to_smtlib());
      std::cout << path.string() << "\n";
      return 0;
    }

    auto backend = qsolver::make_backend(config);
    const auto summary = qsolver::solve_loop(problem, config, *backend);
    const auto report = qsolver::emit_report(summary, problem);
    if (report_path.empty()) {
      std::cout << report;
    } else {
      write_file(report_path, report);
    }

    if (!scripts_dir.empty()) {
      if (const auto* sat = std::get_if<qsolver::SatOutcome>(&summary.outcome)) {
        qsolver::ScriptOptions opts{config.shots, config.delta_i, config.seed};
        for (std::size_t k = 0; k < problem.moments.size(); ++k) {
          write_file(std::filesystem::path(scripts_dir) / ("assert_moment_" + std::to_string(k) + ".py"),
                     qsolver::render_assertion_script(problem, k, sat->state, opts));
        }
      } else {
        std::cerr << "no solution; assertion scripts not written\n";
      }
    }
    return qsolver::exit_code(summary.outcome);
  } catch (const qsolver::BackendOutputError& e) {
    std::cerr << "error: " << e.what() << "\n" << e.raw_output() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
