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

// Text problem format. One block per moment, blocks separated by blank lines:
//
//   gates: [t(0) ; h(0) ; x(1) ; cx(1,2) ; cx(0,1)]
//   target_prob: [[0,1,2], [0,1,2], ['010','101']]
//   flag: "in"
//
// target_prob shapes: in / not_in -> [Q_m, Q_m, outcome strings];
// == -> [Q_m, distribution]; > / < -> [Q_m, [[outcome, p], ...]].
// Gate arguments are angles (radians, `pi` allowed) followed by qubit indices.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsolver/error.hpp"
#include "qsolver/model.hpp"
#include "qsolver/verifier.hpp"

namespace qsolver {

class ParseError : public FormatError {
 public:
  ParseError(std::size_t block, std::string label, const std::string& message);

  /// 1-based block number.
  std::size_t block() const noexcept { return block_; }
  /// "gates", "target_prob", "flag", or "block" for structural errors.
  const std::string& label() const noexcept { return label_; }

 private:
  std::size_t block_;
  std::string label_;
};

ProblemSpec parse_problem(std::string_view text, int num_qubits);

/// Canonical text form; parse_problem(print_problem(p), n) == p.
std::string print_problem(const ProblemSpec& problem);

struct RunSummary {
  SolveOutcome outcome = UnsatOutcome{};
  int attempts = 0;
  double elapsed_seconds = 0.0;
  std::uint64_t seed = 0;
  std::string backend;
  /// Verdicts of the accepted candidate, or of the last rejected one.
  std::vector<AssertionVerdict> verdicts;
};

/// JSON report: status, state ([re, im] pairs or null), attempts,
/// elapsed_seconds, seed, backend, moments (per-moment verdicts) and, for nf,
/// failed_candidates.
std::string emit_report(const RunSummary& summary, const ProblemSpec& problem);

}  // namespace qsolver
