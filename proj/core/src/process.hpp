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

#include <string>
#include <vector>

namespace qsolver::detail {

struct ProcessOutput {
  std::string out;
  std::string err;
  int exit_status = 0;
  bool timed_out = false;
  double elapsed_seconds = 0.0;
};

/// True when `program` names an executable file, directly or through $PATH.
bool executable_exists(const std::string& program);

/// Runs argv[0] with the given arguments, capturing stdout and stderr. The
/// child gets its own process group, which is killed when `timeout_seconds`
/// elapses.
ProcessOutput run_process(const std::vector<std::string>& argv, double timeout_seconds);

}  // namespace qsolver::detail
