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

// Minimal SMT-LIB2 reader and evaluator for the QF_NRA fragment emitted by
// the encoder. Used to check documents by substituting concrete values.

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qsolver::smtlib {

struct SExpr {
  std::variant<std::string, std::vector<SExpr>> node;

  bool is_atom() const noexcept { return node.index() == 0; }
  const std::string& atom() const { return std::get<std::string>(node); }
  const std::vector<SExpr>& list() const { return std::get<std::vector<SExpr>>(node); }
};

/// Parses a sequence of top-level s-expressions. Throws FormatError on
/// unbalanced parentheses or stray tokens.
std::vector<SExpr> parse(std::string_view text);

std::string to_string(const SExpr& expr);

struct Script {
  std::string logic;
  std::vector<std::string> declared;
  std::vector<SExpr> assertions;
  bool check_sat = false;
  bool get_model = false;
};

/// Reads a whole script. Rejects unknown commands, duplicate declarations,
/// non-Real sorts, and assertions that mention undeclared symbols or
/// unsupported operators.
Script read_script(std::string_view text);

using Assignment = std::map<std::string, double>;

double evaluate_real(const SExpr& expr, const Assignment& values);
bool evaluate_bool(const SExpr& expr, const Assignment& values);

/// Distance from satisfying a boolean formula: |l - r| for =, the positive
/// part of l - r for < and <=, min over (or ...), max over (and ...).
/// Strict and non-strict comparisons are treated alike.
double violation(const SExpr& expr, const Assignment& values);

}  // namespace qsolver::smtlib
