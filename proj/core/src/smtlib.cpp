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

#include "qsolver/smtlib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "qsolver/error.hpp"

namespace qsolver::smtlib {

namespace {

const std::set<std::string, std::less<>> kRealOps{"+", "-", "*", "/", "abs"};
const std::set<std::string, std::less<>> kBoolOps{"=", "<", "<=", ">", ">=", "and", "or", "not"};

bool is_number(std::string_view s) {
  if (s.empty()) return false;
  bool dot = false;
  for (char c : s) {
    if (c == '.') {
      if (dot) return false;
      dot = true;
    } else if (c < '0' || c > '9') {
      return false;
    }
  }
  return s.front() != '.' && s.back() != '.';
}

double to_number(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("bad numeral '" + std::string(s) + "'");
  }
  return v;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) throw FormatError("unexpected end of input");
    if (text_[pos_] == ')') throw FormatError("unbalanced ')' at offset " + std::to_string(pos_));
    if (text_[pos_] == '(') {
      ++pos_;
      std::vector<SExpr> items;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw FormatError("missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          return SExpr{std::move(items)};
        }
        items.push_back(read());
      }
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
      ++pos_;
    }
    return SExpr{std::string(text_.substr(start, pos_ - start))};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void check_term(const SExpr& e, const std::set<std::string>& declared, bool boolean) {
  if (e.is_atom()) {
    if (boolean) throw FormatError("expected a formula, found '" + e.atom() + "'");
    if (is_number(e.atom()) || declared.count(e.atom())) return;
    throw FormatError("undeclared symbol '" + e.atom() + "'");
  }
  const auto& items = e.list();
  if (items.empty() || !items.front().is_atom()) throw FormatError("malformed application");
  const auto& op = items.front().atom();
  if (items.size() < 2) throw FormatError("operator '" + op + "' without arguments");
  if (boolean) {
    if (!kBoolOps.count(op)) throw FormatError("unsupported formula operator '" + op + "'");
    const bool connective = op == "and" || op == "or" || op == "not";
    if (!connective && items.size() != 3) throw FormatError("comparison '" + op + "' needs 2 args");
    for (std::size_t i = 1; i < items.size(); ++i) check_term(items[i], declared, connective);
  } else {
    if (!kRealOps.count(op)) throw FormatError("unsupported term operator '" + op + "'");
    for (std::size_t i = 1; i < items.size(); ++i) check_term(items[i], declared, false);
  }
}

const std::string& head(const SExpr& e) {
  if (e.is_atom() || e.list().empty() || !e.list().front().is_atom()) {
    throw FormatError("malformed expression " + to_string(e));
  }
  return e.list().front().atom();
}

}  // namespace

std::vector<SExpr> parse(std::string_view text) { return Reader(text).read_all(); }

std::string to_string(const SExpr& expr) {
  if (expr.is_atom()) return expr.atom();
  std::string s = "(";
  for (std::size_t i = 0; i < expr.list().size(); ++i) {
    if (i) s += " ";
    s += to_string(expr.list()[i]);
  }
  return s + ")";
}

Script read_script(std::string_view text) {
  Script script;
  std::set<std::string> declared;
  for (const auto& cmd : parse(text)) {
    const auto& name = head(cmd);
    const auto& items = cmd.list();
    if (name == "set-logic") {
      if (items.size() != 2 || !items[1].is_atom()) throw FormatError("malformed set-logic");
      script.logic = items[1].atom();
    } else if (name == "set-info" || name == "set-option") {
      continue;
    } else if (name == "declare-fun" || name == "declare-const") {
      const bool fun = name == "declare-fun";
      if (items.size() != (fun ? 4u : 3u) || !items[1].is_atom()) {
        throw FormatError("malformed " + name);
      }
      if (fun && (items[2].is_atom() || !items[2].list().empty())) {
        throw FormatError("only nullary functions are supported");
      }
      const auto& sort = items.back();
      if (!sort.is_atom() || sort.atom() != "Real") throw FormatError("only Real sort is supported");
      if (!declared.insert(items[1].atom()).second) {
        throw FormatError("'" + items[1].atom() + "' declared twice");
      }
      script.declared.push_back(items[1].atom());
    } else if (name == "assert") {
      if (items.size() != 2) throw FormatError("assert takes one formula");
      check_term(items[1], declared, true);
      script.assertions.push_back(items[1]);
    } else if (name == "check-sat") {
      script.check_sat = true;
    } else if (name == "get-model") {
      script.get_model = true;
    } else if (name == "exit") {
      break;
    } else {
      throw FormatError("unknown command '" + name + "'");
    }
  }
  return script;
}

double evaluate_real(const SExpr& e, const Assignment& values) {
  if (e.is_atom()) {
    const auto& a = e.atom();
    if (is_number(a)) return to_number(a);
    auto it = values.find(a);
    if (it == values.end()) throw FormatError("no value for '" + a + "'");
    return it->second;
  }
  const auto& op = head(e);
  const auto& items = e.list();
  auto arg = [&](std::size_t i) { return evaluate_real(items[i], values); };
  if (op == "+") {
    double s = 0.0;
    for (std::size_t i = 1; i < items.size(); ++i) s += arg(i);
    return s;
  }
  if (op == "*") {
    double p = 1.0;
    for (std::size_t i = 1; i < items.size(); ++i) p *= arg(i);
    return p;
  }
  if (op == "-") {
    if (items.size() == 2) return -arg(1);
    double s = arg(1);
    for (std::size_t i = 2; i < items.size(); ++i) s -= arg(i);
    return s;
  }
  if (op == "/") {
    double s = arg(1);
    for (std::size_t i = 2; i < items.size(); ++i) s /= arg(i);
    return s;
  }
  if (op == "abs" && items.size() == 2) return std::abs(arg(1));
  throw FormatError("cannot evaluate " + to_string(e));
}

bool evaluate_bool(const SExpr& e, const Assignment& values) {
  const auto& op = head(e);
  const auto& items = e.list();
  if (op == "and") {
    return std::all_of(items.begin() + 1, items.end(),
                       [&](const SExpr& s) { return evaluate_bool(s, values); });
  }
  if (op == "or") {
    return std::any_of(items.begin() + 1, items.end(),
                       [&](const SExpr& s) { return evaluate_bool(s, values); });
  }
  if (op == "not" && items.size() == 2) return !evaluate_bool(items[1], values);
  if (items.size() != 3) throw FormatError("cannot evaluate " + to_string(e));
  const double l = evaluate_real(items[1], values);
  const double r = evaluate_real(items[2], values);
  if (op == "=") return l == r;
  if (op == "<") return l < r;
  if (op == "<=") return l <= r;
  if (op == ">") return l > r;
  if (op == ">=") return l >= r;
  throw FormatError("cannot evaluate " + to_string(e));
}

double violation(const SExpr& e, const Assignment& values) {
  const auto& op = head(e);
  const auto& items = e.list();
  if (op == "and" || op == "or") {
    double acc = op == "and" ? 0.0 : INFINITY;
    for (std::size_t i = 1; i < items.size(); ++i) {
      const double v = violation(items[i], values);
      acc = op == "and" ? std::max(acc, v) : std::min(acc, v);
    }
    return acc;
  }
  if (items.size() != 3) throw FormatError("no violation measure for " + to_string(e));
  const double l = evaluate_real(items[1], values);
  const double r = evaluate_real(items[2], values);
  if (op == "=") return std::abs(l - r);
  if (op == "<" || op == "<=") return std::max(0.0, l - r);
  if (op == ">" || op == ">=") return std::max(0.0, r - l);
  throw FormatError("no violation measure for " + to_string(e));
}

}  // namespace qsolver::smtlib
