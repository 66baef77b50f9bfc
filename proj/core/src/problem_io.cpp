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

#include "qsolver/problem_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "number_format.hpp"
#include "qsolver/gates.hpp"

namespace qsolver {

namespace {

// Python-literal subset used by target_prob: numbers, quoted strings, lists.
struct Value {
  enum class Kind { Number, String, List } kind = Kind::Number;
  double number = 0.0;
  bool integral = false;
  std::string text;
  std::vector<Value> items;
};

class ValueReader {
 public:
  explicit ValueReader(std::string_view s) : s_(s) {}

  Value read_document() {
    Value v = read();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(what + " at column " + std::to_string(pos_ + 1));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Value read() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of value");
    const char c = s_[pos_];
    if (c == '[') return read_list();
    if (c == '\'' || c == '"') return read_string();
    return read_number();
  }

  Value read_list() {
    Value v;
    v.kind = Value::Kind::List;
    ++pos_;
    skip();
    if (pos_ < s_.size() && s_[pos_] == ']') {
      ++pos_;
      return v;
    }
    for (;;) {
      v.items.push_back(read());
      skip();
      if (pos_ >= s_.size()) fail("missing ']'");
      if (s_[pos_] == ']') {
        ++pos_;
        return v;
      }
      if (s_[pos_] != ',') fail("expected ',' or ']'");
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == ']') {
        ++pos_;
        return v;
      }
    }
  }

  Value read_string() {
    const char quote = s_[pos_++];
    const auto end = s_.find(quote, pos_);
    if (end == std::string_view::npos) fail("unterminated string");
    Value v;
    v.kind = Value::Kind::String;
    v.text = std::string(s_.substr(pos_, end - pos_));
    pos_ = end + 1;
    return v;
  }

  Value read_number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '.' || s_[pos_] == '-' || s_[pos_] == '+')) {
      ++pos_;
    }
    const std::string tok(s_.substr(start, pos_ - start));
    if (tok.empty()) fail("unexpected character '" + std::string(1, s_[start]) + "'");
    char* end = nullptr;
    Value v;
    v.number = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v.number)) {
      pos_ = start;
      fail("bad number '" + tok + "'");
    }
    v.integral = tok.find_first_of(".eE") == std::string::npos;
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// number | pi | products and quotients of those, optionally signed: -3*pi/4
double parse_angle(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw FormatError("empty gate argument");
  double sign = 1.0;
  if (text.front() == '-' || text.front() == '+') {
    if (text.front() == '-') sign = -1.0;
    text.remove_prefix(1);
  }
  double value = 1.0;
  char op = '*';
  while (!text.empty()) {
    const auto cut = text.find_first_of("*/");
    const auto factor_text = trim(text.substr(0, cut));
    double factor = 0.0;
    if (factor_text == "pi") {
      factor = std::numbers::pi;
    } else {
      const std::string tok(factor_text);
      char* end = nullptr;
      factor = std::strtod(tok.c_str(), &end);
      if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(factor)) {
        throw FormatError("bad gate argument '" + tok + "'");
      }
    }
    value = op == '*' ? value * factor : value / factor;
    if (cut == std::string_view::npos) break;
    op = text[cut];
    text.remove_prefix(cut + 1);
    if (trim(text).empty()) throw FormatError("dangling operator in gate argument");
  }
  return sign * value;
}

int parse_qubit(std::string_view text) {
  text = trim(text);
  const std::string tok(text);
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (tok.empty() || end != tok.c_str() + tok.size()) {
    throw FormatError("qubit index '" + tok + "' is not an integer");
  }
  return static_cast<int>(v);
}

std::vector<GateInstance> parse_gates(std::string_view text, int num_qubits) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw FormatError("gate list must be enclosed in [ ]");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<GateInstance> gates;
  while (!trim(text).empty()) {
    const auto cut = text.find(';');
    const auto item = trim(text.substr(0, cut));
    if (item.empty()) throw FormatError("empty gate between ';'");
    const auto open = item.find('(');
    if (open == std::string_view::npos || item.back() != ')') {
      throw FormatError("gate '" + std::string(item) + "' is not of the form name(args)");
    }
    GateInstance g;
    g.name = std::string(trim(item.substr(0, open)));
    std::transform(g.name.begin(), g.name.end(), g.name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const auto sig = find_gate(g.name);
    if (!sig) throw GateError("unknown gate '" + g.name + "'");

    std::vector<std::string_view> args;
    auto inner = item.substr(open + 1, item.size() - open - 2);
    if (!trim(inner).empty()) {
      for (;;) {
        const auto comma = inner.find(',');
        args.push_back(inner.substr(0, comma));
        if (comma == std::string_view::npos) break;
        inner.remove_prefix(comma + 1);
      }
    }
    if (static_cast<int>(args.size()) != sig->arity + sig->num_params) {
      throw GateError("gate '" + g.name + "' expects " + std::to_string(sig->num_params) +
                      " angle(s) and " + std::to_string(sig->arity) + " qubit(s)");
    }
    for (int i = 0; i < sig->num_params; ++i) g.params.push_back(parse_angle(args[i]));
    for (int i = 0; i < sig->arity; ++i) g.qubits.push_back(parse_qubit(args[sig->num_params + i]));
    validate_gate(g, num_qubits);
    gates.push_back(std::move(g));
    if (cut == std::string_view::npos) break;
    text.remove_prefix(cut + 1);
    if (trim(text).empty()) throw FormatError("trailing ';' in gate list");
  }
  return gates;
}

std::vector<int> as_qubit_list(const Value& v) {
  if (v.kind != Value::Kind::List) throw FormatError("expected a list of qubit indices");
  std::vector<int> out;
  for (const auto& item : v.items) {
    if (item.kind != Value::Kind::Number || !item.integral) {
      throw FormatError("qubit indices must be integers");
    }
    out.push_back(static_cast<int>(item.number));
  }
  return out;
}

double as_probability(const Value& v) {
  if (v.kind != Value::Kind::Number) throw FormatError("expected a probability");
  return v.number;
}

ConstraintSpec parse_target(std::string_view text, ConstraintFlag flag) {
  const Value root = ValueReader(text).read_document();
  if (root.kind != Value::Kind::List) throw FormatError("target_prob must be a list");
  ConstraintSpec c;
  c.flag = flag;
  const auto& items = root.items;
  switch (flag) {
    case ConstraintFlag::In:
    case ConstraintFlag::NotIn: {
      if (items.size() != 3) {
        throw FormatError("in/not_in expects [qubits, qubits, outcome strings]");
      }
      c.measured = as_qubit_list(items[0]);
      if (as_qubit_list(items[1]) != c.measured) {
        throw FormatError("the two qubit lists of target_prob differ");
      }
      if (items[2].kind != Value::Kind::List) throw FormatError("expected a list of outcome strings");
      ObservationSet set;
      for (const auto& s : items[2].items) {
        if (s.kind != Value::Kind::String) throw FormatError("outcomes must be quoted bit strings");
        set.outcomes.push_back(s.text);
      }
      c.payload = std::move(set);
      break;
    }
    case ConstraintFlag::Eq: {
      if (items.size() != 2 || items[1].kind != Value::Kind::List) {
        throw FormatError("== expects [qubits, distribution]");
      }
      c.measured = as_qubit_list(items[0]);
      Distribution d;
      for (const auto& p : items[1].items) d.probs.push_back(as_probability(p));
      c.payload = std::move(d);
      break;
    }
    case ConstraintFlag::Gt:
    case ConstraintFlag::Lt: {
      if (items.size() != 2 || items[1].kind != Value::Kind::List) {
        throw FormatError("> and < expect [qubits, [[outcome, probability], ...]]");
      }
      c.measured = as_qubit_list(items[0]);
      PairList pairs;
      for (const auto& pair : items[1].items) {
        if (pair.kind != Value::Kind::List || pair.items.size() != 2 ||
            pair.items[0].kind != Value::Kind::Number || !pair.items[0].integral ||
            pair.items[0].number < 0) {
          throw FormatError("expected [outcome, probability] with a non-negative integer outcome");
        }
        pairs.pairs.push_back(
            {static_cast<BasisIndex>(pair.items[0].number), as_probability(pair.items[1])});
      }
      c.payload = std::move(pairs);
      break;
    }
  }
  return c;
}

struct Line {
  std::string label;
  std::string value;
};

std::string quote_flag(ConstraintFlag f) { return "\"" + std::string(flag_spelling(f)) + "\""; }

std::string list_of(const std::vector<int>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "]";
}

nlohmann::json state_json(const StateVector& s) {
  auto arr = nlohmann::json::array();
  for (const auto& a : s.amplitudes()) arr.push_back({a.real(), a.imag()});
  return arr;
}

}  // namespace

ParseError::ParseError(std::size_t block, std::string label, const std::string& message)
    : FormatError("block " + std::to_string(block) + ", " + label + ": " + message),
      block_(block),
      label_(std::move(label)) {}

ProblemSpec parse_problem(std::string_view text, int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw FormatError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  std::vector<std::vector<Line>> blocks;
  std::vector<Line> current;
  std::istringstream in{std::string(text)};
  std::string raw;
  auto flush = [&] {
    if (!current.empty()) blocks.push_back(std::move(current));
    current.clear();
  };
  while (std::getline(in, raw)) {
    const auto line = trim(raw);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    const auto colon = line.find(':');
    const std::size_t block_no = blocks.size() + 1;
    if (colon == std::string_view::npos) {
      throw ParseError(block_no, "block", "line '" + std::string(line) + "' has no label");
    }
    current.push_back({std::string(trim(line.substr(0, colon))),
                       std::string(trim(line.substr(colon + 1)))});
  }
  flush();
  if (blocks.empty()) throw ParseError(1, "block", "no gates/target_prob/flag block found");

  ProblemSpec problem;
  problem.num_qubits = num_qubits;
  static const char* const kLabels[] = {"gates", "target_prob", "flag"};
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& lines = blocks[b];
    const std::size_t block_no = b + 1;
    if (lines.size() != 3) {
      throw ParseError(block_no, "block",
                       "expected 3 lines (gates, target_prob, flag), found " +
                           std::to_string(lines.size()));
    }
    for (int i = 0; i < 3; ++i) {
      if (lines[i].label != kLabels[i]) {
        throw ParseError(block_no, lines[i].label,
                         std::string("expected label '") + kLabels[i] + "'");
      }
    }

    Moment m;
    try {
      m.segment = parse_gates(lines[0].value, num_qubits);
    } catch (const Error& e) {
      throw ParseError(block_no, "gates", e.what());
    }

    ConstraintFlag flag{};
    try {
      const Value v = ValueReader(lines[2].value).read_document();
      if (v.kind != Value::Kind::String) throw FormatError("flag must be a quoted string");
      flag = parse_flag(v.text);
    } catch (const Error& e) {
      throw ParseError(block_no, "flag", e.what());
    }

    try {
      m.constraint = parse_target(lines[1].value, flag);
      validate_constraint(m.constraint, num_qubits);
    } catch (const Error& e) {
      throw ParseError(block_no, "target_prob", e.what());
    }
    problem.moments.push_back(std::move(m));
  }
  return problem;
}

std::string print_problem(const ProblemSpec& problem) {
  std::ostringstream out;
  for (std::size_t k = 0; k < problem.moments.size(); ++k) {
    const auto& m = problem.moments[k];
    if (k) out << "\n";
    out << "gates: [";
    for (std::size_t i = 0; i < m.segment.size(); ++i) {
      const auto& g = m.segment[i];
      out << (i ? " ; " : "") << g.name << "(";
      bool first = true;
      for (double p : g.params) {
        out << (first ? "" : ",") << detail::shortest(p);
        first = false;
      }
      for (int q : g.qubits) {
        out << (first ? "" : ",") << q;
        first = false;
      }
      out << ")";
    }
    out << "]\n";

    const auto& c = m.constraint;
    out << "target_prob: [" << list_of(c.measured) << ", ";
    switch (c.flag) {
      case ConstraintFlag::In:
      case ConstraintFlag::NotIn: {
        out << list_of(c.measured) << ", [";
        const auto& set = std::get<ObservationSet>(c.payload);
        for (std::size_t i = 0; i < set.outcomes.size(); ++i) {
          out << (i ? "," : "") << "'" << set.outcomes[i] << "'";
        }
        out << "]";
        break;
      }
      case ConstraintFlag::Eq: {
        out << "[";
        const auto& d = std::get<Distribution>(c.payload);
        for (std::size_t i = 0; i < d.probs.size(); ++i) {
          out << (i ? ", " : "") << detail::shortest(d.probs[i]);
        }
        out << "]";
        break;
      }
      case ConstraintFlag::Gt:
      case ConstraintFlag::Lt: {
        out << "[";
        const auto& pairs = std::get<PairList>(c.payload).pairs;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          out << (i ? ", " : "") << "[" << pairs[i].outcome << ", "
              << detail::shortest(pairs[i].probability) << "]";
        }
        out << "]";
        break;
      }
    }
    out << "]\n";
    out << "flag: " << quote_flag(c.flag) << "\n";
  }
  return out.str();
}

std::string emit_report(const RunSummary& summary, const ProblemSpec& problem) {
  nlohmann::json j;
  j["status"] = std::string(status_name(summary.outcome));
  j["num_qubits"] = problem.num_qubits;
  j["attempts"] = summary.attempts;
  j["elapsed_seconds"] = summary.elapsed_seconds;
  j["seed"] = summary.seed;
  j["backend"] = summary.backend;
  j["state"] = nullptr;

  if (const auto* sat = std::get_if<SatOutcome>(&summary.outcome)) {
    j["state"] = state_json(sat->state);
    j["attempt"] = sat->attempt;
  } else if (const auto* nf = std::get_if<NoFeasibleOutcome>(&summary.outcome)) {
    auto arr = nlohmann::json::array();
    for (const auto& s : nf->failed_states) arr.push_back(state_json(s));
    j["failed_candidates"] = std::move(arr);
  } else if (const auto* to = std::get_if<TimeoutOutcome>(&summary.outcome)) {
    j["timeout_elapsed_seconds"] = to->elapsed_seconds;
  }

  auto moments = nlohmann::json::array();
  for (const auto& v : summary.verdicts) {
    nlohmann::json m;
    m["moment"] = v.moment;
    m["flag"] = std::string(flag_spelling(problem.moments.at(v.moment).constraint.flag));
    m["pass"] = v.pass;
    m["margin"] = v.margin;
    m["required"] = v.required;
    m["observed"] = v.observed;
    moments.push_back(std::move(m));
  }
  j["moments"] = std::move(moments);
  return j.dump(2) + "\n";
}

}  // namespace qsolver
