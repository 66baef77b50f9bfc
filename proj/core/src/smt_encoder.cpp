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

#include "qsolver/smt_encoder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "number_format.hpp"
#include "qsolver/error.hpp"

namespace qsolver {

namespace {

std::string scaled(double coefficient, const std::string& var) {
  if (coefficient == 1.0) return var;
  return "(* " + format_real(coefficient) + " " + var + ")";
}

std::string sum_of(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0.0";
  if (terms.size() == 1) return terms.front();
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

std::string marginal_term(std::span<const int> measured, BasisIndex outcome, std::size_t step,
                          int num_qubits) {
  std::vector<std::string> terms;
  const BasisIndex dim = BasisIndex{1} << num_qubits;
  for (BasisIndex x = 0; x < dim; ++x) {
    if (marginal_index(x, measured) == outcome) terms.push_back(probability_term(x, step));
  }
  return sum_of(terms);
}

// (part, index) for a_<i>_0 / b_<i>_0; nullopt otherwise.
std::optional<std::pair<char, BasisIndex>> parse_initial(const std::string& name) {
  if (name.size() < 5 || (name[0] != 'a' && name[0] != 'b') || name[1] != '_') return std::nullopt;
  if (name.compare(name.size() - 2, 2, "_0") != 0) return std::nullopt;
  const std::string digits = name.substr(2, name.size() - 4);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) return std::nullopt;
  return std::pair{name[0], static_cast<BasisIndex>(std::stoull(digits))};
}

}  // namespace

std::string SmtDocument::to_smtlib() const {
  std::ostringstream out;
  out << "(set-logic " << logic << ")\n";
  for (const auto& d : declarations) out << "(declare-fun " << d << " () Real)\n";
  for (const auto& a : assertions) out << "(assert " << a << ")\n";
  out << "(check-sat)\n(get-model)\n(exit)\n";
  return out.str();
}

std::string amplitude_variable(char part, BasisIndex index, std::size_t step) {
  return std::string(1, part) + "_" + std::to_string(index) + "_" + std::to_string(step);
}

std::string format_real(double value) {
  if (value == 0.0) return "0.0";
  if (value < 0.0) return "(- " + format_real(-value) + ")";
  std::string s = detail::shortest_fixed(value);
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

std::string probability_term(BasisIndex index, std::size_t step) {
  const auto a = amplitude_variable('a', index, step);
  const auto b = amplitude_variable('b', index, step);
  return "(+ (* " + a + " " + a + ") (* " + b + " " + b + "))";
}

std::string encode_normalization(int num_qubits) {
  std::vector<std::string> terms;
  const BasisIndex dim = BasisIndex{1} << num_qubits;
  for (BasisIndex x = 0; x < dim; ++x) terms.push_back(probability_term(x, 0));
  return "(= " + sum_of(terms) + " 1.0)";
}

std::vector<std::string> encode_transition(const RealMatrix& real, const RealMatrix& imag,
                                           std::size_t step) {
  if (step == 0) throw FormatError("transitions target steps >= 1");
  const auto n = real.rows();
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(2 * n));
  for (char part : {'a', 'b'}) {
    for (Eigen::Index i = 0; i < n; ++i) {
      std::vector<std::string> terms;
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto j_idx = static_cast<BasisIndex>(j);
        const double ra = part == 'a' ? real(i, j) : imag(i, j);
        const double rb = part == 'a' ? -imag(i, j) : real(i, j);
        if (std::abs(ra) >= kCoefficientCutoff) {
          terms.push_back(scaled(ra, amplitude_variable('a', j_idx, step - 1)));
        }
        if (std::abs(rb) >= kCoefficientCutoff) {
          terms.push_back(scaled(rb, amplitude_variable('b', j_idx, step - 1)));
        }
      }
      out.push_back("(= " + amplitude_variable(part, static_cast<BasisIndex>(i), step) + " " +
                    sum_of(terms) + ")");
    }
  }
  return out;
}

std::vector<std::string> encode_constraint(const ConstraintSpec& c, std::size_t step,
                                           int num_qubits, double delta_eq) {
  std::vector<std::string> out;
  const BasisIndex dim = BasisIndex{1} << num_qubits;
  switch (c.flag) {
    case ConstraintFlag::In:
    case ConstraintFlag::NotIn: {
      const auto allowed =
          observation_indices(std::get<ObservationSet>(c.payload), c.measured, num_qubits);
      const bool zero_inside = c.flag == ConstraintFlag::NotIn;
      for (BasisIndex x = 0; x < dim; ++x) {
        const bool inside = std::binary_search(allowed.begin(), allowed.end(), x);
        if (inside == zero_inside) out.push_back("(= " + probability_term(x, step) + " 0.0)");
      }
      break;
    }
    case ConstraintFlag::Eq: {
      const auto& dist = std::get<Distribution>(c.payload);
      for (BasisIndex o = 0; o < dist.probs.size(); ++o) {
        out.push_back("(<= (abs (- " + marginal_term(c.measured, o, step, num_qubits) + " " +
                      format_real(dist.probs[o]) + ")) " + format_real(delta_eq) + ")");
      }
      break;
    }
    case ConstraintFlag::Gt:
      for (const auto& [x, p] : std::get<PairList>(c.payload).pairs) {
        out.push_back("(> " + marginal_term(c.measured, x, step, num_qubits) + " " +
                      format_real(p - delta_eq) + ")");
      }
      break;
    case ConstraintFlag::Lt:
      for (const auto& [x, p] : std::get<PairList>(c.payload).pairs) {
        out.push_back("(<= " + marginal_term(c.measured, x, step, num_qubits) + " " +
                      format_real(p + delta_eq) + ")");
      }
      break;
  }
  return out;
}

bool is_initial_variable(const std::string& name) { return parse_initial(name).has_value(); }

std::optional<std::string> encode_exclusion(const IntervalModel& model, double eps) {
  std::vector<std::tuple<char, BasisIndex, const std::string*, Interval>> vars;
  for (const auto& [name, iv] : model) {
    if (auto key = parse_initial(name)) vars.emplace_back(key->first, key->second, &name, iv);
  }
  if (vars.empty()) return std::nullopt;
  std::sort(vars.begin(), vars.end(), [](const auto& l, const auto& r) {
    return std::tie(std::get<0>(l), std::get<1>(l)) < std::tie(std::get<0>(r), std::get<1>(r));
  });
  std::string s = "(or";
  for (const auto& [part, index, name, iv] : vars) {
    s += " (< " + *name + " " + format_real(iv.lo - eps) + ")";
    s += " (> " + *name + " " + format_real(iv.hi + eps) + ")";
  }
  return s + ")";
}

SmtDocument encode_problem(const ProblemSpec& problem, std::span<const IntervalModel> exclusions,
                           double eps, double delta_eq) {
  SmtDocument doc;
  const int n = problem.num_qubits;
  const BasisIndex dim = BasisIndex{1} << n;
  const std::size_t steps = problem.moments.size();

  for (std::size_t t = 0; t <= steps; ++t) {
    for (char part : {'a', 'b'}) {
      for (BasisIndex x = 0; x < dim; ++x) doc.declarations.push_back(amplitude_variable(part, x, t));
    }
  }

  doc.assertions.push_back(encode_normalization(n));
  for (std::size_t k = 0; k < steps; ++k) {
    const auto parts = split_real_imag(compose_segment(problem.moments[k].segment, n));
    auto eqs = encode_transition(parts.real, parts.imag, k + 1);
    doc.assertions.insert(doc.assertions.end(), eqs.begin(), eqs.end());
  }
  for (std::size_t k = 0; k < steps; ++k) {
    auto cs = encode_constraint(problem.moments[k].constraint, k + 1, n, delta_eq);
    doc.assertions.insert(doc.assertions.end(), cs.begin(), cs.end());
  }
  for (const auto& model : exclusions) {
    if (auto clause = encode_exclusion(model, eps)) doc.assertions.push_back(*clause);
  }
  return doc;
}

}  // namespace qsolver
