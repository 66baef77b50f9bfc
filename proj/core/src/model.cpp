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

#include "qsolver/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qsolver/error.hpp"
#include "qsolver/gates.hpp"

namespace qsolver {

namespace {

void check_register_size(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw FormatError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                      std::to_string(kMaxQubits) + "]");
  }
}

}  // namespace

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
  check_register_size(num_qubits);
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw FormatError("state of " + std::to_string(num_qubits) + " qubits needs " +
                      std::to_string(std::size_t{1} << num_qubits) + " amplitudes, got " +
                      std::to_string(amps_.size()));
  }
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw FormatError("non-finite amplitude");
    }
  }
}

StateVector StateVector::basis(int num_qubits, BasisIndex index) {
  check_register_size(num_qubits);
  std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
  if (index >= amps.size()) throw FormatError("basis index out of range");
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

double StateVector::norm_squared() const noexcept {
  return std::accumulate(amps_.begin(), amps_.end(), 0.0,
                         [](double acc, const Amplitude& a) { return acc + std::norm(a); });
}

bool StateVector::is_normalized(double tol) const noexcept {
  return std::abs(norm_squared() - 1.0) < tol;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> out(amps_.size());
  std::transform(amps_.begin(), amps_.end(), out.begin(),
                 [](const Amplitude& a) { return std::norm(a); });
  return out;
}

StateVector normalize(const StateVector& state) {
  const double norm = std::sqrt(state.norm_squared());
  if (!(norm > 0.0)) throw DegenerateStateError("cannot normalize the zero vector");
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  for (auto& a : amps) a /= norm;
  return StateVector(state.num_qubits(), std::move(amps));
}

std::string_view flag_spelling(ConstraintFlag flag) noexcept {
  switch (flag) {
    case ConstraintFlag::In:
      return "in";
    case ConstraintFlag::NotIn:
      return "not_in";
    case ConstraintFlag::Eq:
      return "==";
    case ConstraintFlag::Gt:
      return ">";
    case ConstraintFlag::Lt:
      return "<";
  }
  return "?";
}

ConstraintFlag parse_flag(std::string_view text) {
  for (auto flag : {ConstraintFlag::In, ConstraintFlag::NotIn, ConstraintFlag::Eq,
                    ConstraintFlag::Gt, ConstraintFlag::Lt}) {
    if (flag_spelling(flag) == text) return flag;
  }
  throw FormatError("unknown constraint flag '" + std::string(text) + "'");
}

void validate_constraint(const ConstraintSpec& c, int num_qubits, double distribution_tolerance) {
  if (c.measured.empty()) throw FormatError("measured qubit list is empty");
  std::vector<bool> seen(static_cast<std::size_t>(std::max(num_qubits, 0)), false);
  for (int q : c.measured) {
    if (q < 0 || q >= num_qubits) {
      throw FormatError("measured qubit " + std::to_string(q) + " outside [0, " +
                        std::to_string(num_qubits) + ")");
    }
    if (seen[q]) throw FormatError("measured qubit " + std::to_string(q) + " listed twice");
    seen[q] = true;
  }
  const std::size_t width = c.measured.size();
  const BasisIndex outcomes = BasisIndex{1} << width;

  switch (c.flag) {
    case ConstraintFlag::In:
    case ConstraintFlag::NotIn: {
      const auto* set = std::get_if<ObservationSet>(&c.payload);
      if (set == nullptr) throw FormatError("in/not_in needs a list of outcome strings");
      for (const auto& s : set->outcomes) {
        if (s.size() != width) {
          throw FormatError("outcome string '" + s + "' has length " + std::to_string(s.size()) +
                            ", expected " + std::to_string(width));
        }
        parse_outcome_string(s);
      }
      break;
    }
    case ConstraintFlag::Eq: {
      const auto* dist = std::get_if<Distribution>(&c.payload);
      if (dist == nullptr) throw FormatError("== needs a probability distribution");
      if (dist->probs.size() != outcomes) {
        throw FormatError("distribution has " + std::to_string(dist->probs.size()) +
                          " entries, expected " + std::to_string(outcomes));
      }
      double sum = 0.0;
      for (double p : dist->probs) {
        if (!(p >= 0.0 && p <= 1.0)) throw FormatError("distribution entry outside [0, 1]");
        sum += p;
      }
      if (distribution_tolerance >= 0.0 &&
          sum > 1.0 + distribution_tolerance * static_cast<double>(outcomes)) {
        throw FormatError("distribution sums to more than 1 + delta * 2^|Q_m|");
      }
      break;
    }
    case ConstraintFlag::Gt:
    case ConstraintFlag::Lt: {
      const auto* pairs = std::get_if<PairList>(&c.payload);
      if (pairs == nullptr) throw FormatError("> and < need a list of [outcome, probability]");
      for (const auto& [x, p] : pairs->pairs) {
        if (x >= outcomes) {
          throw FormatError("outcome " + std::to_string(x) + " outside [0, " +
                            std::to_string(outcomes) + ")");
        }
        if (!(p >= 0.0 && p <= 1.0)) throw FormatError("probability outside [0, 1]");
      }
      break;
    }
  }
}

void validate_problem(const ProblemSpec& problem, double distribution_tolerance) {
  check_register_size(problem.num_qubits);
  if (problem.moments.empty()) throw FormatError("problem has no moments");
  for (const auto& m : problem.moments) {
    for (const auto& g : m.segment) validate_gate(g, problem.num_qubits);
    validate_constraint(m.constraint, problem.num_qubits, distribution_tolerance);
  }
}

std::string_view status_name(const SolveOutcome& outcome) noexcept {
  switch (outcome.index()) {
    case 0:
      return "sat";
    case 1:
      return "unsat";
    case 2:
      return "timeout";
    default:
      return "nf";
  }
}

BasisIndex marginal_index(BasisIndex index, std::span<const int> measured) noexcept {
  BasisIndex out = 0;
  for (std::size_t j = 0; j < measured.size(); ++j) {
    if (bit_of(index, measured[j])) out |= BasisIndex{1} << j;
  }
  return out;
}

std::string outcome_string(BasisIndex outcome, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t j = 0; j < width; ++j) {
    if ((outcome >> j) & 1U) s[j] = '1';
  }
  return s;
}

BasisIndex parse_outcome_string(std::string_view bits) {
  if (bits.size() >= 64) throw FormatError("outcome string too long");
  BasisIndex out = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1') {
      out |= BasisIndex{1} << j;
    } else if (bits[j] != '0') {
      throw FormatError("outcome string '" + std::string(bits) + "' is not binary");
    }
  }
  return out;
}

std::vector<BasisIndex> index_of_bits(std::string_view bits, std::span<const int> measured,
                                      int num_qubits) {
  if (bits.size() != measured.size()) {
    throw FormatError("outcome string '" + std::string(bits) + "' does not match " +
                      std::to_string(measured.size()) + " measured qubits");
  }
  check_register_size(num_qubits);
  for (int q : measured) {
    if (q < 0 || q >= num_qubits) throw FormatError("measured qubit out of range");
  }
  const BasisIndex want = parse_outcome_string(bits);
  std::vector<BasisIndex> out;
  const BasisIndex dim = BasisIndex{1} << num_qubits;
  for (BasisIndex x = 0; x < dim; ++x) {
    if (marginal_index(x, measured) == want) out.push_back(x);
  }
  return out;
}

std::vector<BasisIndex> observation_indices(const ObservationSet& set,
                                            std::span<const int> measured, int num_qubits) {
  std::vector<BasisIndex> out;
  for (const auto& s : set.outcomes) {
    auto part = index_of_bits(s, measured, num_qubits);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace qsolver
