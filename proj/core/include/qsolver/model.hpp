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

// Domain types shared by every stage of the pipeline.
//
// Bit convention: qubit q is bit q of a basis index (qubit 0 is the least
// significant bit). An outcome string over a measured list Q_m has character j
// describing qubit Q_m[j], and the matching marginal outcome index has that
// qubit at bit j.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qsolver {

using Amplitude = std::complex<double>;
using BasisIndex = std::uint64_t;

/// Largest register the dense representations are allowed to allocate.
inline constexpr int kMaxQubits = 12;

/// Tolerance on Σ|amp|² for a state to count as normalized.
inline constexpr double kNormTolerance = 1e-6;

class StateVector {
 public:
  /// Throws FormatError unless amps.size() == 2^num_qubits and every entry is finite.
  StateVector(int num_qubits, std::vector<Amplitude> amps);

  static StateVector basis(int num_qubits, BasisIndex index);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept;
  bool is_normalized(double tol = kNormTolerance) const noexcept;
  std::vector<double> probabilities() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  int num_qubits_;
  std::vector<Amplitude> amps_;
};

/// Scales to unit norm. Throws DegenerateStateError on the zero vector.
StateVector normalize(const StateVector& state);

struct GateInstance {
  std::string name;
  std::vector<double> params;
  std::vector<int> qubits;

  friend bool operator==(const GateInstance&, const GateInstance&) = default;
};

enum class ConstraintFlag { In, NotIn, Eq, Gt, Lt };

/// External spelling: "in", "not_in", "==", ">", "<".
std::string_view flag_spelling(ConstraintFlag flag) noexcept;
/// Inverse of flag_spelling. Throws FormatError on anything else.
ConstraintFlag parse_flag(std::string_view text);

/// Allowed (in) or forbidden (not_in) outcome strings over Q_m.
struct ObservationSet {
  std::vector<std::string> outcomes;
  friend bool operator==(const ObservationSet&, const ObservationSet&) = default;
};

/// Expected marginal distribution over Q_m, one entry per outcome index.
struct Distribution {
  std::vector<double> probs;
  friend bool operator==(const Distribution&, const Distribution&) = default;
};

struct OutcomeBound {
  BasisIndex outcome = 0;
  double probability = 0.0;
  friend bool operator==(const OutcomeBound&, const OutcomeBound&) = default;
};

/// (outcome, probability) pairs for the > and < flags.
struct PairList {
  std::vector<OutcomeBound> pairs;
  friend bool operator==(const PairList&, const PairList&) = default;
};

using ConstraintPayload = std::variant<ObservationSet, Distribution, PairList>;

struct ConstraintSpec {
  ConstraintFlag flag = ConstraintFlag::In;
  std::vector<int> measured;
  ConstraintPayload payload;

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;
};

struct Moment {
  std::vector<GateInstance> segment;
  ConstraintSpec constraint;

  friend bool operator==(const Moment&, const Moment&) = default;
};

struct ProblemSpec {
  int num_qubits = 1;
  std::vector<Moment> moments;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Checks the measured list, payload shape, and value ranges. The optional
/// tolerance enables the Σ D ≤ 1 + δ·2^|Q_m| check for distributions.
void validate_constraint(const ConstraintSpec& constraint, int num_qubits,
                         double distribution_tolerance = -1.0);

/// Validates every gate and constraint. Throws FormatError or GateError.
void validate_problem(const ProblemSpec& problem, double distribution_tolerance = -1.0);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double midpoint() const noexcept { return lo + 0.5 * (hi - lo); }
  double width() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Variable name -> solver interval.
using IntervalModel = std::map<std::string, Interval>;

struct SatOutcome {
  IntervalModel intervals;
  StateVector state;
  int attempt = 1;
};
struct UnsatOutcome {};
struct TimeoutOutcome {
  double elapsed_seconds = 0.0;
};
struct NoFeasibleOutcome {
  std::vector<StateVector> failed_states;
};

using SolveOutcome = std::variant<SatOutcome, UnsatOutcome, TimeoutOutcome, NoFeasibleOutcome>;

/// "sat", "unsat", "timeout" or "nf".
std::string_view status_name(const SolveOutcome& outcome) noexcept;

// --- basis-index helpers ---------------------------------------------------

inline bool bit_of(BasisIndex index, int qubit) noexcept { return ((index >> qubit) & 1U) != 0; }

/// Marginal outcome index of full basis index `index` over `measured`.
BasisIndex marginal_index(BasisIndex index, std::span<const int> measured) noexcept;

/// Outcome string (char j = bit j) of a marginal index.
std::string outcome_string(BasisIndex outcome, std::size_t width);

/// Inverse of outcome_string. Throws FormatError on non-binary characters.
BasisIndex parse_outcome_string(std::string_view bits);

/// All full basis indices whose bits at measured[j] equal bits[j].
std::vector<BasisIndex> index_of_bits(std::string_view bits, std::span<const int> measured,
                                      int num_qubits);

/// Union of index_of_bits over an observation set, sorted and deduplicated.
std::vector<BasisIndex> observation_indices(const ObservationSet& set,
                                            std::span<const int> measured, int num_qubits);

}  // namespace qsolver
