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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qsolver/model.hpp"

namespace qsolver {

struct MeasurementCounts {
  std::vector<int> measured;
  std::uint64_t shots = 0;
  /// Outcome string over `measured` -> count. Zero-count outcomes are omitted.
  std::map<std::string, std::uint64_t> counts;

  /// count / shots for one outcome string (0 when absent).
  double frequency(const std::string& outcome) const;
  /// Frequencies indexed by marginal outcome index, length 2^|measured|.
  std::vector<double> frequencies() const;
};

/// Applies one gate with an in-place strided update of the amplitudes.
StateVector apply_gate(const StateVector& state, const GateInstance& gate);

StateVector apply_segment(const StateVector& state, std::span<const GateInstance> gates);

/// State after segments 0..k. Throws FormatError if k is out of range.
StateVector run_to_moment(const StateVector& initial, const ProblemSpec& problem, std::size_t k);

/// States after every moment, in order.
std::vector<StateVector> moment_states(const StateVector& initial, const ProblemSpec& problem);

/// Probability of each marginal outcome index over `measured`.
std::vector<double> marginal_probs(const StateVector& state, std::span<const int> measured);

/// Inverse-CDF sampling of the marginal distribution. The state is not
/// modified; equal seeds give equal counts.
MeasurementCounts sample(const StateVector& state, std::span<const int> measured,
                         std::uint64_t shots, std::uint64_t seed);

}  // namespace qsolver
