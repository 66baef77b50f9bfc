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

#include "qsolver/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "qsolver/error.hpp"
#include "qsolver/gates.hpp"

namespace qsolver {

double MeasurementCounts::frequency(const std::string& outcome) const {
  if (shots == 0) return 0.0;
  auto it = counts.find(outcome);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shots);
}

std::vector<double> MeasurementCounts::frequencies() const {
  std::vector<double> out(std::size_t{1} << measured.size(), 0.0);
  if (shots == 0) return out;
  for (const auto& [key, n] : counts) {
    out[parse_outcome_string(key)] = static_cast<double>(n) / static_cast<double>(shots);
  }
  return out;
}

StateVector apply_gate(const StateVector& state, const GateInstance& gate) {
  validate_gate(gate, state.num_qubits());
  const ComplexMatrix local = build_gate_matrix(gate.name, gate.params);
  const auto& qs = gate.qubits;
  const std::size_t local_dim = std::size_t{1} << qs.size();

  std::vector<BasisIndex> offsets(local_dim, 0);
  BasisIndex gate_mask = 0;
  for (std::size_t l = 0; l < local_dim; ++l) {
    for (std::size_t j = 0; j < qs.size(); ++j) {
      if ((l >> j) & 1U) offsets[l] |= BasisIndex{1} << qs[j];
    }
  }
  for (int q : qs) gate_mask |= BasisIndex{1} << q;

  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  std::vector<Amplitude> in(local_dim);
  for (BasisIndex base = 0; base < amps.size(); ++base) {
    if ((base & gate_mask) != 0) continue;
    for (std::size_t l = 0; l < local_dim; ++l) in[l] = amps[base | offsets[l]];
    for (std::size_t r = 0; r < local_dim; ++r) {
      Amplitude acc{};
      for (std::size_t c = 0; c < local_dim; ++c) {
        acc += local(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
      }
      amps[base | offsets[r]] = acc;
    }
  }
  return StateVector(state.num_qubits(), std::move(amps));
}

StateVector apply_segment(const StateVector& state, std::span<const GateInstance> gates) {
  StateVector out = state;
  for (const auto& g : gates) out = apply_gate(out, g);
  return out;
}

StateVector run_to_moment(const StateVector& initial, const ProblemSpec& problem, std::size_t k) {
  if (k >= problem.moments.size()) {
    throw FormatError("moment " + std::to_string(k) + " out of range (problem has " +
                      std::to_string(problem.moments.size()) + ")");
  }
  if (initial.num_qubits() != problem.num_qubits) {
    throw FormatError("state and problem disagree on the qubit count");
  }
  StateVector s = initial;
  for (std::size_t m = 0; m <= k; ++m) s = apply_segment(s, problem.moments[m].segment);
  return s;
}

std::vector<StateVector> moment_states(const StateVector& initial, const ProblemSpec& problem) {
  if (initial.num_qubits() != problem.num_qubits) {
    throw FormatError("state and problem disagree on the qubit count");
  }
  std::vector<StateVector> out;
  out.reserve(problem.moments.size());
  StateVector s = initial;
  for (const auto& m : problem.moments) {
    s = apply_segment(s, m.segment);
    out.push_back(s);
  }
  return out;
}

std::vector<double> marginal_probs(const StateVector& state, std::span<const int> measured) {
  std::vector<bool> seen(static_cast<std::size_t>(state.num_qubits()), false);
  for (int q : measured) {
    if (q < 0 || q >= state.num_qubits() || seen[q]) {
      throw FormatError("invalid measured qubit " + std::to_string(q));
    }
    seen[q] = true;
  }
  std::vector<double> out(std::size_t{1} << measured.size(), 0.0);
  const auto amps = state.amplitudes();
  for (BasisIndex x = 0; x < amps.size(); ++x) out[marginal_index(x, measured)] += std::norm(amps[x]);
  return out;
}

MeasurementCounts sample(const StateVector& state, std::span<const int> measured,
                         std::uint64_t shots, std::uint64_t seed) {
  const auto probs = marginal_probs(state, measured);
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  const double total = cdf.back();

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> hits(probs.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    // 53 random bits -> uniform in [0, total)
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx >= probs.size()) idx = probs.size() - 1;
    ++hits[idx];
  }

  MeasurementCounts mc;
  mc.measured.assign(measured.begin(), measured.end());
  mc.shots = shots;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i] > 0) mc.counts[outcome_string(i, measured.size())] = hits[i];
  }
  return mc;
}

}  // namespace qsolver
