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

#include "qsolver/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "number_format.hpp"
#include "qsolver/error.hpp"

namespace qsolver {

namespace {

using detail::shortest;

std::set<BasisIndex> outcome_set(const ObservationSet& set) {
  std::set<BasisIndex> out;
  for (const auto& s : set.outcomes) out.insert(parse_outcome_string(s));
  return out;
}

std::string join_outcomes(const ObservationSet& set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.outcomes.size(); ++i) {
    if (i) s += ",";
    s += set.outcomes[i];
  }
  return s + "}";
}

}  // namespace

AssertionVerdict check_frequencies(std::span<const double> freq, const ConstraintSpec& c,
                                   double delta_i) {
  if (!(delta_i > 0.0 && delta_i < 0.5)) throw FormatError("assertion tolerance must be in (0, 0.5)");
  const std::size_t width = c.measured.size();
  if (freq.size() != (std::size_t{1} << width)) {
    throw FormatError("frequency vector does not cover 2^|Q_m| outcomes");
  }

  AssertionVerdict v;
  for (std::size_t x = 0; x < freq.size(); ++x) v.observed[outcome_string(x, width)] = freq[x];

  switch (c.flag) {
    case ConstraintFlag::In:
    case ConstraintFlag::NotIn: {
      const auto& set = std::get<ObservationSet>(c.payload);
      double total = 0.0;
      for (BasisIndex x : outcome_set(set)) total += freq[x];
      if (c.flag == ConstraintFlag::In) {
        const double threshold = kInThreshold - delta_i;
        v.margin = total - threshold;
        v.pass = total > threshold;
        v.required = "sum(mp over " + join_outcomes(set) + ") > " + shortest(threshold);
      } else {
        const double threshold = kNotInThreshold + delta_i;
        v.margin = threshold - total;
        v.pass = total < threshold;
        v.required = "sum(mp over " + join_outcomes(set) + ") < " + shortest(threshold);
      }
      break;
    }
    case ConstraintFlag::Eq: {
      const auto& dist = std::get<Distribution>(c.payload);
      double margin = std::numeric_limits<double>::infinity();
      for (std::size_t x = 0; x < freq.size(); ++x) {
        margin = std::min(margin, delta_i - std::abs(freq[x] - dist.probs[x]));
      }
      v.margin = margin;
      v.pass = margin >= 0.0;
      v.required = "|mp_x - D_x| <= " + shortest(delta_i) + " for all x";
      break;
    }
    case ConstraintFlag::Gt:
    case ConstraintFlag::Lt: {
      const auto& pairs = std::get<PairList>(c.payload);
      const bool gt = c.flag == ConstraintFlag::Gt;
      double margin = std::numeric_limits<double>::infinity();
      std::string req;
      for (const auto& [x, p] : pairs.pairs) {
        const double bound = gt ? p - delta_i : p + delta_i;
        margin = std::min(margin, gt ? freq[x] - bound : bound - freq[x]);
        if (!req.empty()) req += " and ";
        req += "mp_" + outcome_string(x, width) + (gt ? " > " : " < ") + shortest(bound);
      }
      v.margin = margin;
      v.pass = margin > 0.0;
      v.required = req.empty() ? "true" : req;
      break;
    }
  }
  return v;
}

AssertionVerdict check_assertion(const MeasurementCounts& counts, const ConstraintSpec& c,
                                 double delta_i) {
  if (counts.measured != c.measured) {
    throw FormatError("counts were measured over a different qubit list than the constraint");
  }
  if (counts.shots == 0) throw FormatError("counts contain no shots");
  const auto freq = counts.frequencies();
  return check_frequencies(freq, c, delta_i);
}

std::vector<AssertionVerdict> verify_solution(const StateVector& state, const ProblemSpec& problem,
                                              std::uint64_t shots, double delta_i,
                                              std::uint64_t seed) {
  const auto states = moment_states(state, problem);
  std::vector<AssertionVerdict> out;
  out.reserve(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& c = problem.moments[k].constraint;
    auto counts = sample(states[k], c.measured, shots, seed + k);
    auto v = check_assertion(counts, c, delta_i);
    v.moment = k;
    out.push_back(std::move(v));
  }
  return out;
}

bool all_pass(std::span<const AssertionVerdict> verdicts) noexcept {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.pass; });
}

namespace {

std::string py_list(std::span<const int> xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(xs[i]);
  }
  return s + "]";
}

std::string py_gate_call(const GateInstance& g) {
  std::string s = "qc." + g.name + "(";
  bool first = true;
  for (double p : g.params) {
    if (!first) s += ", ";
    s += shortest(p);
    first = false;
  }
  for (int q : g.qubits) {
    if (!first) s += ", ";
    s += std::to_string(q);
    first = false;
  }
  return s + ")";
}

}  // namespace

std::string render_assertion_script(const ProblemSpec& problem, std::size_t k,
                                    const StateVector& state, const ScriptOptions& options) {
  if (k >= problem.moments.size()) throw FormatError("moment index out of range");
  const auto& c = problem.moments[k].constraint;
  const std::size_t width = c.measured.size();
  std::ostringstream py;

  py << "#!/usr/bin/env python3\n"
     << "# Assertion check for moment " << k << ": flag " << flag_spelling(c.flag)
     << ", measured qubits " << py_list(c.measured) << ".\n"
     << "# Outcome strings list measured qubits in order: character j is MEASURED[j].\n"
     << "import json\n"
     << "import sys\n\n"
     << "from qiskit import QuantumCircuit, transpile\n\n"
     << "try:\n"
     << "    from qiskit_aer import AerSimulator\n\n"
     << "    backend = AerSimulator(seed_simulator=" << options.seed << ")\n"
     << "except ImportError:\n"
     << "    from qiskit.providers.basic_provider import BasicSimulator\n\n"
     << "    backend = BasicSimulator()\n\n"
     << "NUM_QUBITS = " << problem.num_qubits << "\n"
     << "MEASURED = " << py_list(c.measured) << "\n"
     << "SHOTS = " << options.shots << "\n"
     << "DELTA_I = " << shortest(options.delta_i) << "\n"
     << "STATE = [\n";
  for (const auto& a : state.amplitudes()) {
    py << "    complex(" << shortest(a.real()) << ", " << shortest(a.imag()) << "),\n";
  }
  py << "]\n\n"
     << "qc = QuantumCircuit(NUM_QUBITS, len(MEASURED))\n"
     << "qc.initialize(STATE, list(range(NUM_QUBITS)))\n";
  for (std::size_t m = 0; m <= k; ++m) {
    py << "# segment " << m << "\n";
    for (const auto& g : problem.moments[m].segment) py << py_gate_call(g) << "\n";
  }
  py << "for j, q in enumerate(MEASURED):\n"
     << "    qc.measure(q, j)\n\n"
     << "counts = backend.run(transpile(qc, backend), shots=SHOTS).result().get_counts()\n"
     << "# SDK keys print classical bit 0 last; reverse them.\n"
     << "freq = {}\n"
     << "for key, n in counts.items():\n"
     << "    outcome = key.replace(\" \", \"\")[::-1]\n"
     << "    freq[outcome] = freq.get(outcome, 0.0) + n / SHOTS\n\n\n"
     << "def mp(outcome):\n"
     << "    return freq.get(outcome, 0.0)\n\n\n";

  switch (c.flag) {
    case ConstraintFlag::In:
    case ConstraintFlag::NotIn: {
      const auto& set = std::get<ObservationSet>(c.payload);
      py << "OUTCOMES = [";
      for (std::size_t i = 0; i < set.outcomes.size(); ++i) {
        py << (i ? ", " : "") << "'" << set.outcomes[i] << "'";
      }
      py << "]\n"
         << "total = sum(mp(o) for o in set(OUTCOMES))\n";
      if (c.flag == ConstraintFlag::In) {
        py << "passed = total > " << shortest(kInThreshold) << " - DELTA_I\n";
      } else {
        py << "passed = total < " << shortest(kNotInThreshold) << " + DELTA_I\n";
      }
      break;
    }
    case ConstraintFlag::Eq: {
      const auto& dist = std::get<Distribution>(c.payload);
      py << "EXPECTED = {\n";
      for (std::size_t x = 0; x < dist.probs.size(); ++x) {
        py << "    '" << outcome_string(x, width) << "': " << shortest(dist.probs[x]) << ",\n";
      }
      py << "}\n"
         << "passed = all(abs(mp(x) - d) <= DELTA_I for x, d in EXPECTED.items())\n";
      break;
    }
    case ConstraintFlag::Gt:
    case ConstraintFlag::Lt: {
      const auto& pairs = std::get<PairList>(c.payload);
      py << "BOUNDS = [\n";
      for (const auto& [x, p] : pairs.pairs) {
        py << "    ('" << outcome_string(x, width) << "', " << shortest(p) << "),\n";
      }
      py << "]\n";
      if (c.flag == ConstraintFlag::Gt) {
        py << "passed = all(mp(x) > p - DELTA_I for x, p in BOUNDS)\n";
      } else {
        py << "passed = all(mp(x) < p + DELTA_I for x, p in BOUNDS)\n";
      }
      break;
    }
  }

  py << "\nprint(json.dumps({\n"
     << "    \"moment\": " << k << ",\n"
     << "    \"flag\": \"" << flag_spelling(c.flag) << "\",\n"
     << "    \"passed\": bool(passed),\n"
     << "    \"shots\": SHOTS,\n"
     << "    \"counts\": {key.replace(\" \", \"\")[::-1]: n for key, n in counts.items()},\n"
     << "    \"frequencies\": freq,\n"
     << "}, sort_keys=True))\n"
     << "sys.exit(0 if passed else 1)\n";
  return py.str();
}

}  // namespace qsolver
