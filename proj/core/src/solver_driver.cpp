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

#include "qsolver/solver_driver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "number_format.hpp"
#include "process.hpp"
#include "qsolver/error.hpp"
#include "qsolver/gates.hpp"
#include "qsolver/simulator.hpp"

namespace qsolver {

namespace {

using clock_type = std::chrono::steady_clock;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view first_word(std::string_view line) {
  line = trim(line);
  auto end = line.find_first_of(" \t");
  return line.substr(0, end);
}

bool parse_double(std::string_view text, double& out) {
  const std::string s(trim(text));
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

// "name : [lo, hi]" or "name = value"
bool parse_model_line(std::string_view line, const OutputDialect& dialect, std::string& name,
                      Interval& iv) {
  for (const auto& sep : dialect.separators) {
    const auto pos = line.find(sep);
    if (pos == std::string_view::npos) continue;
    name = std::string(trim(line.substr(0, pos)));
    if (name.empty() || name.find_first_of(" \t[") != std::string::npos) return false;
    auto rest = trim(line.substr(pos + sep.size()));
    if (!rest.empty() && rest.front() == '[') {
      const auto close = rest.find(']');
      const auto comma = rest.find(',');
      if (close == std::string_view::npos || comma == std::string_view::npos || comma > close) {
        return false;
      }
      return parse_double(rest.substr(1, comma - 1), iv.lo) &&
             parse_double(rest.substr(comma + 1, close - comma - 1), iv.hi) && iv.lo <= iv.hi;
    }
    double v = 0.0;
    if (!parse_double(rest, v)) return false;
    iv = {v, v};
    return true;
  }
  return false;
}

std::string substitute(std::string arg, const std::string& key, const std::string& value) {
  for (auto pos = arg.find(key); pos != std::string::npos; pos = arg.find(key, pos + value.size())) {
    arg.replace(pos, key.size(), value);
  }
  return arg;
}

bool past(const std::optional<clock_type::time_point>& deadline) {
  return deadline && clock_type::now() >= *deadline;
}

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

ComplexVector to_eigen(const StateVector& s) {
  ComplexVector v(static_cast<Eigen::Index>(s.dimension()));
  for (std::size_t i = 0; i < s.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

StateVector from_eigen(const ComplexVector& v, int num_qubits) {
  return StateVector(num_qubits, std::vector<Amplitude>(v.data(), v.data() + v.size()));
}

// Cumulative unitaries W_k = U_k ... U_1 for each moment k.
std::vector<ComplexMatrix> cumulative_unitaries(const ProblemSpec& problem) {
  std::vector<ComplexMatrix> out;
  const Eigen::Index dim = Eigen::Index{1} << problem.num_qubits;
  ComplexMatrix acc = ComplexMatrix::Identity(dim, dim);
  for (const auto& m : problem.moments) {
    acc = compose_segment(m.segment, problem.num_qubits) * acc;
    out.push_back(acc);
  }
  return out;
}

struct InitialVariable {
  char part;
  BasisIndex index;
  Interval interval;
};

std::vector<std::vector<InitialVariable>> initial_variables(
    std::span<const IntervalModel> exclusions) {
  std::vector<std::vector<InitialVariable>> out;
  for (const auto& model : exclusions) {
    std::vector<InitialVariable> vars;
    for (const auto& [name, iv] : model) {
      if (!is_initial_variable(name)) continue;
      const auto index = std::stoull(name.substr(2, name.size() - 4));
      vars.push_back({name[0], index, iv});
    }
    if (!vars.empty()) out.push_back(std::move(vars));
  }
  return out;
}

double variable_value(const ComplexVector& psi, const InitialVariable& v) {
  const auto i = static_cast<Eigen::Index>(v.index);
  if (i >= psi.size()) return 0.0;
  return v.part == 'a' ? psi(i).real() : psi(i).imag();
}

// Distance a variable still has to travel to leave [lo - eps, hi + eps].
// Zero once it is strictly outside.
double escape_distance(double value, const Interval& iv, double eps) {
  constexpr double kStrict = 1e-12;
  const double lower = iv.lo - eps;
  const double upper = iv.hi + eps;
  if (value < lower || value > upper) return 0.0;
  return std::min(value - lower, upper - value) + kStrict;
}

// Squared constraint violations of a state, with cumulative unitaries cached.
class PenaltyEvaluator {
 public:
  PenaltyEvaluator(const ProblemSpec& problem, std::span<const IntervalModel> exclusions,
                   double eps, double delta_eq)
      : problem_(problem),
        unitaries_(cumulative_unitaries(problem)),
        exclusions_(initial_variables(exclusions)),
        eps_(eps),
        delta_eq_(delta_eq) {
    const int n = problem.num_qubits;
    for (const auto& m : problem.moments) {
      const auto& c = m.constraint;
      std::vector<BasisIndex> zero;
      if (c.flag == ConstraintFlag::In || c.flag == ConstraintFlag::NotIn) {
        const auto allowed = observation_indices(std::get<ObservationSet>(c.payload), c.measured, n);
        const bool zero_inside = c.flag == ConstraintFlag::NotIn;
        for (BasisIndex x = 0; x < (BasisIndex{1} << n); ++x) {
          if (std::binary_search(allowed.begin(), allowed.end(), x) == zero_inside) zero.push_back(x);
        }
      }
      zero_indices_.push_back(std::move(zero));
    }
  }

  double operator()(const ComplexVector& psi) const {
    double total = 0.0;
    for (std::size_t k = 0; k < unitaries_.size(); ++k) {
      const ComplexVector out = unitaries_[k] * psi;
      const auto& c = problem_.moments[k].constraint;
      switch (c.flag) {
        case ConstraintFlag::In:
        case ConstraintFlag::NotIn:
          for (BasisIndex x : zero_indices_[k]) {
            const double p = std::norm(out(static_cast<Eigen::Index>(x)));
            total += p * p;
          }
          break;
        case ConstraintFlag::Eq: {
          const auto marg = marginal(out, c.measured);
          const auto& d = std::get<Distribution>(c.payload).probs;
          for (std::size_t o = 0; o < marg.size(); ++o) {
            const double v = std::max(0.0, std::abs(marg[o] - d[o]) - delta_eq_);
            total += v * v;
          }
          break;
        }
        case ConstraintFlag::Gt:
        case ConstraintFlag::Lt: {
          constexpr double kStrict = 1e-12;
          const auto marg = marginal(out, c.measured);
          for (const auto& [x, p] : std::get<PairList>(c.payload).pairs) {
            const double v = c.flag == ConstraintFlag::Gt
                                 ? std::max(0.0, (p - delta_eq_) - marg[x] + kStrict)
                                 : std::max(0.0, marg[x] - (p + delta_eq_));
            total += v * v;
          }
          break;
        }
      }
    }
    for (const auto& vars : exclusions_) {
      double d = INFINITY;
      for (const auto& v : vars) d = std::min(d, escape_distance(variable_value(psi, v), v.interval, eps_));
      total += d * d;
    }
    return total;
  }

  bool excluded(const ComplexVector& psi) const {
    return std::any_of(exclusions_.begin(), exclusions_.end(), [&](const auto& vars) {
      return std::all_of(vars.begin(), vars.end(), [&](const InitialVariable& v) {
        return escape_distance(variable_value(psi, v), v.interval, eps_) > 0.0;
      });
    });
  }

  const std::vector<ComplexMatrix>& unitaries() const { return unitaries_; }
  const std::vector<BasisIndex>& zero_indices(std::size_t k) const { return zero_indices_[k]; }

 private:
  static std::vector<double> marginal(const ComplexVector& v, std::span<const int> measured) {
    std::vector<double> out(std::size_t{1} << measured.size(), 0.0);
    for (Eigen::Index x = 0; x < v.size(); ++x) {
      out[marginal_index(static_cast<BasisIndex>(x), measured)] += std::norm(v(x));
    }
    return out;
  }

  const ProblemSpec& problem_;
  std::vector<ComplexMatrix> unitaries_;
  std::vector<std::vector<BasisIndex>> zero_indices_;
  std::vector<std::vector<InitialVariable>> exclusions_;
  double eps_;
  double delta_eq_;
};

bool only_support_constraints(const ProblemSpec& problem) {
  return std::all_of(problem.moments.begin(), problem.moments.end(), [](const Moment& m) {
    return m.constraint.flag == ConstraintFlag::In || m.constraint.flag == ConstraintFlag::NotIn;
  });
}

ComplexVector random_complex(Eigen::Index size, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexVector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = Amplitude(gauss(rng), gauss(rng));
  return v;
}

// Exact route for in/not_in: every such constraint forces the amplitudes of
// some basis states of W_k psi to zero, i.e. a set of linear equations on psi.
SolverResult subspace_solve(const ProblemSpec& problem, std::span<const IntervalModel> exclusions,
                            const FallbackOptions& options) {
  const auto start = clock_type::now();
  const int n = problem.num_qubits;
  const Eigen::Index dim = Eigen::Index{1} << n;
  PenaltyEvaluator eval(problem, exclusions, options.eps, options.delta_eq);

  std::size_t rows = 0;
  for (std::size_t k = 0; k < problem.moments.size(); ++k) rows += eval.zero_indices(k).size();
  ComplexMatrix constraints(static_cast<Eigen::Index>(rows), dim);
  Eigen::Index r = 0;
  for (std::size_t k = 0; k < problem.moments.size(); ++k) {
    for (BasisIndex x : eval.zero_indices(k)) {
      constraints.row(r++) = eval.unitaries()[k].row(static_cast<Eigen::Index>(x));
    }
  }

  ComplexMatrix kernel;
  if (rows == 0) {
    kernel = ComplexMatrix::Identity(dim, dim);
  } else {
    Eigen::BDCSVD<ComplexMatrix> svd(constraints, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > 1e-9) ++rank;
    }
    kernel = svd.matrixV().rightCols(dim - rank);
  }
  if (kernel.cols() == 0) return SolverUnsat{0.0};

  // First candidate: uniform superposition over the first moment's allowed
  // outcomes, pulled back through its circuit and projected onto the kernel.
  ComplexVector target = ComplexVector::Zero(dim);
  const auto& zero0 = eval.zero_indices(0);
  for (Eigen::Index x = 0; x < dim; ++x) {
    if (!std::binary_search(zero0.begin(), zero0.end(), static_cast<BasisIndex>(x))) target(x) = 1.0;
  }
  ComplexVector psi = kernel * (kernel.adjoint() * (eval.unitaries()[0].adjoint() * target));

  std::mt19937_64 rng(options.seed);
  for (int attempt = 0; attempt <= options.budget; ++attempt) {
    if (past(options.deadline)) return SolverTimeout{seconds_since(start)};
    if (attempt > 0 || psi.norm() < 1e-6) psi = kernel * random_complex(kernel.cols(), rng);
    psi.normalize();
    psi = psi.unaryExpr([](const Amplitude& a) {
      return Amplitude(std::abs(a.real()) < 1e-15 ? 0.0 : a.real(),
                       std::abs(a.imag()) < 1e-15 ? 0.0 : a.imag());
    });
    if (!eval.excluded(psi)) {
      const auto state = from_eigen(psi, n);
      return SolverSat{point_model(problem, state), eval(psi)};
    }
  }
  return SolverUnknown{point_model(problem, from_eigen(psi, n)), eval(psi)};
}

}  // namespace

SolverResult parse_solver_output(std::string_view output, const OutputDialect& dialect) {
  std::istringstream lines{std::string(output)};
  std::string line;
  bool sat = false;
  IntervalModel model;
  while (std::getline(lines, line)) {
    if (trim(line).empty()) continue;
    if (!sat) {
      const auto word = first_word(line);
      if (std::find(dialect.unsat_markers.begin(), dialect.unsat_markers.end(), word) !=
          dialect.unsat_markers.end()) {
        return SolverUnsat{};
      }
      if (std::find(dialect.sat_markers.begin(), dialect.sat_markers.end(), word) !=
          dialect.sat_markers.end()) {
        sat = true;
      }
      continue;
    }
    std::string name;
    Interval iv;
    if (parse_model_line(line, dialect, name, iv)) model[name] = iv;
  }
  if (!sat) throw BackendOutputError("solver output has no sat/unsat verdict", std::string(output));
  return SolverSat{std::move(model), 0.0};
}

std::optional<std::string> resolve_solver_path(const std::optional<std::string>& explicit_path) {
  if (explicit_path && !explicit_path->empty()) return explicit_path;
  if (const char* env = std::getenv(kSolverPathEnv); env != nullptr && *env != '\0') {
    return std::string(env);
  }
  return std::nullopt;
}

SolverResult run_external(const SmtDocument& document, const ExternalSolverOptions& options) {
  if (!(options.precision > 0.0)) throw FormatError("precision must be positive");
  if (!detail::executable_exists(options.executable)) {
    throw BackendNotFoundError("solver executable '" + options.executable + "' not found");
  }
  std::filesystem::create_directories(options.work_dir);
  const auto file = options.work_dir / options.file_name;
  {
    std::ofstream os(file);
    if (!os) throw Error("cannot write " + file.string());
    os << document.to_smtlib();
  }

  std::vector<std::string> argv{options.executable};
  for (const auto& a : options.arguments) {
    argv.push_back(substitute(substitute(a, "{precision}", detail::shortest(options.precision)),
                              "{file}", file.string()));
  }
  const auto proc = detail::run_process(argv, std::max(options.timeout_seconds, 0.0));
  if (proc.timed_out) return SolverTimeout{proc.elapsed_seconds};
  if (proc.exit_status == 127 && proc.out.empty()) {
    throw BackendNotFoundError("solver executable '" + options.executable + "' could not start");
  }
  try {
    return parse_solver_output(proc.out, options.dialect);
  } catch (const BackendOutputError& e) {
    throw BackendOutputError(std::string(e.what()) + " (exit status " +
                                 std::to_string(proc.exit_status) + ")",
                             proc.out + proc.err);
  }
}

StateVector extract_state(const IntervalModel& model, int num_qubits) {
  const BasisIndex dim = BasisIndex{1} << num_qubits;
  std::vector<Amplitude> amps(dim);
  for (BasisIndex x = 0; x < dim; ++x) {
    double parts[2];
    for (int p = 0; p < 2; ++p) {
      const auto name = amplitude_variable(p == 0 ? 'a' : 'b', x, 0);
      auto it = model.find(name);
      if (it == model.end()) throw FormatError("model has no value for " + name);
      parts[p] = it->second.midpoint();
      if (!std::isfinite(parts[p])) throw FormatError("unbounded interval for " + name);
    }
    amps[x] = Amplitude(parts[0], parts[1]);
  }
  StateVector raw(num_qubits, std::move(amps));
  if (raw.norm_squared() == 0.0) throw DegenerateStateError("model midpoints form the zero vector");
  return normalize(raw);
}

IntervalModel point_model(const ProblemSpec& problem, const StateVector& initial) {
  IntervalModel model;
  auto add = [&](const StateVector& s, std::size_t step) {
    for (BasisIndex x = 0; x < s.dimension(); ++x) {
      model[amplitude_variable('a', x, step)] = {s[x].real(), s[x].real()};
      model[amplitude_variable('b', x, step)] = {s[x].imag(), s[x].imag()};
    }
  };
  add(initial, 0);
  const auto states = moment_states(initial, problem);
  for (std::size_t k = 0; k < states.size(); ++k) add(states[k], k + 1);
  return model;
}

double constraint_penalty(const ProblemSpec& problem, const StateVector& initial,
                          std::span<const IntervalModel> exclusions, double eps, double delta_eq) {
  PenaltyEvaluator eval(problem, exclusions, eps, delta_eq);
  return eval(to_eigen(initial));
}

SolverResult penalty_solve(const ProblemSpec& problem, std::span<const IntervalModel> exclusions,
                           const FallbackOptions& options) {
  const auto start = clock_type::now();
  const int n = problem.num_qubits;
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index params = 2 * dim;
  PenaltyEvaluator eval(problem, exclusions, options.eps, options.delta_eq);

  auto to_state = [&](const Eigen::VectorXd& v) {
    ComplexVector psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) psi(i) = Amplitude(v(i), v(dim + i));
    return ComplexVector(psi / psi.norm());
  };
  auto objective = [&](const Eigen::VectorXd& v) { return eval(to_state(v)); };

  constexpr int kMaxSweeps = 4000;
  constexpr double kMinStep = 1e-10;
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;

  Eigen::VectorXd best_v;
  double best = INFINITY;
  for (int restart = 0; restart < std::max(options.budget, 1); ++restart) {
    Eigen::VectorXd v(params);
    for (Eigen::Index i = 0; i < params; ++i) v(i) = gauss(rng);
    v.normalize();
    double f = objective(v);
    double step = 0.25;
    for (int sweep = 0; sweep < kMaxSweeps && step > kMinStep; ++sweep) {
      if (past(options.deadline)) return SolverTimeout{seconds_since(start)};
      if (f < options.feasible_penalty * 1e-3) break;
      bool improved = false;
      for (Eigen::Index i = 0; i < params; ++i) {
        for (double dir : {1.0, -1.0}) {
          const double old = v(i);
          v(i) = old + dir * step;
          const double g = objective(v);
          if (g < f) {
            f = g;
            improved = true;
            break;
          }
          v(i) = old;
        }
      }
      if (!improved) step *= 0.5;
      v.normalize();
    }
    if (f < best) {
      best = f;
      best_v = v;
    }
    if (best < options.feasible_penalty) break;
  }

  const auto state = from_eigen(to_state(best_v), n);
  if (best < options.feasible_penalty) return SolverSat{point_model(problem, state), best};
  if (best > options.unsat_penalty) return SolverUnsat{best};
  return SolverUnknown{point_model(problem, state), best};
}

SolverResult fallback_solve(const ProblemSpec& problem, std::span<const IntervalModel> exclusions,
                            const FallbackOptions& options) {
  if (only_support_constraints(problem)) return subspace_solve(problem, exclusions, options);
  return penalty_solve(problem, exclusions, options);
}

}  // namespace qsolver
