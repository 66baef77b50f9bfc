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

#include "qsolver/gates.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qsolver/error.hpp"

namespace qsolver {

namespace {

using namespace std::complex_literals;

constexpr std::array<GateSignature, 29> kCatalog{{
    {"h", 1, 0, true},     {"x", 1, 0, true},     {"y", 1, 0, true},    {"z", 1, 0, true},
    {"s", 1, 0, false},    {"sdg", 1, 0, false},  {"t", 1, 0, false},   {"tdg", 1, 0, false},
    {"u", 1, 3, false},    {"p", 1, 1, false},    {"rx", 1, 1, false},  {"ry", 1, 1, false},
    {"rz", 1, 1, false},   {"sx", 1, 0, false},   {"sxdg", 1, 0, false},
    {"ch", 2, 0, true},    {"cs", 2, 0, false},   {"cz", 2, 0, true},   {"csdg", 2, 0, false},
    {"cp", 2, 1, false},   {"crx", 2, 1, false},  {"cry", 2, 1, false}, {"crz", 2, 1, false},
    {"cx", 2, 0, true},    {"swap", 2, 0, true},  {"iswap", 2, 0, false},
    {"ccx", 3, 0, true},   {"ccz", 3, 0, true},   {"cswap", 3, 0, true},
}};

ComplexMatrix mat2(Amplitude a, Amplitude b, Amplitude c, Amplitude d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ComplexMatrix hadamard() {
  const double r = 1.0 / std::numbers::sqrt2;
  return mat2(r, r, r, -r);
}
ComplexMatrix pauli_x() { return mat2(0.0, 1.0, 1.0, 0.0); }
ComplexMatrix pauli_y() { return mat2(0.0, -1i, 1i, 0.0); }
ComplexMatrix pauli_z() { return mat2(1.0, 0.0, 0.0, -1.0); }
ComplexMatrix phase(double lambda) { return mat2(1.0, 0.0, 0.0, std::polar(1.0, lambda)); }

ComplexMatrix rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return mat2(c, -1i * s, -1i * s, c);
}
ComplexMatrix ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return mat2(c, -s, s, c);
}
ComplexMatrix rz(double theta) {
  return mat2(std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2));
}
ComplexMatrix u3(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return mat2(c, -std::polar(1.0, lambda) * s, std::polar(1.0, phi) * s,
              std::polar(1.0, phi + lambda) * c);
}
ComplexMatrix sqrt_x() { return 0.5 * mat2(1.0 + 1i, 1.0 - 1i, 1.0 - 1i, 1.0 + 1i); }
ComplexMatrix sqrt_x_dg() { return 0.5 * mat2(1.0 - 1i, 1.0 + 1i, 1.0 + 1i, 1.0 - 1i); }

ComplexMatrix swap_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1.0;
  m(1, 2) = m(2, 1) = 1.0;
  return m;
}
ComplexMatrix iswap_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1.0;
  m(1, 2) = m(2, 1) = 1i;
  return m;
}

// Controls occupy the low `num_controls` local bits; `target` acts on the rest.
ComplexMatrix controlled(const ComplexMatrix& target, int num_controls) {
  const Eigen::Index control_dim = Eigen::Index{1} << num_controls;
  const Eigen::Index dim = control_dim * target.rows();
  const Eigen::Index mask = control_dim - 1;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    if ((col & mask) != mask) {
      m(col, col) = 1.0;
      continue;
    }
    const Eigen::Index t = col >> num_controls;
    for (Eigen::Index r = 0; r < target.rows(); ++r) m((r << num_controls) | mask, col) = target(r, t);
  }
  return m;
}

}  // namespace

std::span<const GateSignature> gate_catalog() noexcept { return kCatalog; }

std::optional<GateSignature> find_gate(std::string_view name) noexcept {
  for (const auto& g : kCatalog) {
    if (g.name == name) return g;
  }
  return std::nullopt;
}

void validate_gate(const GateInstance& gate, int num_qubits) {
  const auto sig = find_gate(gate.name);
  if (!sig) throw GateError("unknown gate '" + gate.name + "'");
  if (static_cast<int>(gate.qubits.size()) != sig->arity) {
    throw GateError("gate '" + gate.name + "' acts on " + std::to_string(sig->arity) +
                    " qubit(s), got " + std::to_string(gate.qubits.size()));
  }
  if (static_cast<int>(gate.params.size()) != sig->num_params) {
    throw GateError("gate '" + gate.name + "' takes " + std::to_string(sig->num_params) +
                    " parameter(s), got " + std::to_string(gate.params.size()));
  }
  for (double p : gate.params) {
    if (!std::isfinite(p)) throw GateError("gate '" + gate.name + "' has a non-finite angle");
  }
  for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
    const int q = gate.qubits[i];
    if (q < 0 || q >= num_qubits) {
      throw GateError("gate '" + gate.name + "' uses qubit " + std::to_string(q) +
                      " outside [0, " + std::to_string(num_qubits) + ")");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gate.qubits[j] == q) {
        throw GateError("gate '" + gate.name + "' repeats qubit " + std::to_string(q));
      }
    }
  }
}

ComplexMatrix build_gate_matrix(std::string_view name, std::span<const double> params) {
  const auto sig = find_gate(name);
  if (!sig) throw GateError("unknown gate '" + std::string(name) + "'");
  if (static_cast<int>(params.size()) != sig->num_params) {
    throw GateError("gate '" + std::string(name) + "' takes " + std::to_string(sig->num_params) +
                    " parameter(s), got " + std::to_string(params.size()));
  }
  const double a = params.empty() ? 0.0 : params[0];

  if (name == "h") return hadamard();
  if (name == "x") return pauli_x();
  if (name == "y") return pauli_y();
  if (name == "z") return pauli_z();
  if (name == "s") return phase(std::numbers::pi / 2);
  if (name == "sdg") return phase(-std::numbers::pi / 2);
  if (name == "t") return phase(std::numbers::pi / 4);
  if (name == "tdg") return phase(-std::numbers::pi / 4);
  if (name == "u") return u3(params[0], params[1], params[2]);
  if (name == "p") return phase(a);
  if (name == "rx") return rx(a);
  if (name == "ry") return ry(a);
  if (name == "rz") return rz(a);
  if (name == "sx") return sqrt_x();
  if (name == "sxdg") return sqrt_x_dg();
  if (name == "ch") return controlled(hadamard(), 1);
  if (name == "cs") return controlled(phase(std::numbers::pi / 2), 1);
  if (name == "cz") return controlled(pauli_z(), 1);
  if (name == "csdg") return controlled(phase(-std::numbers::pi / 2), 1);
  if (name == "cp") return controlled(phase(a), 1);
  if (name == "crx") return controlled(rx(a), 1);
  if (name == "cry") return controlled(ry(a), 1);
  if (name == "crz") return controlled(rz(a), 1);
  if (name == "cx") return controlled(pauli_x(), 1);
  if (name == "swap") return swap_matrix();
  if (name == "iswap") return iswap_matrix();
  if (name == "ccx") return controlled(pauli_x(), 2);
  if (name == "ccz") return controlled(pauli_z(), 2);
  return controlled(swap_matrix(), 1);  // cswap
}

ComplexMatrix embed_gate(const GateInstance& gate, int num_qubits) {
  validate_gate(gate, num_qubits);
  const ComplexMatrix local = build_gate_matrix(gate.name, gate.params);
  const auto& qs = gate.qubits;
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  const Eigen::Index local_dim = local.rows();

  BasisIndex gate_mask = 0;
  for (int q : qs) gate_mask |= BasisIndex{1} << q;
  auto scatter = [&](Eigen::Index l) {
    BasisIndex bits = 0;
    for (std::size_t j = 0; j < qs.size(); ++j) {
      if ((l >> j) & 1) bits |= BasisIndex{1} << qs[j];
    }
    return bits;
  };

  ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto l = static_cast<Eigen::Index>(marginal_index(static_cast<BasisIndex>(col), qs));
    const BasisIndex rest = static_cast<BasisIndex>(col) & ~gate_mask;
    for (Eigen::Index lr = 0; lr < local_dim; ++lr) {
      const Amplitude v = local(lr, l);
      if (v != Amplitude{}) full(static_cast<Eigen::Index>(rest | scatter(lr)), col) = v;
    }
  }
  return full;
}

ComplexMatrix compose_segment(std::span<const GateInstance> gates, int num_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  if (gates.empty()) return ComplexMatrix::Identity(dim, dim);
  ComplexMatrix acc = embed_gate(gates.front(), num_qubits);
  for (const auto& g : gates.subspan(1)) acc = embed_gate(g, num_qubits) * acc;
  return acc;
}

RealImagParts split_real_imag(const ComplexMatrix& u) { return {u.real(), u.imag()}; }

double unitarity_defect(const ComplexMatrix& u) {
  const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace qsolver
