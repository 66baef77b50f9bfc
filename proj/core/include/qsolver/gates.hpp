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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qsolver/model.hpp"

namespace qsolver {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;

struct GateSignature {
  std::string_view name;
  int arity = 1;
  int num_params = 0;
  bool self_inverse = false;
};

/// The 29 supported gates, single-qubit first.
std::span<const GateSignature> gate_catalog() noexcept;

std::optional<GateSignature> find_gate(std::string_view name) noexcept;

/// Throws GateError for unknown names, wrong arity/parameter count, repeated
/// or out-of-range qubits.
void validate_gate(const GateInstance& gate, int num_qubits);

/// Local matrix of a gate. Local bit j refers to the j-th listed qubit, so a
/// controlled gate has its control(s) on the low bits.
///
/// Phase conventions follow the common SDK definitions:
///   rz(t) = diag(e^{-it/2}, e^{it/2}), p(l) = diag(1, e^{il}),
///   u(t,f,l) = [[cos t/2, -e^{il} sin t/2], [e^{if} sin t/2, e^{i(f+l)} cos t/2]].
ComplexMatrix build_gate_matrix(std::string_view name, std::span<const double> params);

/// 2^n x 2^n operator acting as the gate on its qubits and identity elsewhere.
ComplexMatrix embed_gate(const GateInstance& gate, int num_qubits);

/// U_t ... U_1 for a segment [g_1, ..., g_t]; identity when empty.
ComplexMatrix compose_segment(std::span<const GateInstance> gates, int num_qubits);

struct RealImagParts {
  RealMatrix real;
  RealMatrix imag;
};

RealImagParts split_real_imag(const ComplexMatrix& u);

/// Induced infinity norm of U†U - I (max absolute row sum).
double unitarity_defect(const ComplexMatrix& u);

}  // namespace qsolver
