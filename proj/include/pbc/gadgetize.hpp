// Copyright 2026 The PBC Compiler Authors
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

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pbc/circuit.hpp"

namespace pbc {

/// Adaptive Clifford circuit on n_main + t qubits whose last t qubits start in
/// the magic state (|0> + e^{i pi/4}|1>)/sqrt(2).
struct GadgetizedCircuit {
  Circuit circuit;
  std::size_t n_main = 0;
  std::size_t t = 0;
  std::vector<std::size_t> aux_measure_cbits;
  std::vector<std::size_t> output_cbits;

  std::size_t aux_qubit(std::size_t j) const { return n_main + j; }
};

/// Replaces the j-th T gate on qubit q by
///   cx q aux_j ; measure aux_j -> c(m+j) ; if (c(m+j)) s q
/// where aux_j = n + j is a fresh magic-state qubit.
inline GadgetizedCircuit gadgetize(const Circuit& c) {
  if (!c.is_unitary_with_trailing_measurements()) {
    throw std::invalid_argument("gadgetize requires a unitary circuit with trailing measurements");
  }
  for (InputState s : c.input_spec()) {
    if (s != InputState::Zero) {
      throw std::invalid_argument("gadgetize requires all inputs in |0>");
    }
  }
  const std::size_t n = c.num_qubits();
  const std::size_t m = c.num_cbits();
  const std::size_t t = c.t_count();

  GadgetizedCircuit out;
  out.circuit = Circuit(n + t, m + t);
  out.n_main = n;
  out.t = t;
  for (std::size_t j = 0; j < t; ++j) {
    out.circuit.set_input(n + j, InputState::Magic);
  }

  std::size_t j = 0;
  for (const Instruction& inst : c.instructions()) {
    const Gate* g = std::get_if<Gate>(&inst);
    if (g != nullptr && g->kind == GateKind::T) {
      std::size_t aux = n + j;
      std::size_t bit = m + j;
      out.circuit.cx(g->qubit, aux);
      out.circuit.measure(aux, bit);
      out.circuit.cond(GateKind::S, g->qubit, Condition{{bit}, false});
      out.aux_measure_cbits.push_back(bit);
      ++j;
      continue;
    }
    if (const auto* ms = std::get_if<Measure>(&inst)) {
      out.output_cbits.push_back(ms->cbit);
    }
    out.circuit.append(inst);
  }
  return out;
}

}  // namespace pbc
