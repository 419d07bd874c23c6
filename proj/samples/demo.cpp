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

// Walks one circuit through the pipeline: parse, gadgetize, sample, emit
// the adaptive circuit of a single shot, and estimate one output with a
// virtual qubit.
//
//   pbc_demo [circuit-file]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "pbc/pbc.hpp"

namespace {

const char* kDemoCircuit =
    "qubits 3\n"
    "x q0\n"
    "x q1\n"
    "h q2\n"
    "t q0\n"
    "t q1\n"
    "t q2\n"
    "cx q0 q1\n"
    "cx q1 q2\n"
    "cx q2 q0\n"
    "h q2\n"
    "measure q0 -> c0\n"
    "measure q1 -> c1\n"
    "measure q2 -> c2\n";

}  // namespace

int main(int argc, char** argv) {
  std::string text = kDemoCircuit;
  if (argc > 1) {
    std::ifstream in(argv[1]);
    if (!in) {
      std::cerr << "cannot open " << argv[1] << '\n';
      return 1;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  pbc::Circuit circuit;
  try {
    circuit = pbc::parse_circuit(text);
  } catch (const pbc::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  pbc::GadgetizedCircuit gc = pbc::gadgetize(circuit);
  std::printf("%zu qubits, T-count %zu\n", gc.n_main, gc.t);

  pbc::SampleOptions opt;
  opt.shots = 2000;
  opt.seed = 1;
  pbc::SampleResult r = pbc::sample(gc, opt, pbc::BackendKind::Statevector);
  for (const auto& [bits, count] : r.histogram) {
    std::printf("  %s  %5zu\n", bits.c_str(), count);
  }

  const pbc::ShotResult& shot = r.results.front();
  std::vector<pbc::PauliOperator> paulis;
  std::printf("first shot measured %zu register Paulis:\n", shot.quantum_measurements.size());
  for (const auto& m : shot.quantum_measurements) {
    std::printf("  %s -> %d\n", m.pauli.str().c_str(), m.outcome ? 1 : 0);
    paulis.push_back(m.pauli);
  }
  if (gc.t > 0) {
    pbc::EmittedProgram prog = pbc::emit(paulis, pbc::AuxQubit{}, gc.t);
    pbc::CircuitMetrics m = pbc::metrics(prog.circuit);
    pbc::ResourceBounds b = pbc::resource_bounds(gc.t);
    std::printf("adaptive circuit: depth %zu (<= %zu), cnot %zu (<= %zu), 1q %zu (<= %zu)\n", m.depth, b.depth_ub,
                m.count_cnot, b.n_cnot_ub, m.count_1q, b.n_hs_ub);
    std::cout << pbc::serialize_circuit(prog.circuit);
  }

  if (gc.t > 0 && !gc.output_cbits.empty()) {
    pbc::EstimateOptions eo;
    eo.k = 1;
    eo.epsilon = 0.05;
    pbc::Estimate e = pbc::estimate(gc, 0, eo, pbc::BackendKind::Statevector);
    std::printf("P(c%zu = 1) ~ %.4f +- %.2f from %zu samples with one virtual qubit\n", gc.output_cbits[0], e.p_hat,
                e.half_width, e.plan.n);
  }
  return 0;
}
