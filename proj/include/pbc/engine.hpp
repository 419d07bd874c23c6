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

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pbc/basis.hpp"
#include "pbc/circuit.hpp"
#include "pbc/gadgetize.hpp"
#include "pbc/pauli.hpp"
#include "pbc/rng.hpp"
#include "pbc/statevector.hpp"

namespace pbc {

enum class Resolution : std::uint8_t { CoinToss, Determined, QuantumMeasured };

inline const char* resolution_name(Resolution r) {
  switch (r) {
    case Resolution::CoinToss: return "coin_toss";
    case Resolution::Determined: return "determined";
    case Resolution::QuantumMeasured: return "quantum";
  }
  return "?";
}

struct TraceEntry {
  std::size_t cbit;
  PauliOperator front_pauli;  // width n + t, after all reflections
  Resolution resolution;
  bool outcome;
};

/// A Pauli measured on the quantum register, restricted to that register.
struct RegisterMeasurement {
  PauliOperator pauli;
  bool outcome;
};

struct ShotStats {
  std::size_t num_quantum_measurements = 0;
  std::size_t num_coin_tosses = 0;
  std::size_t num_determined = 0;
  double wall_time_s = 0.0;
};

struct ShotResult {
  std::vector<std::uint8_t> output_bits;
  std::vector<std::uint8_t> cbit_values;
  std::vector<RegisterMeasurement> quantum_measurements;
  std::vector<TraceEntry> trace;
  ShotStats stats;
};

inline std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (std::uint8_t b : bits) {
    s += b ? '1' : '0';
  }
  return s;
}

namespace detail {

inline CliffordGate clifford_of(GateKind kind, std::size_t q) {
  switch (kind) {
    case GateKind::H: return {CliffordKind::H, q};
    case GateKind::S: return {CliffordKind::S, q};
    case GateKind::Sdg: return {CliffordKind::Sdg, q};
    case GateKind::X: return {CliffordKind::X, q};
    case GateKind::Z: return {CliffordKind::Z, q};
    case GateKind::T: break;
  }
  throw std::invalid_argument("T gates must be gadgetized before simulation");
}

// U^dag P U, where U is the Clifford prefix instructions[0, end) with every
// conditional gate resolved from `cbits`.
inline PauliOperator pull_to_front(PauliOperator p, const std::vector<Instruction>& instructions, std::size_t end,
                                   const std::vector<std::uint8_t>& cbits) {
  for (std::size_t i = end; i-- > 0;) {
    const Instruction& inst = instructions[i];
    if (const auto* g = std::get_if<Gate>(&inst)) {
      p = conjugate_by_gate(std::move(p), clifford_of(g->kind, g->qubit));
    } else if (const auto* cx = std::get_if<Cnot>(&inst)) {
      p = conjugate_by_gate(std::move(p), {CliffordKind::CX, cx->control, cx->target});
    } else if (const auto* cg = std::get_if<CondGate>(&inst)) {
      if (cg->condition.evaluate(cbits)) {
        p = conjugate_by_gate(std::move(p), clifford_of(cg->kind, cg->qubit));
      }
    } else if (std::holds_alternative<Reset>(inst)) {
      throw std::invalid_argument("reset is not supported by the PBC engine");
    }
  }
  return p;
}

}  // namespace detail

/// One shot of Pauli-based weak simulation.
///
/// `overrides` replaces the magic state on the first overrides.size() magic
/// qubits by the +1 eigenstate of the given signed single-qubit Paulis; the
/// backend then holds only the remaining t - k magic qubits.
inline ShotResult run_shot(const GadgetizedCircuit& gc, const std::vector<PauliOperator>& overrides,
                           MeasurementBackend& backend, Rng& rng, bool keep_trace = true) {
  auto start = std::chrono::steady_clock::now();
  const Circuit& c = gc.circuit;
  const std::size_t n = gc.n_main;
  const std::size_t t = gc.t;
  const std::size_t k = overrides.size();
  const std::size_t width = n + t;
  if (c.num_qubits() != width) {
    throw std::invalid_argument("gadgetized circuit width does not match n_main + t");
  }
  if (k > t) {
    throw std::invalid_argument("more overrides (" + std::to_string(k) + ") than magic qubits (" +
                                std::to_string(t) + ")");
  }
  if (backend.num_qubits() != t - k) {
    throw std::invalid_argument("backend register has " + std::to_string(backend.num_qubits()) +
                                " qubits, expected " + std::to_string(t - k));
  }

  BasisTracker basis(width);
  std::vector<PauliOperator> clear_rows;  // dummy or override row per non-register qubit
  for (std::size_t q = 0; q < n; ++q) {
    PauliOperator z = PauliOperator::single(width, q, 'Z');
    basis.insert(z, false, RowOrigin::Dummy);
    clear_rows.push_back(std::move(z));
  }
  for (std::size_t j = 0; j < k; ++j) {
    const PauliOperator& g = overrides[j];
    if (g.width() != 1 || g.is_identity() || !g.is_hermitian()) {
      throw std::invalid_argument("override " + std::to_string(j) + " must be a signed single-qubit Pauli");
    }
    PauliOperator e = g.embedded(width, n + j);
    basis.insert(e, false, RowOrigin::Dummy);
    clear_rows.push_back(std::move(e));
  }

  std::vector<Reflection> reflections;
  ShotResult result;
  result.cbit_values.assign(c.num_cbits(), 0);
  const auto& instructions = c.instructions();

  for (std::size_t i = 0; i < instructions.size(); ++i) {
    const auto* ms = std::get_if<Measure>(&instructions[i]);
    if (ms == nullptr) {
      continue;
    }
    PauliOperator p =
        detail::pull_to_front(PauliOperator::single(width, ms->qubit, 'Z'), instructions, i, result.cbit_values);
    // The state is U V_1 ... V_r phi, so V_1 acts on the observable first.
    for (const Reflection& v : reflections) {
      p = conjugate_by_reflection(p, v);
    }

    bool outcome = false;
    Resolution res;
    Classification cls = basis.classify(p);
    if (const auto* anti = std::get_if<Anticommuting>(&cls)) {
      outcome = coin(rng);
      reflections.push_back({anti->row, basis.row(anti->row), p, basis.outcome(anti->row), outcome});
      res = Resolution::CoinToss;
      ++result.stats.num_coin_tosses;
    } else if (const auto* dep = std::get_if<Dependent>(&cls)) {
      outcome = dep->sign_bit;
      for (std::size_t r : dep->rows) {
        outcome ^= basis.outcome(r);
      }
      res = Resolution::Determined;
      ++result.stats.num_determined;
    } else {
      // Rows for non-register qubits have outcome 0, so multiplying by them
      // leaves the measured eigenvalue unchanged.
      PauliOperator reduced = p;
      for (std::size_t q = 0; q < n + k; ++q) {
        if (reduced.x(q) || reduced.z(q)) {
          reduced = multiply(reduced, clear_rows[q]);
        }
      }
      PauliOperator reg;
      try {
        reg = reduced.slice(n + k, t - k);
      } catch (const std::logic_error&) {
        throw std::logic_error("independent front Pauli " + p.str() + " acts outside the quantum register");
      }
      outcome = backend.measure(reg, rng);
      basis.insert(p, outcome, RowOrigin::Quantum);
      result.quantum_measurements.push_back({std::move(reg), outcome});
      res = Resolution::QuantumMeasured;
      ++result.stats.num_quantum_measurements;
    }
    result.cbit_values[ms->cbit] = outcome ? 1 : 0;
    if (keep_trace) {
      result.trace.push_back({ms->cbit, std::move(p), res, outcome});
    }
  }

  result.output_bits.reserve(gc.output_cbits.size());
  for (std::size_t b : gc.output_cbits) {
    result.output_bits.push_back(result.cbit_values[b]);
  }
  result.stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

using BackendFactory = std::function<std::unique_ptr<MeasurementBackend>(std::size_t num_qubits)>;

inline BackendFactory backend_factory(BackendKind kind) {
  return [kind](std::size_t q) { return make_backend(kind, q); };
}

struct SampleOptions {
  std::size_t shots = 1;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool keep_trace = true;
};

struct SampleResult {
  std::vector<ShotResult> results;
  std::map<std::string, std::size_t> histogram;
};

/// Runs fn(i) for i in [0, count) on up to `workers` threads. The first
/// exception thrown by any call is rethrown.
inline void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) {
          fn(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) {
    th.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

/// Independent shots; shot i draws from substream(seed, i), so the result does
/// not depend on the worker count.
inline SampleResult sample(const GadgetizedCircuit& gc, const SampleOptions& opt, const BackendFactory& factory) {
  if (opt.shots == 0) {
    throw std::invalid_argument("shots must be at least 1");
  }
  SampleResult out;
  out.results.resize(opt.shots);
  const std::vector<PauliOperator> no_overrides;
  parallel_for(opt.shots, opt.workers, [&](std::size_t i) {
    Rng rng = substream(opt.seed, i);
    std::unique_ptr<MeasurementBackend> backend = factory(gc.t);
    out.results[i] = run_shot(gc, no_overrides, *backend, rng, opt.keep_trace);
  });
  for (const ShotResult& r : out.results) {
    ++out.histogram[bits_to_string(r.output_bits)];
  }
  return out;
}

inline SampleResult sample(const GadgetizedCircuit& gc, const SampleOptions& opt, BackendKind kind) {
  return sample(gc, opt, backend_factory(kind));
}

}  // namespace pbc
