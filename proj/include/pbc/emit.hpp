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
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pbc/circuit.hpp"
#include "pbc/pauli.hpp"

namespace pbc {

/// One ancilla; controlled Paulis applied one data qubit at a time.
struct AuxQubit {};

/// Basis change to Z, CNOT tree folding the parity into the highest-index
/// qubit of the support, measure, then undo. With `elide_uncompute` the undo
/// block is not emitted; later Paulis are rewritten into the resulting frame
/// and the skipped blocks are returned as `frame_correction`.
struct CnotCascade {
  bool elide_uncompute = false;
};

enum class GhzPrep : std::uint8_t { Tree, ConstDepth };

/// One ancilla per non-trivial qubit, prepared in a GHZ state.
struct GhzFanout {
  GhzPrep prep = GhzPrep::Tree;
};

using EmitScheme = std::variant<AuxQubit, CnotCascade, GhzFanout>;

inline std::string scheme_name(const EmitScheme& s) {
  if (std::holds_alternative<AuxQubit>(s)) {
    return "aux";
  }
  if (const auto* c = std::get_if<CnotCascade>(&s)) {
    return c->elide_uncompute ? "cascade-elide" : "cascade";
  }
  return std::get<GhzFanout>(s).prep == GhzPrep::Tree ? "ghz" : "ghz-const";
}

/// The outcome of `pauli` is sign_flip XOR the parity of `cbits`.
struct MeasurementRecord {
  PauliOperator pauli;           // as requested by the caller
  PauliOperator measured;        // operator actually measured (differs only when uncompute is elided)
  std::vector<std::size_t> cbits;
  bool sign_flip = false;

  bool outcome(const std::vector<std::uint8_t>& cbit_values) const {
    bool v = sign_flip;
    for (std::size_t c : cbits) {
      v ^= cbit_values.at(c) != 0;
    }
    return v;
  }
};

struct EmittedProgram {
  Circuit circuit;  // data qubits [0, t) start in the magic state
  std::size_t num_data = 0;
  std::vector<MeasurementRecord> records;
  std::vector<Instruction> frame_correction;  // unitary; maps the final data state back to the logical one
};

struct ResourceBounds {
  std::size_t n_hs_ub;
  std::size_t n_cnot_ub;
  std::size_t depth_ub;
};

inline ResourceBounds resource_bounds(std::size_t t) {
  if (t == 0) {
    throw std::invalid_argument("resource bounds need t >= 1");
  }
  return {4 * t * t, t * t, t * (t + 5) - 1};
}

namespace detail {

inline void validate_paulis(const std::vector<PauliOperator>& paulis) {
  if (paulis.empty()) {
    return;
  }
  const std::size_t t = paulis.front().width();
  if (t == 0) {
    throw std::invalid_argument("cannot emit measurements on an empty register");
  }
  for (std::size_t i = 0; i < paulis.size(); ++i) {
    const PauliOperator& p = paulis[i];
    if (p.width() != t) {
      throw std::invalid_argument("Pauli " + std::to_string(i) + " has width " + std::to_string(p.width()) +
                                  ", expected " + std::to_string(t));
    }
    if (p.is_identity()) {
      throw std::invalid_argument("Pauli " + std::to_string(i) + " is a multiple of the identity");
    }
    if (!p.is_hermitian()) {
      throw std::invalid_argument("Pauli " + std::to_string(i) + " is not Hermitian");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!commutes(paulis[j], p)) {
        throw std::invalid_argument("Paulis " + std::to_string(j) + " and " + std::to_string(i) + " anticommute");
      }
    }
  }
}

// Controlled-sigma from `control` onto data qubit q.
inline void controlled_pauli(Circuit& c, std::size_t control, std::size_t q, char sigma) {
  switch (sigma) {
    case 'X':
      c.cx(control, q);
      break;
    case 'Z':
      c.h(q).cx(control, q).h(q);
      break;
    case 'Y':
      c.sdg(q).cx(control, q).s(q);
      break;
    default:
      break;
  }
}

inline void emit_aux(EmittedProgram& out, const std::vector<PauliOperator>& paulis) {
  const std::size_t t = out.num_data;
  const std::size_t aux = t;
  Circuit& c = out.circuit;
  for (std::size_t i = 0; i < paulis.size(); ++i) {
    const PauliOperator& p = paulis[i];
    c.h(aux);
    for (std::size_t q : p.support()) {
      controlled_pauli(c, aux, q, p.pauli_at(q));
    }
    c.h(aux);
    c.measure(aux, i);
    if (i + 1 < paulis.size()) {
      c.cond(GateKind::X, aux, Condition{{i}, false});
    }
    out.records.push_back({p, p, {i}, p.is_negative()});
  }
}

inline void emit_cascade(EmittedProgram& out, const std::vector<PauliOperator>& paulis, bool elide) {
  Circuit& c = out.circuit;
  std::vector<CliffordGate> frame;  // every forward gate whose undo was skipped, in time order
  std::vector<std::vector<Instruction>> skipped;

  for (std::size_t i = 0; i < paulis.size(); ++i) {
    PauliOperator p = paulis[i];
    for (const CliffordGate& g : frame) {
      p = conjugate_by_inverse_gate(std::move(p), g);
    }
    std::vector<std::size_t> support = p.support();
    std::vector<Instruction> forward;
    for (std::size_t q : support) {
      char sigma = p.pauli_at(q);
      if (sigma == 'X') {
        forward.push_back(Gate{GateKind::H, q});
      } else if (sigma == 'Y') {
        forward.push_back(Gate{GateKind::Sdg, q});
        forward.push_back(Gate{GateKind::H, q});
      }
    }
    std::vector<std::size_t> level = support;
    while (level.size() > 1) {
      std::vector<std::size_t> next;
      for (std::size_t a = 0; a + 1 < level.size(); a += 2) {
        forward.push_back(Cnot{level[a], level[a + 1]});
        next.push_back(level[a + 1]);
      }
      if (level.size() % 2 == 1) {
        next.push_back(level.back());
      }
      level = std::move(next);
    }
    const std::size_t target = level.front();

    std::vector<Instruction> undo;
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
      if (const auto* g = std::get_if<Gate>(&*it)) {
        undo.push_back(Gate{g->kind == GateKind::Sdg ? GateKind::S : g->kind, g->qubit});
      } else {
        undo.push_back(*it);
      }
    }

    for (const Instruction& inst : forward) {
      c.append(inst);
    }
    c.measure(target, i);
    if (elide) {
      for (const Instruction& inst : forward) {
        if (const auto* g = std::get_if<Gate>(&inst)) {
          frame.push_back({g->kind == GateKind::H ? CliffordKind::H : CliffordKind::Sdg, g->qubit});
        } else {
          const auto& cx = std::get<Cnot>(inst);
          frame.push_back({CliffordKind::CX, cx.control, cx.target});
        }
      }
      skipped.push_back(std::move(undo));
    } else {
      for (const Instruction& inst : undo) {
        c.append(inst);
      }
    }
    out.records.push_back({paulis[i], p, {i}, p.is_negative()});
  }
  for (auto it = skipped.rbegin(); it != skipped.rend(); ++it) {
    out.frame_correction.insert(out.frame_correction.end(), it->begin(), it->end());
  }
}

inline void emit_ghz(EmittedProgram& out, const std::vector<PauliOperator>& paulis, GhzPrep prep,
                     std::size_t max_weight) {
  const std::size_t t = out.num_data;
  const std::size_t aux0 = t;
  const std::size_t helper0 = t + max_weight;
  Circuit& c = out.circuit;
  std::size_t cbit = 0;
  for (std::size_t i = 0; i < paulis.size(); ++i) {
    const PauliOperator& p = paulis[i];
    const bool last = i + 1 == paulis.size();
    std::vector<std::size_t> support = p.support();
    const std::size_t w = support.size();

    if (prep == GhzPrep::Tree) {
      c.h(aux0);
      std::size_t have = 1;
      while (have < w) {
        std::size_t copies = std::min(have, w - have);
        for (std::size_t a = 0; a < copies; ++a) {
          c.cx(aux0 + a, aux0 + have + a);
        }
        have += copies;
      }
    } else {
      for (std::size_t a = 0; a < w; ++a) {
        c.h(aux0 + a);
      }
      for (std::size_t a = 0; a + 1 < w; ++a) {
        c.cx(aux0 + a, helper0 + a);
      }
      for (std::size_t a = 0; a + 1 < w; ++a) {
        c.cx(aux0 + a + 1, helper0 + a);
      }
      std::vector<std::size_t> helper_bits;
      for (std::size_t a = 0; a + 1 < w; ++a) {
        c.measure(helper0 + a, cbit);
        helper_bits.push_back(cbit++);
      }
      // Helper a holds the parity of aux a and a + 1; flip aux j when the
      // parity chain from aux 0 is odd.
      for (std::size_t j = 1; j < w; ++j) {
        c.cond(GateKind::X, aux0 + j,
               Condition{std::vector<std::size_t>(helper_bits.begin(), helper_bits.begin() + j), false});
      }
      if (!last) {
        for (std::size_t a = 0; a + 1 < w; ++a) {
          c.cond(GateKind::X, helper0 + a, Condition{{helper_bits[a]}, false});
        }
      }
    }

    for (std::size_t a = 0; a < w; ++a) {
      controlled_pauli(c, aux0 + a, support[a], p.pauli_at(support[a]));
    }
    MeasurementRecord rec{p, p, {}, p.is_negative()};
    for (std::size_t a = 0; a < w; ++a) {
      c.h(aux0 + a);
      c.measure(aux0 + a, cbit);
      rec.cbits.push_back(cbit++);
    }
    if (!last) {
      for (std::size_t a = 0; a < w; ++a) {
        c.cond(GateKind::X, aux0 + a, Condition{{rec.cbits[a]}, false});
      }
    }
    out.records.push_back(std::move(rec));
  }
}

}  // namespace detail

/// Adaptive Clifford circuit measuring `paulis` in order on a register of
/// paulis[0].width() data qubits.
inline EmittedProgram emit(const std::vector<PauliOperator>& paulis, const EmitScheme& scheme,
                           std::size_t register_width = 0) {
  detail::validate_paulis(paulis);
  const std::size_t t = paulis.empty() ? register_width : paulis.front().width();
  EmittedProgram out;
  out.num_data = t;
  std::size_t max_weight = 0;
  std::size_t total_weight = 0;
  for (const PauliOperator& p : paulis) {
    max_weight = std::max(max_weight, p.weight());
    total_weight += p.weight();
  }

  std::size_t qubits = t;
  std::size_t cbits = paulis.size();
  if (std::holds_alternative<AuxQubit>(scheme)) {
    qubits = t + 1;
  } else if (const auto* g = std::get_if<GhzFanout>(&scheme)) {
    qubits = t + max_weight;
    cbits = total_weight;
    if (g->prep == GhzPrep::ConstDepth && max_weight > 1) {
      qubits += max_weight - 1;
      for (const PauliOperator& p : paulis) {
        cbits += p.weight() - 1;
      }
    }
  }
  out.circuit = Circuit(qubits, cbits);
  for (std::size_t q = 0; q < t; ++q) {
    out.circuit.set_input(q, InputState::Magic);
  }

  if (std::holds_alternative<AuxQubit>(scheme)) {
    detail::emit_aux(out, paulis);
  } else if (const auto* c = std::get_if<CnotCascade>(&scheme)) {
    detail::emit_cascade(out, paulis, c->elide_uncompute);
  } else {
    detail::emit_ghz(out, paulis, std::get<GhzFanout>(scheme).prep, max_weight);
  }
  return out;
}

}  // namespace pbc
