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
#include <type_traits>
#include <variant>
#include <vector>

namespace pbc {

enum class GateKind : std::uint8_t { H, S, Sdg, T, X, Z };

inline const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::T: return "t";
    case GateKind::X: return "x";
    case GateKind::Z: return "z";
  }
  return "?";
}

/// Parity of a set of classical bits XOR a constant.
struct Condition {
  std::vector<std::size_t> cbits;
  bool invert = false;

  bool evaluate(const std::vector<std::uint8_t>& values) const {
    bool v = invert;
    for (std::size_t c : cbits) {
      v ^= values.at(c) != 0;
    }
    return v;
  }

  bool operator==(const Condition&) const = default;
};

struct Gate {
  GateKind kind;
  std::size_t qubit;
  bool operator==(const Gate&) const = default;
};

struct Cnot {
  std::size_t control;
  std::size_t target;
  bool operator==(const Cnot&) const = default;
};

struct Measure {
  std::size_t qubit;
  std::size_t cbit;
  bool operator==(const Measure&) const = default;
};

/// Single-qubit S, X or Z applied when `condition` evaluates to 1.
struct CondGate {
  GateKind kind;
  std::size_t qubit;
  Condition condition;
  bool operator==(const CondGate&) const = default;
};

struct Reset {
  std::size_t qubit;
  bool operator==(const Reset&) const = default;
};

using Instruction = std::variant<Gate, Cnot, Measure, CondGate, Reset>;

enum class InputState : std::uint8_t { Zero, Magic };

class Circuit {
 public:
  Circuit() = default;
  Circuit(std::size_t num_qubits, std::size_t num_cbits)
      : num_qubits_(num_qubits), num_cbits_(num_cbits), inputs_(num_qubits, InputState::Zero),
        written_(num_cbits, 0) {}

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_cbits() const { return num_cbits_; }
  const std::vector<Instruction>& instructions() const { return instructions_; }
  std::size_t size() const { return instructions_.size(); }
  const std::vector<InputState>& input_spec() const { return inputs_; }

  void set_input(std::size_t q, InputState s) {
    check_qubit(q);
    inputs_[q] = s;
  }

  Circuit& h(std::size_t q) { return gate(GateKind::H, q); }
  Circuit& s(std::size_t q) { return gate(GateKind::S, q); }
  Circuit& t(std::size_t q) { return gate(GateKind::T, q); }
  Circuit& x(std::size_t q) { return gate(GateKind::X, q); }
  Circuit& sdg(std::size_t q) { return gate(GateKind::Sdg, q); }

  Circuit& gate(GateKind kind, std::size_t q) {
    if (kind == GateKind::Z) {
      throw std::invalid_argument("z is only available as a conditional gate");
    }
    check_qubit(q);
    instructions_.push_back(Gate{kind, q});
    return *this;
  }

  Circuit& cx(std::size_t control, std::size_t target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
      throw std::invalid_argument("cx control and target must differ");
    }
    instructions_.push_back(Cnot{control, target});
    return *this;
  }

  Circuit& measure(std::size_t q, std::size_t c) {
    check_qubit(q);
    check_cbit(c);
    written_[c] = 1;
    instructions_.push_back(Measure{q, c});
    return *this;
  }

  Circuit& cond(GateKind kind, std::size_t q, Condition condition) {
    if (kind != GateKind::S && kind != GateKind::X && kind != GateKind::Z) {
      throw std::invalid_argument("conditional gates must be s, x or z");
    }
    check_qubit(q);
    for (std::size_t c : condition.cbits) {
      check_cbit(c);
      if (!written_[c]) {
        throw std::invalid_argument("condition reads c" + std::to_string(c) +
                                    " before any measurement writes it");
      }
    }
    instructions_.push_back(CondGate{kind, q, std::move(condition)});
    return *this;
  }

  Circuit& reset(std::size_t q) {
    check_qubit(q);
    instructions_.push_back(Reset{q});
    return *this;
  }

  Circuit& append(const Instruction& inst) {
    std::visit(
        [this](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, Gate>) {
            gate(op.kind, op.qubit);
          } else if constexpr (std::is_same_v<T, Cnot>) {
            cx(op.control, op.target);
          } else if constexpr (std::is_same_v<T, Measure>) {
            measure(op.qubit, op.cbit);
          } else if constexpr (std::is_same_v<T, CondGate>) {
            cond(op.kind, op.qubit, op.condition);
          } else {
            reset(op.qubit);
          }
        },
        inst);
    return *this;
  }

  std::size_t t_count() const {
    return static_cast<std::size_t>(std::count_if(instructions_.begin(), instructions_.end(), [](const Instruction& i) {
      const Gate* g = std::get_if<Gate>(&i);
      return g != nullptr && g->kind == GateKind::T;
    }));
  }

  /// True when there are no resets or conditional gates and every measurement
  /// comes after the last gate.
  bool is_unitary_with_trailing_measurements() const {
    bool seen_measure = false;
    for (const Instruction& inst : instructions_) {
      if (std::holds_alternative<CondGate>(inst) || std::holds_alternative<Reset>(inst)) {
        return false;
      }
      if (std::holds_alternative<Measure>(inst)) {
        seen_measure = true;
      } else if (seen_measure) {
        return false;
      }
    }
    return true;
  }

  bool operator==(const Circuit& o) const {
    return num_qubits_ == o.num_qubits_ && num_cbits_ == o.num_cbits_ && inputs_ == o.inputs_ &&
           instructions_ == o.instructions_;
  }

 private:
  void check_qubit(std::size_t q) const {
    if (q >= num_qubits_) {
      throw std::out_of_range("qubit q" + std::to_string(q) + " out of range (" +
                              std::to_string(num_qubits_) + " qubits)");
    }
  }

  void check_cbit(std::size_t c) const {
    if (c >= num_cbits_) {
      throw std::out_of_range("cbit c" + std::to_string(c) + " out of range (" +
                              std::to_string(num_cbits_) + " cbits)");
    }
  }

  std::size_t num_qubits_ = 0;
  std::size_t num_cbits_ = 0;
  std::vector<InputState> inputs_;
  std::vector<std::uint8_t> written_;
  std::vector<Instruction> instructions_;
};

struct CircuitMetrics {
  std::size_t depth = 0;
  std::size_t count_1q = 0;  // unconditional H, S, Sdg, T, X
  std::size_t count_cnot = 0;
  std::size_t count_t = 0;
  std::size_t count_measure = 0;
  std::size_t count_conditional = 0;
  std::size_t count_reset = 0;
};

/// Gate counts and ASAP depth. Every instruction occupies its qubits for one
/// layer; a conditional gate is also placed after the measurements producing
/// the bits it reads.
inline CircuitMetrics metrics(const Circuit& c) {
  CircuitMetrics m;
  std::vector<std::size_t> qubit_ready(c.num_qubits(), 0);
  std::vector<std::size_t> cbit_ready(c.num_cbits(), 0);
  for (const Instruction& inst : c.instructions()) {
    std::size_t layer = 0;
    if (const auto* g = std::get_if<Gate>(&inst)) {
      layer = ++qubit_ready[g->qubit];
      ++m.count_1q;
      m.count_t += g->kind == GateKind::T ? 1 : 0;
    } else if (const auto* cx = std::get_if<Cnot>(&inst)) {
      layer = std::max(qubit_ready[cx->control], qubit_ready[cx->target]) + 1;
      qubit_ready[cx->control] = qubit_ready[cx->target] = layer;
      ++m.count_cnot;
    } else if (const auto* ms = std::get_if<Measure>(&inst)) {
      layer = ++qubit_ready[ms->qubit];
      cbit_ready[ms->cbit] = layer;
      ++m.count_measure;
    } else if (const auto* cg = std::get_if<CondGate>(&inst)) {
      std::size_t ready = qubit_ready[cg->qubit];
      for (std::size_t b : cg->condition.cbits) {
        ready = std::max(ready, cbit_ready[b]);
      }
      layer = qubit_ready[cg->qubit] = ready + 1;
      ++m.count_conditional;
    } else if (const auto* r = std::get_if<Reset>(&inst)) {
      layer = ++qubit_ready[r->qubit];
      ++m.count_reset;
    }
    m.depth = std::max(m.depth, layer);
  }
  return m;
}

}  // namespace pbc
