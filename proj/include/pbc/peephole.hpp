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
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pbc/circuit.hpp"

namespace pbc {

namespace detail {

struct PeepholeOp {
  enum class Kind : std::uint8_t { H, X, Phase, CX };
  Kind kind;
  std::size_t a;
  std::size_t b = 0;   // CX target
  unsigned phase = 0;  // Phase: power of T, mod 8
};

inline bool touches(const PeepholeOp& op, std::size_t q) {
  return op.a == q || (op.kind == PeepholeOp::Kind::CX && op.b == q);
}

// Index of the op that `g` would meet when moved to the left past every op
// it commutes with, or -1 if it reaches the front.
inline std::ptrdiff_t find_partner(const std::vector<PeepholeOp>& ops, const PeepholeOp& g) {
  using Kind = PeepholeOp::Kind;
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(ops.size()) - 1; i >= 0; --i) {
    const PeepholeOp& o = ops[static_cast<std::size_t>(i)];
    switch (g.kind) {
      case Kind::H:
        if (touches(o, g.a)) {
          return i;
        }
        break;
      case Kind::X:
        if (o.kind == Kind::CX && o.b == g.a) {
          break;
        }
        if (touches(o, g.a)) {
          return i;
        }
        break;
      case Kind::Phase:
        if (o.kind == Kind::CX && o.a == g.a) {
          break;
        }
        if (touches(o, g.a)) {
          return i;
        }
        break;
      case Kind::CX: {
        bool hits_c = touches(o, g.a);
        bool hits_t = touches(o, g.b);
        if (!hits_c && !hits_t) {
          break;
        }
        if (o.kind == Kind::Phase && o.a == g.a) {
          break;
        }
        if (o.kind == Kind::X && o.a == g.b) {
          break;
        }
        if (o.kind == Kind::CX) {
          if (o.a == g.a && o.b == g.b) {
            return i;
          }
          bool shares_control_only = o.a == g.a && o.b != g.b;
          bool shares_target_only = o.b == g.b && o.a != g.a && o.a != g.b && o.b != g.a;
          if ((shares_control_only && o.b != g.a) || shares_target_only) {
            break;
          }
        }
        return i;
      }
    }
  }
  return -1;
}

inline bool peephole_pass(std::vector<PeepholeOp>& ops) {
  using Kind = PeepholeOp::Kind;
  std::vector<PeepholeOp> out;
  out.reserve(ops.size());
  bool changed = false;
  for (const PeepholeOp& g : ops) {
    std::ptrdiff_t j = find_partner(out, g);
    if (j >= 0) {
      PeepholeOp& o = out[static_cast<std::size_t>(j)];
      bool same_target = o.kind == g.kind && o.a == g.a && (g.kind != Kind::CX || o.b == g.b);
      if (same_target && g.kind == Kind::Phase) {
        o.phase = (o.phase + g.phase) & 7u;
        if (o.phase == 0) {
          out.erase(out.begin() + j);
        }
        changed = true;
        continue;
      }
      if (same_target) {
        out.erase(out.begin() + j);
        changed = true;
        continue;
      }
    }
    out.push_back(g);
  }
  ops = std::move(out);
  return changed;
}

}  // namespace detail

/// Local rewriting of a unitary Clifford+T circuit: cancels H.H, X.X and
/// repeated CNOT pairs, and folds runs of S and T on a qubit into a single
/// diagonal power T^b S^a (b in {0,1}, S^3 written as sdg). Gates are moved
/// past neighbours they commute with to find partners. Trailing measurements
/// are kept as is.
inline Circuit peephole_simplify(const Circuit& c) {
  using detail::PeepholeOp;
  using Kind = PeepholeOp::Kind;
  if (!c.is_unitary_with_trailing_measurements()) {
    throw std::invalid_argument("peephole_simplify requires a unitary circuit with trailing measurements");
  }
  std::vector<PeepholeOp> ops;
  std::vector<Measure> tail;
  for (const Instruction& inst : c.instructions()) {
    if (const auto* g = std::get_if<Gate>(&inst)) {
      switch (g->kind) {
        case GateKind::H: ops.push_back({Kind::H, g->qubit}); break;
        case GateKind::X: ops.push_back({Kind::X, g->qubit}); break;
        case GateKind::S: ops.push_back({Kind::Phase, g->qubit, 0, 2}); break;
        case GateKind::Sdg: ops.push_back({Kind::Phase, g->qubit, 0, 6}); break;
        case GateKind::T: ops.push_back({Kind::Phase, g->qubit, 0, 1}); break;
        case GateKind::Z: ops.push_back({Kind::Phase, g->qubit, 0, 4}); break;
      }
    } else if (const auto* cx = std::get_if<Cnot>(&inst)) {
      ops.push_back({Kind::CX, cx->control, cx->target});
    } else if (const auto* m = std::get_if<Measure>(&inst)) {
      tail.push_back(*m);
    }
  }
  while (detail::peephole_pass(ops)) {
  }

  Circuit out(c.num_qubits(), c.num_cbits());
  for (std::size_t q = 0; q < c.num_qubits(); ++q) {
    out.set_input(q, c.input_spec()[q]);
  }
  for (const PeepholeOp& op : ops) {
    switch (op.kind) {
      case Kind::H: out.h(op.a); break;
      case Kind::X: out.x(op.a); break;
      case Kind::CX: out.cx(op.a, op.b); break;
      case Kind::Phase:
        if (op.phase & 1u) {
          out.t(op.a);
        }
        if (op.phase / 2 == 3) {
          out.sdg(op.a);
        } else {
          for (unsigned k = 0; k < op.phase / 2; ++k) {
            out.s(op.a);
          }
        }
        break;
    }
  }
  for (const Measure& m : tail) {
    out.measure(m.qubit, m.cbit);
  }
  return out;
}

}  // namespace pbc
