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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pbc {

/// A multi-qubit Pauli operator i^phase * prod_j X_j^{x_j} Z_j^{z_j}.
///
/// On every qubit the X factor stands to the left of the Z factor, so
/// Y = i X Z is stored as x = z = 1 with phase 1. The x and z bits are packed
/// 64 per word; unused high bits of the last word are always zero.
class PauliOperator {
 public:
  PauliOperator() = default;

  explicit PauliOperator(std::size_t width)
      : width_(width), x_(num_words(width), 0), z_(num_words(width), 0) {}

  static PauliOperator identity(std::size_t width) { return PauliOperator(width); }

  /// Hermitian single-qubit operator `which` in {'I','X','Y','Z'} on qubit q.
  static PauliOperator single(std::size_t width, std::size_t q, char which) {
    PauliOperator p(width);
    p.check_qubit(q);
    p.set_pauli(q, which);
    return p;
  }

  /// Parses the text form: optional sign ('+', '-' or U+2212) then one of IXYZ
  /// per qubit, qubit 0 leftmost.
  static PauliOperator from_string(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
      negative = text.front() == '-';
      text.remove_prefix(1);
    } else if (text.starts_with("\xE2\x88\x92")) {
      negative = true;
      text.remove_prefix(3);
    }
    PauliOperator p(text.size());
    for (std::size_t q = 0; q < text.size(); ++q) {
      char c = text[q];
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw std::invalid_argument("invalid Pauli character '" + std::string(1, c) + "'");
      }
      p.set_pauli(q, c);
    }
    if (negative) {
      p.negate();
    }
    return p;
  }

  std::size_t width() const { return width_; }
  std::uint8_t phase() const { return phase_; }
  void set_phase(unsigned phase) { phase_ = static_cast<std::uint8_t>(phase & 3u); }
  void negate() { phase_ = static_cast<std::uint8_t>((phase_ + 2) & 3); }

  bool x(std::size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1u; }
  bool z(std::size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1u; }

  void set_x(std::size_t q, bool v) { set_bit(x_, q, v); }
  void set_z(std::size_t q, bool v) { set_bit(z_, q, v); }

  std::span<const std::uint64_t> x_words() const { return x_; }
  std::span<const std::uint64_t> z_words() const { return z_; }

  /// Sets qubit q to the Hermitian factor `which`, keeping the overall sign.
  void set_pauli(std::size_t q, char which) {
    unsigned before = (x(q) && z(q)) ? 1u : 0u;
    bool xb = which == 'X' || which == 'Y';
    bool zb = which == 'Z' || which == 'Y';
    if (!xb && !zb && which != 'I') {
      throw std::invalid_argument("invalid Pauli character");
    }
    set_x(q, xb);
    set_z(q, zb);
    unsigned after = (xb && zb) ? 1u : 0u;
    set_phase(phase_ + after - before + 4);
  }

  char pauli_at(std::size_t q) const {
    static constexpr char kNames[4] = {'I', 'X', 'Z', 'Y'};
    return kNames[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
  }

  std::size_t num_y() const {
    std::size_t n = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) {
      n += static_cast<std::size_t>(std::popcount(x_[w] & z_[w]));
    }
    return n;
  }

  std::size_t weight() const {
    std::size_t n = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) {
      n += static_cast<std::size_t>(std::popcount(x_[w] | z_[w]));
    }
    return n;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < width_; ++q) {
      if (x(q) || z(q)) {
        out.push_back(q);
      }
    }
    return out;
  }

  /// True when all x and z bits vanish (the operator is a multiple of I).
  bool is_identity() const {
    for (std::size_t w = 0; w < x_.size(); ++w) {
      if (x_[w] | z_[w]) {
        return false;
      }
    }
    return true;
  }

  bool is_hermitian() const { return ((phase_ + num_y()) & 1u) == 0; }

  /// For a Hermitian operator, true when it equals minus the product of its
  /// unsigned single-qubit factors.
  bool is_negative() const {
    if (!is_hermitian()) {
      throw std::logic_error("sign requested for a non-Hermitian Pauli operator");
    }
    return ((phase_ + 4 - (num_y() & 3)) & 3) == 2;
  }

  /// Copy of qubits [begin, begin + count). Every other qubit must be trivial.
  PauliOperator slice(std::size_t begin, std::size_t count) const {
    if (begin + count > width_) {
      throw std::out_of_range("Pauli slice out of range");
    }
    PauliOperator out(count);
    for (std::size_t q = 0; q < width_; ++q) {
      bool inside = q >= begin && q < begin + count;
      if (inside) {
        out.set_x(q - begin, x(q));
        out.set_z(q - begin, z(q));
      } else if (x(q) || z(q)) {
        throw std::logic_error("Pauli slice discards a non-trivial qubit");
      }
    }
    out.phase_ = phase_;
    return out;
  }

  /// Places this operator on qubits [offset, offset + width()) of a wider one.
  PauliOperator embedded(std::size_t total_width, std::size_t offset) const {
    if (offset + width_ > total_width) {
      throw std::out_of_range("Pauli embedding out of range");
    }
    PauliOperator out(total_width);
    for (std::size_t q = 0; q < width_; ++q) {
      out.set_x(q + offset, x(q));
      out.set_z(q + offset, z(q));
    }
    out.phase_ = phase_;
    return out;
  }

  /// Text form, e.g. "+XIZY" or "-ZZ". Non-Hermitian operators carry an
  /// extra 'i' after the sign.
  std::string str() const {
    std::string out;
    unsigned rel = (phase_ + 4 - (num_y() & 3)) & 3;
    out += (rel == 0 || rel == 1) ? '+' : '-';
    if (rel & 1) {
      out += 'i';
    }
    for (std::size_t q = 0; q < width_; ++q) {
      out += pauli_at(q);
    }
    return out;
  }

  void check_qubit(std::size_t q) const {
    if (q >= width_) {
      throw std::out_of_range("qubit " + std::to_string(q) + " out of range for width " +
                              std::to_string(width_));
    }
  }

  bool operator==(const PauliOperator&) const = default;

 private:
  static std::size_t num_words(std::size_t width) { return (width + 63) / 64; }

  static void set_bit(std::vector<std::uint64_t>& words, std::size_t q, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (q & 63);
    if (v) {
      words[q >> 6] |= mask;
    } else {
      words[q >> 6] &= ~mask;
    }
  }

  friend PauliOperator multiply(const PauliOperator& a, const PauliOperator& b);
  friend bool commutes(const PauliOperator& a, const PauliOperator& b);

  std::size_t width_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  std::uint8_t phase_ = 0;
};

inline void require_same_width(const PauliOperator& a, const PauliOperator& b) {
  if (a.width() != b.width()) {
    throw std::invalid_argument("Pauli width mismatch: " + std::to_string(a.width()) + " vs " +
                                std::to_string(b.width()));
  }
}

/// Symplectic product test: x_a.z_b + z_a.x_b == 0 (mod 2).
inline bool commutes(const PauliOperator& a, const PauliOperator& b) {
  require_same_width(a, b);
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < a.x_.size(); ++w) {
    acc ^= (a.x_[w] & b.z_[w]) ^ (a.z_[w] & b.x_[w]);
  }
  return (std::popcount(acc) & 1) == 0;
}

/// Exact operator product a*b. Moving Z^{z_a} past X^{x_b} on each qubit
/// contributes a factor (-1)^{z_a x_b}.
inline PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) {
  require_same_width(a, b);
  PauliOperator out(a.width_);
  unsigned swaps = 0;
  for (std::size_t w = 0; w < a.x_.size(); ++w) {
    swaps += static_cast<unsigned>(std::popcount(a.z_[w] & b.x_[w]));
    out.x_[w] = a.x_[w] ^ b.x_[w];
    out.z_[w] = a.z_[w] ^ b.z_[w];
  }
  out.set_phase(a.phase_ + b.phase_ + 2 * (swaps & 1u));
  return out;
}

enum class CliffordKind : std::uint8_t { H, S, Sdg, X, Z, CX };

struct CliffordGate {
  CliffordKind kind;
  std::size_t q0;
  std::size_t q1 = 0;  // CX target
};

/// Returns g^dagger p g.
inline PauliOperator conjugate_by_gate(PauliOperator p, const CliffordGate& g) {
  p.check_qubit(g.q0);
  std::size_t q = g.q0;
  bool xb = p.x(q);
  bool zb = p.z(q);
  switch (g.kind) {
    case CliffordKind::H:
      p.set_x(q, zb);
      p.set_z(q, xb);
      if (xb && zb) {
        p.negate();
      }
      break;
    case CliffordKind::S:
      // S^dag X S = -Y = i^3 X Z.
      if (xb) {
        p.set_z(q, !zb);
        p.set_phase(p.phase() + 3);
      }
      break;
    case CliffordKind::Sdg:
      // S X S^dag = Y = i X Z.
      if (xb) {
        p.set_z(q, !zb);
        p.set_phase(p.phase() + 1);
      }
      break;
    case CliffordKind::X:
      if (zb) {
        p.negate();
      }
      break;
    case CliffordKind::Z:
      if (xb) {
        p.negate();
      }
      break;
    case CliffordKind::CX: {
      p.check_qubit(g.q1);
      if (g.q0 == g.q1) {
        throw std::invalid_argument("CX control equals target");
      }
      std::size_t t = g.q1;
      if (xb) {
        p.set_x(t, !p.x(t));
      }
      if (p.z(t)) {
        p.set_z(q, !zb);
      }
      break;
    }
  }
  return p;
}

/// Returns g p g^dagger, i.e. conjugation by the inverse gate.
inline PauliOperator conjugate_by_inverse_gate(PauliOperator p, const CliffordGate& g) {
  CliffordGate inv = g;
  if (g.kind == CliffordKind::S) {
    inv.kind = CliffordKind::Sdg;
  } else if (g.kind == CliffordKind::Sdg) {
    inv.kind = CliffordKind::S;
  }
  return conjugate_by_gate(std::move(p), inv);
}

/// The Clifford unitary V = ((-1)^lambda Q + (-1)^s P) / sqrt(2) for an
/// anticommuting Hermitian pair (Q, P).
struct Reflection {
  std::size_t q_index = 0;
  PauliOperator q_op;
  PauliOperator p_op;
  bool lambda_bit = false;
  bool s_bit = false;
};

/// Returns V^dagger w V (= V w V, since V is a Hermitian involution).
inline PauliOperator conjugate_by_reflection(const PauliOperator& w, const Reflection& v) {
  require_same_width(w, v.q_op);
  require_same_width(w, v.p_op);
  if (commutes(v.q_op, v.p_op)) {
    throw std::invalid_argument("reflection operators Q and P must anticommute");
  }
  bool with_q = commutes(w, v.q_op);
  bool with_p = commutes(w, v.p_op);
  if (with_q && with_p) {
    return w;
  }
  if (!with_q && !with_p) {
    PauliOperator out = w;
    out.negate();
    return out;
  }
  PauliOperator out = with_p ? multiply(multiply(w, v.p_op), v.q_op)   // anticommutes with Q only
                             : multiply(multiply(w, v.q_op), v.p_op);  // anticommutes with P only
  if (v.lambda_bit != v.s_bit) {
    out.negate();
  }
  return out;
}

}  // namespace pbc
