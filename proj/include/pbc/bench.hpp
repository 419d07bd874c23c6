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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pbc/circuit.hpp"
#include "pbc/peephole.hpp"
#include "pbc/rng.hpp"

namespace pbc {

// ---------------------------------------------------------------------------
// Hidden-shift circuits

struct HscSpec {
  std::size_t n = 6;
  std::size_t n_ccz = 1;
  std::size_t n_zcz = 10;  // gates per {Z, CZ} segment
  std::uint64_t seed = 0;
  std::optional<std::vector<std::uint8_t>> hidden = std::nullopt;  // drawn from the seed when absent
};

struct HscCircuit {
  Circuit circuit;
  std::vector<std::uint8_t> hidden;
};

namespace detail {

struct DiagonalGate {
  enum class Kind : std::uint8_t { Z, CZ, CCZ } kind;
  std::size_t a, b = 0, c = 0;
};

inline std::size_t pick(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

// Distinct random qubits from [0, m).
inline std::vector<std::size_t> pick_distinct(Rng& rng, std::size_t m, std::size_t count) {
  std::vector<std::size_t> out;
  while (out.size() < count) {
    std::size_t q = pick(rng, m);
    if (std::find(out.begin(), out.end(), q) == out.end()) {
      out.push_back(q);
    }
  }
  return out;
}

inline void append_z(Circuit& c, std::size_t q) { c.s(q).s(q); }

inline void append_cz(Circuit& c, std::size_t a, std::size_t b) { c.h(b).cx(a, b).h(b); }

inline void append_tdg(Circuit& c, std::size_t q) { c.s(q).s(q).s(q).t(q); }

}  // namespace detail

/// Seven-T, six-CNOT realization of CCZ on qubits a, b, c.
inline void append_ccz(Circuit& c, std::size_t a, std::size_t b, std::size_t q) {
  c.t(a).t(b).t(q);
  c.cx(a, b);
  detail::append_tdg(c, b);
  c.cx(a, q);
  detail::append_tdg(c, q);
  c.cx(b, q);
  detail::append_tdg(c, q);
  c.cx(a, q);
  c.t(q);
  c.cx(b, q);
  c.cx(a, b);
}

/// H^n O_f' H^n O_f H^n followed by measurement of every qubit, where
/// O_f = CZ-layer (O_g x I) and O_f' = CZ-layer (I x O_g) Z(s). The output is
/// the hidden string s on every shot.
inline HscCircuit gen_hsc(const HscSpec& spec) {
  using detail::DiagonalGate;
  if (spec.n == 0 || spec.n % 2 != 0) {
    throw std::invalid_argument("hidden-shift circuits need an even, positive qubit count");
  }
  const std::size_t half = spec.n / 2;
  if (spec.n_ccz > 0 && half < 3) {
    throw std::invalid_argument("CCZ gates need n/2 >= 3");
  }
  Rng rng = substream(spec.seed, 0);

  HscCircuit out;
  if (spec.hidden) {
    if (spec.hidden->size() != spec.n) {
      throw std::invalid_argument("hidden string must have n bits");
    }
    out.hidden = *spec.hidden;
  } else {
    for (std::size_t q = 0; q < spec.n; ++q) {
      out.hidden.push_back(coin(rng) ? 1 : 0);
    }
  }

  std::vector<DiagonalGate> og;
  auto segment = [&] {
    for (std::size_t i = 0; i < spec.n_zcz; ++i) {
      if (half >= 2 && coin(rng)) {
        auto q = detail::pick_distinct(rng, half, 2);
        og.push_back({DiagonalGate::Kind::CZ, q[0], q[1]});
      } else {
        og.push_back({DiagonalGate::Kind::Z, detail::pick(rng, half)});
      }
    }
  };
  segment();
  for (std::size_t i = 0; i < spec.n_ccz; ++i) {
    auto q = detail::pick_distinct(rng, half, 3);
    og.push_back({DiagonalGate::Kind::CCZ, q[0], q[1], q[2]});
    segment();
  }

  Circuit& c = out.circuit;
  c = Circuit(spec.n, spec.n);
  auto hadamards = [&] {
    for (std::size_t q = 0; q < spec.n; ++q) {
      c.h(q);
    }
  };
  auto apply_og = [&](std::size_t offset) {
    for (const DiagonalGate& g : og) {
      switch (g.kind) {
        case DiagonalGate::Kind::Z: detail::append_z(c, g.a + offset); break;
        case DiagonalGate::Kind::CZ: detail::append_cz(c, g.a + offset, g.b + offset); break;
        case DiagonalGate::Kind::CCZ: append_ccz(c, g.a + offset, g.b + offset, g.c + offset); break;
      }
    }
  };
  auto cz_layer = [&] {
    for (std::size_t i = 0; i < half; ++i) {
      detail::append_cz(c, i, i + half);
    }
  };

  hadamards();
  apply_og(0);
  cz_layer();
  hadamards();
  for (std::size_t q = 0; q < spec.n; ++q) {
    if (out.hidden[q]) {
      detail::append_z(c, q);
    }
  }
  apply_og(half);
  cz_layer();
  hadamards();
  for (std::size_t q = 0; q < spec.n; ++q) {
    c.measure(q, q);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random grid circuits

struct RqcSpec {
  std::size_t cols = 5;
  std::size_t rows = 5;
  std::size_t n_cycles = 40;
  std::size_t t_target = 7;
  std::uint64_t seed = 0;
  std::size_t max_retries = 1000;

  std::size_t n() const { return cols * rows; }
};

struct RqcCircuit {
  Circuit circuit;
  std::size_t attempts = 0;
};

/// Raised when no attempt reached the requested T-count.
class RetriesExhausted : public std::runtime_error {
 public:
  RetriesExhausted(const std::string& what, std::map<std::size_t, std::size_t> achieved)
      : std::runtime_error(what), achieved_(std::move(achieved)) {}
  const std::map<std::size_t, std::size_t>& achieved() const { return achieved_; }

 private:
  std::map<std::size_t, std::size_t> achieved_;
};

/// Neighbour pairs of entangling pattern p in [0, 8) on a cols x rows grid,
/// qubit index r * cols + c. Patterns 0-3 pair horizontal neighbours
/// (c, c+1) with c = p & 1 (mod 2) on rows r = p >> 1 (mod 2); patterns 4-7
/// are the vertical analogues.
inline std::vector<std::pair<std::size_t, std::size_t>> entangling_pattern(std::size_t cols, std::size_t rows,
                                                                           std::size_t p) {
  if (p >= 8) {
    throw std::out_of_range("entangling pattern index must be < 8");
  }
  const std::size_t offset = p & 1;
  const std::size_t parity = (p >> 1) & 1;
  const bool vertical = p >= 4;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!vertical && c + 1 < cols && c % 2 == offset && r % 2 == parity) {
        pairs.emplace_back(r * cols + c, r * cols + c + 1);
      }
      if (vertical && r + 1 < rows && r % 2 == offset && c % 2 == parity) {
        pairs.emplace_back(r * cols + c, (r + 1) * cols + c);
      }
    }
  }
  return pairs;
}

inline RqcCircuit gen_rqc(const RqcSpec& spec) {
  const std::size_t n = spec.n();
  if (n == 0) {
    throw std::invalid_argument("grid must be non-empty");
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> layers;
  std::size_t slots = 0;
  for (std::size_t l = 0; l < spec.n_cycles; ++l) {
    layers.push_back(entangling_pattern(spec.cols, spec.rows, l % 8));
    slots += n - 2 * layers.back().size();
  }
  if (slots == 0 || static_cast<double>(spec.t_target) > static_cast<double>(slots)) {
    throw std::invalid_argument("T-count " + std::to_string(spec.t_target) + " is not reachable with " +
                                std::to_string(slots) + " single-qubit slots");
  }
  const double p_t = static_cast<double>(spec.t_target) / static_cast<double>(slots);

  std::map<std::size_t, std::size_t> achieved;
  for (std::size_t attempt = 0; attempt < spec.max_retries; ++attempt) {
    Rng rng = substream(spec.seed, attempt);
    Circuit c(n, n);
    for (std::size_t q = 0; q < n; ++q) {
      c.h(q);
    }
    for (const auto& pairs : layers) {
      std::vector<bool> busy(n, false);
      for (const auto& [a, b] : pairs) {
        detail::append_cz(c, a, b);
        busy[a] = busy[b] = true;
      }
      for (std::size_t q = 0; q < n; ++q) {
        if (busy[q]) {
          continue;
        }
        double u = uniform01(rng);
        if (u < p_t) {
          c.t(q);
        } else if (u < p_t + (1.0 - p_t) / 2.0) {
          c.s(q);
        } else {
          c.h(q);
        }
      }
    }
    for (std::size_t q = 0; q < n; ++q) {
      c.measure(q, q);
    }
    Circuit simplified = peephole_simplify(c);
    std::size_t tc = simplified.t_count();
    if (tc == spec.t_target) {
      return {std::move(simplified), attempt + 1};
    }
    ++achieved[tc];
  }
  std::string dist;
  for (const auto& [tc, count] : achieved) {
    dist += (dist.empty() ? "" : ", ") + std::to_string(tc) + ":" + std::to_string(count);
  }
  throw RetriesExhausted("no circuit with T-count " + std::to_string(spec.t_target) + " after " +
                             std::to_string(spec.max_retries) + " attempts (achieved " + dist + ")",
                         std::move(achieved));
}

// ---------------------------------------------------------------------------
// Unstructured random circuits

/// `gates` Clifford gates drawn from {H, S, CX} with exactly `t` T gates
/// inserted at random positions, then every qubit measured.
inline Circuit random_clifford_t(std::size_t n, std::size_t gates, std::size_t t, std::uint64_t seed) {
  if (n == 0) {
    throw std::invalid_argument("random circuits need at least one qubit");
  }
  Rng rng = substream(seed, 0);
  const std::size_t total = gates + t;
  std::vector<bool> is_t(total, false);
  for (std::size_t placed = 0; placed < t;) {
    std::size_t i = detail::pick(rng, total);
    if (!is_t[i]) {
      is_t[i] = true;
      ++placed;
    }
  }
  Circuit c(n, n);
  for (std::size_t i = 0; i < total; ++i) {
    if (is_t[i]) {
      c.t(detail::pick(rng, n));
      continue;
    }
    std::size_t kind = detail::pick(rng, n >= 2 ? 3 : 2);
    if (kind == 0) {
      c.h(detail::pick(rng, n));
    } else if (kind == 1) {
      c.s(detail::pick(rng, n));
    } else {
      auto q = detail::pick_distinct(rng, n, 2);
      c.cx(q[0], q[1]);
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    c.measure(q, q);
  }
  return c;
}

/// Smallest T-count for which compiled depth can exceed an original depth of
/// at least n_cycles + 2: solves t^2 + 5t - 1 = n_cycles + 2.
inline double boundary_lower_bound(double n_cycles) {
  if (n_cycles < 0) {
    throw std::invalid_argument("n_cycles must be non-negative");
  }
  return -2.5 + std::sqrt(4.0 * n_cycles + 37.0) / 2.0;
}

}  // namespace pbc
