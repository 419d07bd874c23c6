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

#include "pbc/bench.hpp"

#include <gtest/gtest.h>

#include <set>

#include "oracle/dense.hpp"
#include "pbc/engine.hpp"

using pbc::Circuit;

TEST(bench, ccz_block_is_exact) {
  Circuit c(3, 0);
  pbc::append_ccz(c, 0, 1, 2);
  EXPECT_EQ(c.t_count(), 7u);
  EXPECT_EQ(pbc::metrics(c).count_cnot, 6u);
  oracle::Matrix want = oracle::Matrix::identity(8);
  want(7, 7) = -1.0;
  EXPECT_LT(oracle::max_abs_diff(oracle::circuit_unitary(c), want), 1e-12);
}

TEST(bench, hidden_shift_returns_hidden_string) {
  for (std::size_t n : {6u, 8u}) {
    for (std::size_t n_ccz : {0u, 1u, 2u}) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto hsc = pbc::gen_hsc({.n = n, .n_ccz = n_ccz, .seed = seed});
        EXPECT_EQ(hsc.circuit.t_count(), 14 * n_ccz);
        EXPECT_EQ(hsc.hidden.size(), n);
        std::vector<std::size_t> cbits(n);
        for (std::size_t q = 0; q < n; ++q) {
          cbits[q] = q;
        }
        auto dist = oracle::born_distribution(hsc.circuit, cbits);
        EXPECT_NEAR(dist[pbc::bits_to_string(hsc.hidden)], 1.0, 1e-9) << n << " " << n_ccz << " " << seed;
      }
    }
  }
}

TEST(bench, hidden_shift_accepts_given_string) {
  std::vector<std::uint8_t> s = {1, 0, 1, 1, 0, 0};
  auto hsc = pbc::gen_hsc({.n = 6, .seed = 1, .hidden = s});
  EXPECT_EQ(hsc.hidden, s);
  auto dist = oracle::born_distribution(hsc.circuit, {0, 1, 2, 3, 4, 5});
  EXPECT_NEAR(dist["101100"], 1.0, 1e-9);
  EXPECT_THROW(pbc::gen_hsc({.n = 5}), std::invalid_argument);
  EXPECT_THROW(pbc::gen_hsc({.n = 4, .n_ccz = 1}), std::invalid_argument);
  EXPECT_THROW(pbc::gen_hsc({.n = 6, .hidden = std::vector<std::uint8_t>{1}}), std::invalid_argument);
}

TEST(bench, hidden_shift_is_seeded) {
  auto a = pbc::gen_hsc({.n = 8, .seed = 3});
  auto b = pbc::gen_hsc({.n = 8, .seed = 3});
  auto c = pbc::gen_hsc({.n = 8, .seed = 4});
  EXPECT_EQ(a.circuit, b.circuit);
  EXPECT_FALSE(a.circuit == c.circuit);
}

TEST(bench, entangling_patterns_tile_the_grid) {
  const std::size_t cols = 5;
  const std::size_t rows = 4;
  std::set<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t p = 0; p < 8; ++p) {
    std::set<std::size_t> used;
    for (const auto& [a, b] : pbc::entangling_pattern(cols, rows, p)) {
      EXPECT_TRUE(used.insert(a).second);
      EXPECT_TRUE(used.insert(b).second);
      std::size_t ra = a / cols;
      std::size_t ca = a % cols;
      std::size_t rb = b / cols;
      std::size_t cb = b % cols;
      EXPECT_EQ((ra == rb && cb == ca + 1) || (ca == cb && rb == ra + 1), true);
      EXPECT_TRUE(all.insert({a, b}).second) << "edge in two patterns";
    }
  }
  // Every grid edge appears in exactly one pattern.
  EXPECT_EQ(all.size(), rows * (cols - 1) + cols * (rows - 1));
  EXPECT_THROW(pbc::entangling_pattern(3, 3, 8), std::out_of_range);
}

TEST(bench, random_grid_circuit_hits_t_target) {
  pbc::RqcSpec spec;
  spec.cols = 3;
  spec.rows = 3;
  spec.n_cycles = 10;
  spec.t_target = 4;
  spec.seed = 8;
  auto rqc = pbc::gen_rqc(spec);
  EXPECT_EQ(rqc.circuit.t_count(), 4u);
  EXPECT_GE(rqc.attempts, 1u);
  EXPECT_EQ(rqc.circuit.num_qubits(), 9u);
  EXPECT_EQ(pbc::metrics(rqc.circuit).count_measure, 9u);
  EXPECT_EQ(pbc::peephole_simplify(rqc.circuit), rqc.circuit);
  auto again = pbc::gen_rqc(spec);
  EXPECT_EQ(again.circuit, rqc.circuit);
}

TEST(bench, random_grid_circuit_default_size) {
  pbc::RqcSpec spec;
  spec.seed = 1;
  auto rqc = pbc::gen_rqc(spec);
  EXPECT_EQ(rqc.circuit.num_qubits(), 25u);
  EXPECT_EQ(rqc.circuit.t_count(), 7u);
}

TEST(bench, random_grid_circuit_reports_exhaustion) {
  pbc::RqcSpec spec;
  spec.cols = 2;
  spec.rows = 2;
  spec.n_cycles = 4;
  spec.t_target = 4;
  spec.max_retries = 3;
  spec.seed = 1;
  // Four single-qubit slots per pattern with partners; the simplifier merges
  // T gates, so exactly 4 is rare. Whatever happens, failures list a
  // distribution over the attempts made.
  try {
    auto rqc = pbc::gen_rqc(spec);
    EXPECT_EQ(rqc.circuit.t_count(), 4u);
  } catch (const pbc::RetriesExhausted& e) {
    std::size_t total = 0;
    for (const auto& [tc, count] : e.achieved()) {
      total += count;
      EXPECT_NE(tc, 4u);
    }
    EXPECT_EQ(total, 3u);
  }
  spec.t_target = 1000;
  EXPECT_THROW(pbc::gen_rqc(spec), std::invalid_argument);
}

TEST(bench, random_clifford_t_shape) {
  Circuit c = pbc::random_clifford_t(4, 25, 6, 3);
  EXPECT_EQ(c.t_count(), 6u);
  EXPECT_EQ(c.size(), 25u + 6u + 4u);
  EXPECT_TRUE(c.is_unitary_with_trailing_measurements());
  EXPECT_EQ(pbc::random_clifford_t(4, 25, 6, 3), c);
  EXPECT_THROW(pbc::random_clifford_t(0, 1, 1, 0), std::invalid_argument);
}

TEST(bench, boundary_lower_bound_values) {
  EXPECT_NEAR(pbc::boundary_lower_bound(22), 3.0902, 1e-4);
  EXPECT_NEAR(pbc::boundary_lower_bound(40), 4.5178, 1e-4);
  // It solves t^2 + 5t - 1 = N + 2.
  for (double n : {0.0, 7.0, 100.0}) {
    double t = pbc::boundary_lower_bound(n);
    EXPECT_NEAR(t * t + 5 * t - 1, n + 2, 1e-9);
  }
  EXPECT_THROW(pbc::boundary_lower_bound(-1), std::invalid_argument);
}
