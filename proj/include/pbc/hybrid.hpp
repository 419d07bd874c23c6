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

#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbc/engine.hpp"
#include "pbc/gadgetize.hpp"
#include "pbc/pauli.hpp"
#include "pbc/rng.hpp"
#include "pbc/statevector.hpp"

namespace pbc {

/// coefficient * prod_j (I + g_j)/2 with one signed single-qubit generator
/// g_j per virtual qubit.
struct DecompositionTerm {
  double coefficient;
  std::vector<PauliOperator> generators;
};

struct Decomposition {
  std::size_t k = 0;
  std::vector<DecompositionTerm> terms;
  double l1_norm = 1.0;
  double l2_norm = 1.0;
};

namespace detail {

struct SingleTerm {
  double coefficient;
  char pauli;
  bool negative;
};

// |A><A| = 1/2 |+><+| + (1 - sqrt2)/2 |-><-| + 1/sqrt2 |+i><+i|
inline const std::array<SingleTerm, 3>& magic_terms() {
  static const std::array<SingleTerm, 3> kTerms = {{
      {0.5, 'X', false},
      {(1.0 - std::sqrt(2.0)) / 2.0, 'X', true},
      {1.0 / std::sqrt(2.0), 'Y', false},
  }};
  return kTerms;
}

inline PauliOperator generator_of(const SingleTerm& s) {
  PauliOperator g = PauliOperator::single(1, 0, s.pauli);
  if (s.negative) {
    g.negate();
  }
  return g;
}

inline double single_l1() {
  double s = 0.0;
  for (const SingleTerm& t : magic_terms()) {
    s += std::abs(t.coefficient);
  }
  return s;
}

inline double single_l2() {
  double s = 0.0;
  for (const SingleTerm& t : magic_terms()) {
    s += t.coefficient * t.coefficient;
  }
  return std::sqrt(s);
}

}  // namespace detail

inline Decomposition single_qubit_terms() {
  Decomposition d;
  d.k = 1;
  for (const detail::SingleTerm& s : detail::magic_terms()) {
    d.terms.push_back({s.coefficient, {detail::generator_of(s)}});
  }
  d.l1_norm = detail::single_l1();
  d.l2_norm = detail::single_l2();
  return d;
}

inline constexpr std::size_t kDefaultTermCap = 59049;  // 3^10

/// All 3^k tensor-product terms. Throws CapacityError above `cap` terms;
/// sampling does not need the enumeration (see sample_term).
inline Decomposition tensor_terms(std::size_t k, std::size_t cap = kDefaultTermCap) {
  std::size_t count = 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (count > cap / 3) {
      throw CapacityError("3^" + std::to_string(k) + " terms exceed the enumeration cap of " + std::to_string(cap));
    }
    count *= 3;
  }
  Decomposition d;
  d.k = k;
  d.l1_norm = std::pow(detail::single_l1(), static_cast<double>(k));
  d.l2_norm = std::pow(detail::single_l2(), static_cast<double>(k));
  const auto& single = detail::magic_terms();
  d.terms.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    DecompositionTerm term{1.0, {}};
    std::size_t rest = idx;
    std::vector<std::size_t> digits(k);
    for (std::size_t j = k; j-- > 0;) {
      digits[j] = rest % 3;
      rest /= 3;
    }
    for (std::size_t j = 0; j < k; ++j) {
      term.coefficient *= single[digits[j]].coefficient;
      term.generators.push_back(detail::generator_of(single[digits[j]]));
    }
    d.terms.push_back(std::move(term));
  }
  return d;
}

struct SampledTerm {
  bool negative;                        // sign of the coefficient
  std::vector<PauliOperator> generators;
};

/// Draws a tensor-product term with probability |alpha_i| / l1. The
/// distribution factorizes over qubits, so nothing is enumerated.
inline SampledTerm sample_term(std::size_t k, Rng& rng) {
  const auto& single = detail::magic_terms();
  const double l1 = detail::single_l1();
  SampledTerm out{false, {}};
  out.generators.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    double u = uniform01(rng) * l1;
    std::size_t pick = 0;
    while (pick + 1 < single.size() && u >= std::abs(single[pick].coefficient)) {
      u -= std::abs(single[pick].coefficient);
      ++pick;
    }
    out.negative ^= single[pick].coefficient < 0;
    out.generators.push_back(detail::generator_of(single[pick]));
  }
  return out;
}

struct SamplingPlan {
  std::size_t k;
  double epsilon;
  double p_fail;
  double l1;
  std::size_t n;        // Hoeffding budget for the estimator eta
  std::size_t n_naive;  // budget of the plain pseudomixture estimator
};

/// N = ceil(2^k / (2 eps^2) * ln(2 / p_fail)) and
/// N_naive = ceil(3^k * (c * ||alpha||_2 / eps)^2) with c = 1/sqrt(p_fail).
inline SamplingPlan plan(std::size_t k, double epsilon, double p_fail) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (!(p_fail > 0.0 && p_fail < 1.0)) {
    throw std::invalid_argument("p_fail must lie in (0, 1)");
  }
  const double kd = static_cast<double>(k);
  const double l1_sq = std::ldexp(1.0, static_cast<int>(k));
  const double n = l1_sq / (2.0 * epsilon * epsilon) * std::log(2.0 / p_fail);
  const double c = 1.0 / std::sqrt(p_fail);
  const double l2 = std::pow(detail::single_l2(), kd);
  const double naive = std::pow(3.0, kd) * std::pow(c * l2 / epsilon, 2.0);
  SamplingPlan p;
  p.k = k;
  p.epsilon = epsilon;
  p.p_fail = p_fail;
  p.l1 = std::sqrt(l1_sq);
  p.n = static_cast<std::size_t>(std::ceil(n));
  p.n_naive = static_cast<std::size_t>(std::ceil(naive));
  return p;
}

/// Single-sample estimator 1/2 - 1/2 * sign * (-1)^y * l1.
inline double eta(bool negative, bool y, double l1) {
  double s = (negative ? -1.0 : 1.0) * (y ? -1.0 : 1.0);
  return 0.5 - 0.5 * s * l1;
}

/// Copy of `gc` keeping only the output measurement at position `index` of
/// gc.output_cbits.
inline GadgetizedCircuit restrict_outputs(const GadgetizedCircuit& gc, std::size_t index) {
  if (index >= gc.output_cbits.size()) {
    throw std::out_of_range("output index " + std::to_string(index) + " out of range (" +
                            std::to_string(gc.output_cbits.size()) + " outputs)");
  }
  const std::size_t keep = gc.output_cbits[index];
  GadgetizedCircuit out;
  out.n_main = gc.n_main;
  out.t = gc.t;
  out.aux_measure_cbits = gc.aux_measure_cbits;
  out.output_cbits = {keep};
  out.circuit = Circuit(gc.circuit.num_qubits(), gc.circuit.num_cbits());
  for (std::size_t q = 0; q < gc.circuit.num_qubits(); ++q) {
    out.circuit.set_input(q, gc.circuit.input_spec()[q]);
  }
  std::vector<bool> is_output(gc.circuit.num_cbits(), false);
  for (std::size_t b : gc.output_cbits) {
    is_output[b] = true;
  }
  for (const Instruction& inst : gc.circuit.instructions()) {
    const auto* ms = std::get_if<Measure>(&inst);
    if (ms != nullptr && is_output[ms->cbit] && ms->cbit != keep) {
      continue;
    }
    out.circuit.append(inst);
  }
  return out;
}

struct EstimateOptions {
  std::size_t k = 1;
  double epsilon = 0.1;
  double p_fail = 0.01;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool keep_samples = false;
};

struct EstimateSample {
  bool negative;
  bool y;
  double eta;
};

struct Estimate {
  double p_hat = 0.0;
  double half_width = 0.0;
  SamplingPlan plan{};
  std::size_t max_quantum_measurements = 0;
  std::vector<EstimateSample> samples;
  double wall_time_s = 0.0;
};

/// Estimates the probability that output `output_index` reads 1, with the
/// first k magic qubits simulated classically.
inline Estimate estimate(const GadgetizedCircuit& gc, std::size_t output_index, const EstimateOptions& opt,
                         const BackendFactory& factory) {
  auto start = std::chrono::steady_clock::now();
  if (opt.k > gc.t) {
    throw std::invalid_argument("k = " + std::to_string(opt.k) + " exceeds the T-count " + std::to_string(gc.t));
  }
  const GadgetizedCircuit single = restrict_outputs(gc, output_index);
  Estimate est;
  est.plan = plan(opt.k, opt.epsilon, opt.p_fail);
  est.half_width = opt.epsilon;
  const std::size_t n = est.plan.n;
  const double l1 = est.plan.l1;

  std::vector<EstimateSample> samples(n);
  std::vector<std::size_t> quantum(n);
  parallel_for(n, opt.workers, [&](std::size_t i) {
    Rng rng = substream(opt.seed, i);
    SampledTerm term = sample_term(opt.k, rng);
    std::unique_ptr<MeasurementBackend> backend = factory(gc.t - opt.k);
    ShotResult r = run_shot(single, term.generators, *backend, rng, false);
    bool y = r.output_bits.at(0) != 0;
    samples[i] = {term.negative, y, eta(term.negative, y, l1)};
    quantum[i] = r.stats.num_quantum_measurements;
  });

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += samples[i].eta;
    est.max_quantum_measurements = std::max(est.max_quantum_measurements, quantum[i]);
  }
  est.p_hat = sum / static_cast<double>(n);
  if (opt.keep_samples) {
    est.samples = std::move(samples);
  }
  est.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return est;
}

inline Estimate estimate(const GadgetizedCircuit& gc, std::size_t output_index, const EstimateOptions& opt,
                         BackendKind kind) {
  return estimate(gc, output_index, opt, backend_factory(kind));
}

struct RateBounds {
  double upper_rate = 0.7374;
  double lower_rate = 0.5431;
  double upper;   // 2^{0.7374 k} / eps^2
  double lower;   // 2^{0.5431 k} / eps^2
  double m_half;  // stabilizer Renyi entropy of |A>^k at order 1/2
};

inline RateBounds bounds(std::size_t k, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  RateBounds b{};
  const double kd = static_cast<double>(k);
  b.upper = std::exp2(b.upper_rate * kd) / (epsilon * epsilon);
  b.lower = std::exp2(b.lower_rate * kd) / (epsilon * epsilon);
  b.m_half = 2.0 * std::log2((std::sqrt(2.0) + 1.0) / 2.0) * kd;
  return b;
}

}  // namespace pbc
