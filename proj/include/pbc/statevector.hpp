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
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbc/pauli.hpp"
#include "pbc/rng.hpp"

namespace pbc {

/// Raised when a register does not fit the dense simulator.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a measurement the caller declared random turns out to be
/// (numerically) deterministic.
class DeterministicMeasurementError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Amplitude = std::complex<double>;

/// Dense state of q qubits. Qubit j is bit j of the amplitude index.
class StateVector {
 public:
  static constexpr std::size_t kMaxQubits = 26;
  static constexpr double kRandomTolerance = 1e-9;

  explicit StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_capacity(num_qubits);
    amps_.assign(std::size_t{1} << num_qubits, Amplitude(0.0, 0.0));
    amps_[0] = 1.0;
  }

  StateVector(std::size_t num_qubits, std::vector<Amplitude> amps) : num_qubits_(num_qubits) {
    check_capacity(num_qubits);
    if (amps.size() != (std::size_t{1} << num_qubits)) {
      throw std::invalid_argument("amplitude count does not match qubit count");
    }
    amps_ = std::move(amps);
  }

  /// |A>^{(x) t} with |A> = (|0> + e^{i pi/4}|1>)/sqrt(2).
  static StateVector init_magic(std::size_t t) {
    check_capacity(t);
    std::vector<Amplitude> amps(std::size_t{1} << t);
    const double mod = std::pow(2.0, -0.5 * static_cast<double>(t));
    for (std::size_t j = 0; j < amps.size(); ++j) {
      int k = std::popcount(j) & 7;
      amps[j] = std::polar(mod, k * std::numbers::pi / 4.0);
    }
    return StateVector(t, std::move(amps));
  }

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }

  double norm() const {
    double s = 0.0;
    for (const Amplitude& a : amps_) {
      s += std::norm(a);
    }
    return std::sqrt(s);
  }

  /// Returns P|psi>.
  std::vector<Amplitude> apply(const PauliOperator& p) const {
    check_operator(p);
    const std::uint64_t xm = p.width() ? p.x_words()[0] : 0;
    const std::uint64_t zm = p.width() ? p.z_words()[0] : 0;
    static const Amplitude kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Amplitude ph = kIPow[p.phase() & 3];
    std::vector<Amplitude> out(amps_.size());
    for (std::size_t j = 0; j < amps_.size(); ++j) {
      Amplitude a = ph * amps_[j];
      out[j ^ xm] = (std::popcount(zm & j) & 1) ? -a : a;
    }
    return out;
  }

  /// <psi|P|psi> for Hermitian P.
  double expectation(const PauliOperator& p) const {
    requires_hermitian(p);
    std::vector<Amplitude> pp = apply(p);
    Amplitude s = 0.0;
    for (std::size_t j = 0; j < amps_.size(); ++j) {
      s += std::conj(amps_[j]) * pp[j];
    }
    return s.real();
  }

  /// Probability of outcome 0 (eigenvalue +1) when measuring P.
  double prob_zero(const PauliOperator& p) const {
    double p0 = 0.5 * (1.0 + expectation(p));
    if (p0 < -kRandomTolerance || p0 > 1.0 + kRandomTolerance) {
      throw std::logic_error("Born probability " + std::to_string(p0) + " out of range");
    }
    return std::clamp(p0, 0.0, 1.0);
  }

  /// Replaces the state by the normalized (I + (-1)^outcome P)|psi>/2.
  /// Returns the probability of that outcome before projection.
  double project(const PauliOperator& p, bool outcome) {
    double p0 = prob_zero(p);
    double prob = outcome ? 1.0 - p0 : p0;
    if (prob <= 0.0) {
      throw std::logic_error("projection onto a zero-probability outcome of " + p.str());
    }
    std::vector<Amplitude> pp = apply(p);
    const double scale = 0.5 / std::sqrt(prob);
    for (std::size_t j = 0; j < amps_.size(); ++j) {
      amps_[j] = scale * (outcome ? amps_[j] - pp[j] : amps_[j] + pp[j]);
    }
    return prob;
  }

  /// Born-rule measurement of P. With `assert_random`, a probability within
  /// 1e-9 of 0 or 1 is reported as an error.
  bool measure_pauli(const PauliOperator& p, Rng& rng, bool assert_random = false) {
    if (p.is_identity()) {
      throw std::invalid_argument("cannot measure a multiple of the identity");
    }
    double p0 = prob_zero(p);
    if (assert_random && (p0 <= kRandomTolerance || p0 >= 1.0 - kRandomTolerance)) {
      throw DeterministicMeasurementError("measurement of " + p.str() +
                                         " was expected to be random but has p0 = " + std::to_string(p0));
    }
    bool outcome = uniform01(rng) >= p0;
    project(p, outcome);
    return outcome;
  }

 private:
  static void check_capacity(std::size_t q) {
    if (q > kMaxQubits) {
      throw CapacityError("statevector register of " + std::to_string(q) + " qubits exceeds the limit of " +
                          std::to_string(kMaxQubits) + "; use the dummy backend");
    }
  }

  void check_operator(const PauliOperator& p) const {
    if (p.width() != num_qubits_) {
      throw std::invalid_argument("Pauli width " + std::to_string(p.width()) + " does not match register of " +
                                  std::to_string(num_qubits_) + " qubits");
    }
  }

  static void requires_hermitian(const PauliOperator& p) {
    if (!p.is_hermitian()) {
      throw std::invalid_argument("observable must be Hermitian: " + p.str());
    }
  }

  std::size_t num_qubits_;
  std::vector<Amplitude> amps_;
};

/// Source of outcomes for Pauli measurements on the magic register.
class MeasurementBackend {
 public:
  virtual ~MeasurementBackend() = default;
  virtual std::size_t num_qubits() const = 0;
  /// Measures an operator that is independent of everything measured so far.
  virtual bool measure(const PauliOperator& p, Rng& rng) = 0;
};

class StatevectorBackend final : public MeasurementBackend {
 public:
  explicit StatevectorBackend(std::size_t num_qubits) : state_(StateVector::init_magic(num_qubits)) {}

  std::size_t num_qubits() const override { return state_.num_qubits(); }
  // Independence from the measured group does not make the outcome random:
  // after XX = -1 on |A>|A>, YY is certain. So no randomness assertion here.
  bool measure(const PauliOperator& p, Rng& rng) override { return state_.measure_pauli(p, rng); }
  const StateVector& state() const { return state_; }

 private:
  StateVector state_;
};

inline bool dummy_measure(const PauliOperator&, Rng& rng) { return coin(rng); }

/// Fair coin in place of every quantum measurement. Keeps the compiled
/// structure of a shot but not its statistics.
class DummyBackend final : public MeasurementBackend {
 public:
  explicit DummyBackend(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const override { return num_qubits_; }
  bool measure(const PauliOperator& p, Rng& rng) override { return dummy_measure(p, rng); }

 private:
  std::size_t num_qubits_;
};

enum class BackendKind { Statevector, Dummy };

inline std::unique_ptr<MeasurementBackend> make_backend(BackendKind kind, std::size_t num_qubits) {
  if (kind == BackendKind::Dummy) {
    return std::make_unique<DummyBackend>(num_qubits);
  }
  return std::make_unique<StatevectorBackend>(num_qubits);
}

}  // namespace pbc
