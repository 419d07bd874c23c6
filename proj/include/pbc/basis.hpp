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
#include <stdexcept>
#include <variant>
#include <vector>

#include "pbc/pauli.hpp"

namespace pbc {

enum class RowOrigin : std::uint8_t { Dummy, Quantum };

struct Anticommuting {
  std::size_t row;
};

struct Dependent {
  std::vector<std::size_t> rows;  // ascending
  bool sign_bit;                  // prod rows == (-1)^sign_bit * p
};

struct Independent {};

using Classification = std::variant<Anticommuting, Dependent, Independent>;

/// Ordered list of pairwise commuting, GF(2)-independent Hermitian Pauli
/// operators with one outcome bit each.
///
/// Alongside the rows an echelon form of their (x|z) vectors is kept, each
/// echelon vector tagged with the set of original rows it combines. Echelon
/// vector i has a zero at the pivots of every earlier echelon vector, so a
/// single in-order sweep reduces any query vector.
class BasisTracker {
 public:
  explicit BasisTracker(std::size_t width) : width_(width), words_((width + 63) / 64) {}

  std::size_t width() const { return width_; }
  std::size_t size() const { return rows_.size(); }
  std::size_t rank() const { return echelon_.size(); }
  const PauliOperator& row(std::size_t i) const { return rows_.at(i); }
  bool outcome(std::size_t i) const { return outcomes_.at(i); }
  RowOrigin origin(std::size_t i) const { return origins_.at(i); }

  void insert(const PauliOperator& p, bool outcome, RowOrigin origin) {
    check_width(p);
    if (!p.is_hermitian() || p.is_identity()) {
      throw std::invalid_argument("basis rows must be Hermitian and non-trivial: " + p.str());
    }
    for (const PauliOperator& r : rows_) {
      if (!commutes(r, p)) {
        throw std::invalid_argument("basis row " + p.str() + " anticommutes with " + r.str());
      }
    }
    std::vector<std::uint64_t> vec = pack(p);
    std::vector<std::uint64_t> combo(combo_words(rows_.size() + 1), 0);
    reduce(vec, combo);
    std::size_t pivot = lowest_bit(vec);
    if (pivot == kNone) {
      throw std::invalid_argument("basis row " + p.str() + " is dependent on earlier rows");
    }
    combo[rows_.size() >> 6] ^= std::uint64_t{1} << (rows_.size() & 63);
    echelon_.push_back({std::move(vec), std::move(combo), pivot});
    rows_.push_back(p);
    outcomes_.push_back(outcome);
    origins_.push_back(origin);
  }

  Classification classify(const PauliOperator& p) const {
    check_width(p);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!commutes(rows_[i], p)) {
        return Anticommuting{i};
      }
    }
    std::vector<std::uint64_t> vec = pack(p);
    std::vector<std::uint64_t> combo(combo_words(rows_.size()), 0);
    reduce(vec, combo);
    if (lowest_bit(vec) != kNone) {
      return Independent{};
    }
    Dependent dep{{}, false};
    PauliOperator product = PauliOperator::identity(width_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if ((combo[i >> 6] >> (i & 63)) & 1u) {
        dep.rows.push_back(i);
        product = multiply(product, rows_[i]);
      }
    }
    unsigned diff = (product.phase() + 4u - p.phase()) & 3u;
    if (diff & 1u) {
      throw std::logic_error("dependent Pauli " + p.str() + " differs from its row product by +-i");
    }
    dep.sign_bit = diff == 2;
    return dep;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct EchelonRow {
    std::vector<std::uint64_t> bits;
    std::vector<std::uint64_t> combo;
    std::size_t pivot;
  };

  static std::size_t combo_words(std::size_t rows) { return rows / 64 + 1; }

  void check_width(const PauliOperator& p) const {
    if (p.width() != width_) {
      throw std::invalid_argument("Pauli width " + std::to_string(p.width()) +
                                  " does not match basis width " + std::to_string(width_));
    }
  }

  std::vector<std::uint64_t> pack(const PauliOperator& p) const {
    std::vector<std::uint64_t> vec(2 * words_);
    auto xs = p.x_words();
    auto zs = p.z_words();
    for (std::size_t w = 0; w < words_; ++w) {
      vec[w] = xs[w];
      vec[words_ + w] = zs[w];
    }
    return vec;
  }

  void reduce(std::vector<std::uint64_t>& vec, std::vector<std::uint64_t>& combo) const {
    for (const EchelonRow& e : echelon_) {
      if ((vec[e.pivot >> 6] >> (e.pivot & 63)) & 1u) {
        for (std::size_t w = 0; w < vec.size(); ++w) {
          vec[w] ^= e.bits[w];
        }
        for (std::size_t w = 0; w < e.combo.size() && w < combo.size(); ++w) {
          combo[w] ^= e.combo[w];
        }
      }
    }
  }

  static std::size_t lowest_bit(const std::vector<std::uint64_t>& vec) {
    for (std::size_t w = 0; w < vec.size(); ++w) {
      if (vec[w]) {
        return w * 64 + static_cast<std::size_t>(std::countr_zero(vec[w]));
      }
    }
    return kNone;
  }

  std::size_t width_;
  std::size_t words_;
  std::vector<PauliOperator> rows_;
  std::vector<bool> outcomes_;
  std::vector<RowOrigin> origins_;
  std::vector<EchelonRow> echelon_;
};

}  // namespace pbc
