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

// Line-oriented circuit text format:
//
//   qubits 3
//   cbits 3              (optional, defaults to the qubit count)
//   input q2 magic       (optional, per qubit)
//   h q0
//   sdg q2
//   cx q0 q1
//   measure q1 -> c1
//   if (c1 ^ 1) s q0
//   reset q1
//
// '#' starts a comment.

#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pbc/circuit.hpp"

namespace pbc {

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) +
                              ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(' || c == ')' || c == '^') {
      out.push_back({std::string(1, c), i + 1});
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", i + 1});
      i += 2;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '(' &&
           line[i] != ')' && line[i] != '^') {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::size_t line_no, std::vector<Token> tokens, std::size_t line_len)
      : line_(line_no), tokens_(std::move(tokens)), end_column_(line_len + 1) {}

  bool done() const { return pos_ == tokens_.size(); }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t col = pos_ < tokens_.size() ? tokens_[pos_].column : end_column_;
    throw ParseError(line_, col, what);
  }

  const Token& next(const char* expected) {
    if (done()) {
      fail(std::string("expected ") + expected);
    }
    return tokens_[pos_++];
  }

  void expect(const std::string& literal) {
    if (done() || tokens_[pos_].text != literal) {
      fail("expected '" + literal + "'");
    }
    ++pos_;
  }

  bool peek_is(const std::string& literal) const { return !done() && tokens_[pos_].text == literal; }

  std::size_t number() {
    if (done()) {
      fail("expected a number");
    }
    return parse_index(tokens_[pos_++], "");
  }

  std::size_t indexed(char prefix) {
    const char name[2] = {prefix, '\0'};
    if (done()) {
      fail(std::string("expected ") + name + "<index>");
    }
    return parse_index(tokens_[pos_++], name);
  }

  void finish() {
    if (!done()) {
      fail("unexpected token '" + tokens_[pos_].text + "'");
    }
  }

  std::size_t column_of_last() const { return tokens_[pos_ - 1].column; }

 private:
  std::size_t parse_index(const Token& tok, const std::string& prefix) {
    std::string_view s = tok.text;
    if (!s.starts_with(prefix) || s.size() == prefix.size()) {
      throw ParseError(line_, tok.column, "expected " + prefix + "<index>, got '" + tok.text + "'");
    }
    s.remove_prefix(prefix.size());
    std::size_t value = 0;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError(line_, tok.column, "malformed index '" + tok.text + "'");
      }
      value = value * 10 + static_cast<std::size_t>(c - '0');
      if (value > (std::size_t{1} << 40)) {
        throw ParseError(line_, tok.column, "index too large '" + tok.text + "'");
      }
    }
    return value;
  }

  std::size_t line_;
  std::vector<Token> tokens_;
  std::size_t end_column_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Circuit parse_circuit(std::string_view text) {
  std::optional<Circuit> circuit;
  std::optional<std::size_t> declared_qubits;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto tokens = detail::tokenize(line);
    if (tokens.empty()) {
      continue;
    }
    detail::LineParser p(line_no, std::move(tokens), line.size());
    const std::string word = p.next("instruction").text;

    if (word == "qubits") {
      if (declared_qubits) {
        p.fail("duplicate qubits declaration");
      }
      declared_qubits = p.number();
      p.finish();
      circuit.emplace(*declared_qubits, *declared_qubits);
      continue;
    }
    if (!circuit) {
      throw ParseError(line_no, 1, "expected 'qubits <n>' before '" + word + "'");
    }
    if (word == "cbits") {
      if (!circuit->instructions().empty()) {
        p.fail("cbits must be declared before instructions");
      }
      std::size_t m = p.number();
      p.finish();
      std::vector<InputState> inputs = circuit->input_spec();
      circuit.emplace(*declared_qubits, m);
      for (std::size_t q = 0; q < inputs.size(); ++q) {
        circuit->set_input(q, inputs[q]);
      }
      continue;
    }

    try {
      if (word == "h" || word == "s" || word == "sdg" || word == "t" || word == "x") {
        std::size_t q = p.indexed('q');
        p.finish();
        GateKind kind = word == "h"     ? GateKind::H
                        : word == "s"   ? GateKind::S
                        : word == "sdg" ? GateKind::Sdg
                        : word == "t"   ? GateKind::T
                                        : GateKind::X;
        circuit->gate(kind, q);
      } else if (word == "cx") {
        std::size_t a = p.indexed('q');
        std::size_t b = p.indexed('q');
        p.finish();
        circuit->cx(a, b);
      } else if (word == "measure") {
        std::size_t q = p.indexed('q');
        p.expect("->");
        std::size_t c = p.indexed('c');
        p.finish();
        circuit->measure(q, c);
      } else if (word == "reset") {
        std::size_t q = p.indexed('q');
        p.finish();
        circuit->reset(q);
      } else if (word == "input") {
        std::size_t q = p.indexed('q');
        const std::string state = p.next("'magic' or 'zero'").text;
        if (state != "magic" && state != "zero") {
          p.fail("expected 'magic' or 'zero'");
        }
        p.finish();
        circuit->set_input(q, state == "magic" ? InputState::Magic : InputState::Zero);
      } else if (word == "if") {
        p.expect("(");
        Condition cond;
        while (true) {
          if (p.peek_is("1")) {
            p.next("1");
            cond.invert = !cond.invert;
          } else {
            cond.cbits.push_back(p.indexed('c'));
          }
          if (p.peek_is(")")) {
            p.next(")");
            break;
          }
          p.expect("^");
        }
        const detail::Token gate_tok = p.next("s, x or z");
        const std::string& g = gate_tok.text;
        GateKind kind;
        if (g == "s") {
          kind = GateKind::S;
        } else if (g == "x") {
          kind = GateKind::X;
        } else if (g == "z") {
          kind = GateKind::Z;
        } else {
          throw ParseError(line_no, gate_tok.column, "conditional gate must be s, x or z");
        }
        std::size_t q = p.indexed('q');
        p.finish();
        circuit->cond(kind, q, std::move(cond));
      } else {
        throw ParseError(line_no, 1, "unknown instruction '" + word + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line_no, 1, e.what());
    }
  }
  if (!circuit) {
    throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'qubits <n>' header");
  }
  return std::move(*circuit);
}

inline std::string serialize_instruction(const Instruction& inst) {
  std::ostringstream out;
  if (const auto* g = std::get_if<Gate>(&inst)) {
    out << gate_name(g->kind) << " q" << g->qubit;
  } else if (const auto* cx = std::get_if<Cnot>(&inst)) {
    out << "cx q" << cx->control << " q" << cx->target;
  } else if (const auto* m = std::get_if<Measure>(&inst)) {
    out << "measure q" << m->qubit << " -> c" << m->cbit;
  } else if (const auto* cg = std::get_if<CondGate>(&inst)) {
    out << "if (";
    bool first = true;
    for (std::size_t c : cg->condition.cbits) {
      out << (first ? "" : " ^ ") << 'c' << c;
      first = false;
    }
    if (cg->condition.invert) {
      out << (first ? "" : " ^ ") << '1';
    }
    out << ") " << gate_name(cg->kind) << " q" << cg->qubit;
  } else if (const auto* r = std::get_if<Reset>(&inst)) {
    out << "reset q" << r->qubit;
  }
  return out.str();
}

/// Normalized text: header, cbits, magic inputs, then one instruction per line.
inline std::string serialize_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.num_qubits() << '\n';
  out << "cbits " << c.num_cbits() << '\n';
  for (std::size_t q = 0; q < c.num_qubits(); ++q) {
    if (c.input_spec()[q] == InputState::Magic) {
      out << "input q" << q << " magic\n";
    }
  }
  for (const Instruction& inst : c.instructions()) {
    out << serialize_instruction(inst) << '\n';
  }
  return out.str();
}

}  // namespace pbc
