// Copyright 2026 The qtrojan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reader and writer for the OpenQASM 2.0 subset the toolkit works with:
//
//   OPENQASM 2.0;
//   include "qelib1.inc";          (optional, the only include accepted)
//   qreg q[n];                     (exactly one quantum register)
//   creg c[m];                     (any number of classical registers)
//   x/h q[i];  cx/swap a,b;  ccx a,b,t;
//   mcx c0,c1,...,t;               (extension: any number of controls >= 1)
//   measure q[i] -> c[j];  measure q -> c;
//
// A trailing "// role=trojan-switch" or "// role=trojan-payload" comment on
// a gate line sets the gate's role. Everything else is rejected with a
// line/column diagnostic.

#pragma once

#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtrojan/circuit.hpp"

namespace qtrojan {

struct ParseDiagnostic {
  enum class Severity { Error, Warning };

  std::size_t line = 1;  // 1-based
  std::size_t column = 1;
  std::string message;
  Severity severity = Severity::Error;

  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " +
           (severity == Severity::Error ? "error: " : "warning: ") + message;
  }
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(ParseDiagnostic diag)
      : std::runtime_error(diag.str()), diag_(std::move(diag)) {}
  const ParseDiagnostic& diagnostic() const { return diag_; }

 private:
  ParseDiagnostic diag_;
};

namespace detail {

struct Token {
  enum class Kind { Ident, Int, Real, String, Symbol, Arrow, Comment, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Token::Kind::End, "", line_, col_});
        return out;
      }
      const std::size_t l = line_, c = col_;
      const char ch = src_[pos_];
      if (ch == '/' && peek(1) == '/') {
        std::size_t end = src_.find('\n', pos_);
        if (end == std::string_view::npos) end = src_.size();
        std::string text(src_.substr(pos_ + 2, end - pos_ - 2));
        advance(end - pos_);
        out.push_back({Token::Kind::Comment, std::move(text), l, c});
      } else if (ch == '/' && peek(1) == '*') {
        std::size_t end = src_.find("*/", pos_ + 2);
        if (end == std::string_view::npos) fail(l, c, "unterminated comment");
        advance(end + 2 - pos_);
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t n = 0;
        while (pos_ + n < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_ + n])) ||
                src_[pos_ + n] == '_')) {
          ++n;
        }
        out.push_back({Token::Kind::Ident, std::string(src_.substr(pos_, n)), l, c});
        advance(n);
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t n = 0;
        bool real = false;
        while (pos_ + n < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_ + n])) ||
                src_[pos_ + n] == '.')) {
          real |= src_[pos_ + n] == '.';
          ++n;
        }
        out.push_back({real ? Token::Kind::Real : Token::Kind::Int,
                       std::string(src_.substr(pos_, n)), l, c});
        advance(n);
      } else if (ch == '"') {
        std::size_t end = src_.find('"', pos_ + 1);
        if (end == std::string_view::npos ||
            src_.substr(pos_, end - pos_).find('\n') != std::string_view::npos) {
          fail(l, c, "unterminated string");
        }
        out.push_back({Token::Kind::String,
                       std::string(src_.substr(pos_ + 1, end - pos_ - 1)), l, c});
        advance(end + 1 - pos_);
      } else if (ch == '-' && peek(1) == '>') {
        out.push_back({Token::Kind::Arrow, "->", l, c});
        advance(2);
      } else if (std::string_view(";,[](){}").find(ch) != std::string_view::npos) {
        out.push_back({Token::Kind::Symbol, std::string(1, ch), l, c});
        advance(1);
      } else {
        fail(l, c, std::string("unexpected character '") + ch + "'");
      }
    }
  }

 private:
  char peek(std::size_t k) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }
  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      advance(1);
    }
  }
  [[noreturn]] static void fail(std::size_t l, std::size_t c, std::string msg) {
    throw ParseError({l, c, std::move(msg)});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<ParseDiagnostic>* warnings)
      : toks_(std::move(tokens)), warnings_(warnings) {}

  Circuit run() {
    skip_comments();
    expect_header();
    while (cur().kind != Token::Kind::End) {
      statement();
      skip_comments();
    }
    if (!qreg_) fail(cur(), "no quantum register declared");
    return finish();
  }

 private:
  struct Register {
    std::string name;
    std::size_t size;
    std::size_t offset;  // flat classical bit offset
  };
  struct Operand {
    std::size_t index;
    bool broadcast;
    const Token* at;
  };

  const Token& cur() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  void skip_comments() {
    while (cur().kind == Token::Kind::Comment) ++pos_;
  }

  [[noreturn]] void fail(const Token& at, std::string msg) const {
    throw ParseError({at.line, at.column, std::move(msg)});
  }

  void warn(const Token& at, std::string msg) {
    if (warnings_) {
      warnings_->push_back(
          {at.line, at.column, std::move(msg), ParseDiagnostic::Severity::Warning});
    }
  }

  const Token& expect(Token::Kind kind, std::string_view text, std::string_view what) {
    skip_comments();
    const Token& t = cur();
    if (t.kind != kind || (!text.empty() && t.text != text)) {
      fail(t, "expected " + std::string(what) +
                  (t.kind == Token::Kind::End ? " before end of input"
                                              : ", found '" + t.text + "'"));
    }
    return take();
  }

  void expect_symbol(char c) {
    expect(Token::Kind::Symbol, std::string(1, c), std::string("'") + c + "'");
  }

  std::size_t expect_int() {
    const Token& t = expect(Token::Kind::Int, "", "integer");
    try {
      return std::stoul(t.text);
    } catch (const std::exception&) {
      fail(t, "integer out of range");
    }
  }

  void expect_header() {
    const Token& kw = cur();
    if (kw.kind != Token::Kind::Ident || kw.text != "OPENQASM") {
      fail(kw, "program must start with 'OPENQASM 2.0;'");
    }
    take();
    skip_comments();
    const Token& ver = cur();
    if ((ver.kind != Token::Kind::Real && ver.kind != Token::Kind::Int) ||
        (ver.text != "2.0" && ver.text != "2")) {
      fail(ver, "unsupported OpenQASM version '" + ver.text + "'");
    }
    take();
    expect_symbol(';');
  }

  void statement() {
    const Token& head = cur();
    if (head.kind != Token::Kind::Ident) {
      fail(head, "expected a statement, found '" + head.text + "'");
    }
    const std::string& word = head.text;
    if (word == "include") {
      take();
      const Token& file = expect(Token::Kind::String, "", "file name");
      if (file.text != "qelib1.inc") {
        fail(file, "only qelib1.inc may be included");
      }
      expect_symbol(';');
    } else if (word == "qreg") {
      take();
      declare_qreg(head);
    } else if (word == "creg") {
      take();
      declare_creg();
    } else if (word == "measure") {
      take();
      measure(head);
    } else if (word == "x" || word == "h" || word == "cx" || word == "swap" ||
               word == "ccx" || word == "mcx") {
      take();
      gate(head);
    } else if (word == "barrier" || word == "reset" || word == "if" ||
               word == "gate" || word == "opaque" || word == "OPENQASM") {
      fail(head, "unsupported statement '" + word + "'");
    } else {
      fail(head, "unsupported gate '" + word + "'");
    }
  }

  void declare_qreg(const Token& head) {
    if (qreg_) fail(head, "only a single quantum register is supported");
    const Token& name = expect(Token::Kind::Ident, "", "register name");
    expect_symbol('[');
    const Token& size_tok = cur();
    std::size_t size = expect_int();
    if (size == 0) fail(size_tok, "register size must be positive");
    expect_symbol(']');
    expect_symbol(';');
    qreg_ = Register{name.text, size, 0};
    measured_by_.assign(size, false);
  }

  void declare_creg() {
    const Token& name = expect(Token::Kind::Ident, "", "register name");
    if (find_creg(name.text) || (qreg_ && qreg_->name == name.text)) {
      fail(name, "register '" + name.text + "' redeclared");
    }
    expect_symbol('[');
    const Token& size_tok = cur();
    std::size_t size = expect_int();
    if (size == 0) fail(size_tok, "register size must be positive");
    expect_symbol(']');
    expect_symbol(';');
    cregs_.push_back({name.text, size, clbits_});
    clbits_ += size;
  }

  const Register* find_creg(const std::string& name) const {
    for (const auto& r : cregs_) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }

  Operand qubit_operand() {
    skip_comments();
    const Token& name = cur();
    if (name.kind != Token::Kind::Ident) fail(name, "expected qubit operand");
    if (!qreg_) fail(name, "qubit used before any qreg declaration");
    if (name.text != qreg_->name) {
      fail(name, "unknown quantum register '" + name.text + "'");
    }
    take();
    skip_comments();
    if (!(cur().kind == Token::Kind::Symbol && cur().text == "[")) {
      return {0, true, &name};
    }
    take();
    const Token& idx_tok = cur();
    std::size_t idx = expect_int();
    if (idx >= qreg_->size) {
      fail(idx_tok, "index " + std::to_string(idx) + " out of bounds for " +
                        qreg_->name + "[" + std::to_string(qreg_->size) + "]");
    }
    expect_symbol(']');
    return {idx, false, &name};
  }

  void gate(const Token& head) {
    static const std::map<std::string, GateKind, std::less<>> kinds = {
        {"x", GateKind::X},     {"h", GateKind::H},     {"cx", GateKind::CX},
        {"swap", GateKind::SWAP}, {"ccx", GateKind::CCX}, {"mcx", GateKind::MCX}};
    const GateKind kind = kinds.at(head.text);

    skip_comments();
    if (cur().kind == Token::Kind::Symbol && cur().text == "(") {
      fail(cur(), "gate '" + head.text + "' takes no parameters");
    }
    std::vector<Qubit> ops;
    while (true) {
      Operand op = qubit_operand();
      if (op.broadcast) fail(*op.at, "register broadcast is not supported for gates");
      for (Qubit prev : ops) {
        if (prev == op.index) {
          fail(*op.at, "duplicate operand q[" + std::to_string(op.index) +
                           "] in " + head.text + " gate");
        }
      }
      if (measured_by_[op.index]) {
        fail(*op.at, "gate on q[" + std::to_string(op.index) +
                         "] after it was measured");
      }
      ops.push_back(op.index);
      skip_comments();
      if (cur().kind == Token::Kind::Symbol && cur().text == ",") {
        take();
        continue;
      }
      break;
    }
    const Token& semi = cur();
    expect_symbol(';');

    GateRole role = GateRole::Original;
    if (cur().kind == Token::Kind::Comment && cur().line == semi.line) {
      role = role_tag(cur());
    }
    try {
      gates_.emplace_back(kind, std::move(ops), role);
    } catch (const std::invalid_argument& e) {
      fail(head, e.what());
    }
  }

  GateRole role_tag(const Token& comment) {
    std::string_view text = comment.text;
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) {
      text.remove_suffix(1);
    }
    constexpr std::string_view prefix = "role=";
    if (text.substr(0, prefix.size()) != prefix) return GateRole::Original;
    text.remove_prefix(prefix.size());
    if (text == "original") return GateRole::Original;
    if (text == "trojan-switch") return GateRole::TrojanSwitch;
    if (text == "trojan-payload") return GateRole::TrojanPayload;
    fail(comment, "unknown role tag '" + std::string(text) + "'");
  }

  void measure(const Token& head) {
    Operand q = qubit_operand();
    expect(Token::Kind::Arrow, "->", "'->'");
    skip_comments();
    const Token& cname = cur();
    if (cname.kind != Token::Kind::Ident) fail(cname, "expected classical register");
    const Register* creg = find_creg(cname.text);
    if (!creg) fail(cname, "unknown classical register '" + cname.text + "'");
    take();
    skip_comments();
    if (cur().kind == Token::Kind::Symbol && cur().text == "[") {
      if (q.broadcast) fail(cname, "cannot measure a whole register into one bit");
      take();
      const Token& idx_tok = cur();
      std::size_t idx = expect_int();
      if (idx >= creg->size) {
        fail(idx_tok, "index " + std::to_string(idx) + " out of bounds for " +
                          creg->name + "[" + std::to_string(creg->size) + "]");
      }
      expect_symbol(']');
      expect_symbol(';');
      record_measure(q.index, creg->offset + idx, *q.at);
    } else {
      if (!q.broadcast) fail(cname, "expected '[' after classical register");
      if (creg->size != qreg_->size) {
        fail(cname, "register sizes differ in broadcast measure");
      }
      expect_symbol(';');
      for (std::size_t i = 0; i < qreg_->size; ++i) {
        record_measure(i, creg->offset + i, head);
      }
    }
  }

  void record_measure(Qubit q, std::size_t clbit, const Token& at) {
    if (measured_by_[q]) fail(at, "q[" + std::to_string(q) + "] measured twice");
    if (clbit_to_qubit_.contains(clbit)) {
      fail(at, "classical bit " + std::to_string(clbit) + " written twice");
    }
    measured_by_[q] = true;
    clbit_to_qubit_[clbit] = q;
    last_measure_ = &at;
  }

  Circuit finish() {
    std::vector<Qubit> measured;
    for (const auto& [bit, q] : clbit_to_qubit_) {
      if (bit != measured.size()) {
        fail(*last_measure_,
             "measured classical bits must be contiguous from bit 0 (bit " +
                 std::to_string(measured.size()) + " is never written)");
      }
      measured.push_back(q);
    }
    if (measured.empty()) {
      warn(toks_.front(), "no measure statements; measuring all qubits");
    }
    return Circuit(qreg_->size, std::move(gates_), std::move(measured));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<ParseDiagnostic>* warnings_;
  std::optional<Register> qreg_;
  std::vector<Register> cregs_;
  std::size_t clbits_ = 0;
  std::vector<bool> measured_by_;
  std::map<std::size_t, Qubit> clbit_to_qubit_;
  const Token* last_measure_ = nullptr;
  std::vector<Gate> gates_;
};

}  // namespace detail

/** Parse a program in the supported subset. Throws ParseError on the first
 * problem; non-fatal findings are appended to `warnings` when given.
 */
inline Circuit parse_qasm(std::string_view source,
                          std::vector<ParseDiagnostic>* warnings = nullptr) {
  detail::Parser parser(detail::Lexer(source).run(), warnings);
  return parser.run();
}

inline Circuit read_qasm_file(const std::filesystem::path& path,
                              std::vector<ParseDiagnostic>* warnings = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_qasm(ss.str(), warnings);
}

/** Canonical text: header, registers, one gate per line, measurements last.
 * Trojan gates carry a role comment so the output stays valid QASM.
 */
inline std::string emit_qasm(const Circuit& circuit) {
  std::string out;
  out += "OPENQASM 2.0;\n";
  out += "include \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(circuit.num_qubits()) + "];\n";
  out += "creg c[" + std::to_string(circuit.measured_qubits().size()) + "];\n";
  for (const Gate& g : circuit.gates()) {
    out += to_string(g);
    if (g.role() != GateRole::Original) {
      out += " // role=";
      out += role_name(g.role());
    }
    out += '\n';
  }
  const auto& measured = circuit.measured_qubits();
  for (std::size_t bit = 0; bit < measured.size(); ++bit) {
    out += "measure q[" + std::to_string(measured[bit]) + "] -> c[" +
           std::to_string(bit) + "];\n";
  }
  return out;
}

}  // namespace qtrojan
