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

#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qtrojan {

using Qubit = std::size_t;

enum class GateKind { X, H, CX, SWAP, CCX, MCX };

/** Provenance of a gate. Everything read from a source file is Original;
 * the insertion pass tags what it adds so the Trojan can be toggled later.
 */
enum class GateRole { Original, TrojanSwitch, TrojanPayload };

inline std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::CX: return "cx";
    case GateKind::SWAP: return "swap";
    case GateKind::CCX: return "ccx";
    case GateKind::MCX: return "mcx";
  }
  return "?";
}

inline std::string_view role_name(GateRole role) {
  switch (role) {
    case GateRole::Original: return "original";
    case GateRole::TrojanSwitch: return "trojan-switch";
    case GateRole::TrojanPayload: return "trojan-payload";
  }
  return "?";
}

/** A gate application. Operands are ordered controls first, target last;
 * SWAP has two symmetric operands. MCX carries operands.size() - 1 controls.
 */
class Gate {
 public:
  Gate(GateKind kind, std::vector<Qubit> operands,
       GateRole role = GateRole::Original)
      : kind_(kind), operands_(std::move(operands)), role_(role) {
    check_arity();
    for (std::size_t i = 0; i < operands_.size(); ++i) {
      for (std::size_t j = i + 1; j < operands_.size(); ++j) {
        if (operands_[i] == operands_[j]) {
          throw std::invalid_argument(
              "duplicate operand q[" + std::to_string(operands_[i]) +
              "] in " + std::string(gate_name(kind_)) + " gate");
        }
      }
    }
  }

  static Gate x(Qubit q) { return {GateKind::X, {q}}; }
  static Gate h(Qubit q) { return {GateKind::H, {q}}; }
  static Gate cx(Qubit c, Qubit t) { return {GateKind::CX, {c, t}}; }
  static Gate swap(Qubit a, Qubit b) { return {GateKind::SWAP, {a, b}}; }
  static Gate ccx(Qubit c0, Qubit c1, Qubit t) {
    return {GateKind::CCX, {c0, c1, t}};
  }
  static Gate mcx(std::vector<Qubit> controls, Qubit t) {
    controls.push_back(t);
    return {GateKind::MCX, std::move(controls)};
  }

  GateKind kind() const { return kind_; }
  GateRole role() const { return role_; }
  std::span<const Qubit> operands() const { return operands_; }
  std::size_t arity() const { return operands_.size(); }

  // Target of an X-family gate. Meaningless for SWAP and H beyond operand 0.
  Qubit target() const { return operands_.back(); }
  std::span<const Qubit> controls() const {
    return std::span<const Qubit>(operands_).first(operands_.size() - 1);
  }

  bool acts_on(Qubit q) const {
    return std::find(operands_.begin(), operands_.end(), q) != operands_.end();
  }

  // True for gates that map computational basis states to basis states.
  bool is_permutation() const { return kind_ != GateKind::H; }

  Gate with_role(GateRole role) const {
    Gate g = *this;
    g.role_ = role;
    return g;
  }

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  void check_arity() const {
    std::size_t expected = 0;
    switch (kind_) {
      case GateKind::X:
      case GateKind::H: expected = 1; break;
      case GateKind::CX:
      case GateKind::SWAP: expected = 2; break;
      case GateKind::CCX: expected = 3; break;
      case GateKind::MCX:
        if (operands_.size() < 2) {
          throw std::invalid_argument("mcx needs at least one control");
        }
        return;
    }
    if (operands_.size() != expected) {
      throw std::invalid_argument(
          std::string(gate_name(kind_)) + " takes " + std::to_string(expected) +
          " operand(s), got " + std::to_string(operands_.size()));
    }
  }

  GateKind kind_;
  std::vector<Qubit> operands_;
  GateRole role_;
};

/** Ordered gate list over qubits 0..num_qubits-1 plus a measurement map.
 *
 * measured_qubits()[k] is the qubit read into classical bit k. A circuit
 * constructed without measurements measures every qubit in index order.
 * Circuits are immutable; transformations return new instances.
 */
class Circuit {
 public:
  Circuit(std::size_t num_qubits, std::vector<Gate> gates = {},
          std::vector<Qubit> measured = {})
      : num_qubits_(num_qubits),
        gates_(std::move(gates)),
        measured_(std::move(measured)) {
    if (num_qubits_ == 0) {
      throw std::invalid_argument("circuit needs at least one qubit");
    }
    for (const Gate& g : gates_) {
      for (Qubit q : g.operands()) {
        if (q >= num_qubits_) {
          throw std::out_of_range("gate operand q[" + std::to_string(q) +
                                  "] out of range for " +
                                  std::to_string(num_qubits_) + " qubits");
        }
      }
    }
    if (measured_.empty()) {
      measured_.resize(num_qubits_);
      for (Qubit q = 0; q < num_qubits_; ++q) measured_[q] = q;
    }
    std::set<Qubit> seen;
    for (Qubit q : measured_) {
      if (q >= num_qubits_) {
        throw std::out_of_range("measured qubit q[" + std::to_string(q) +
                                "] out of range");
      }
      if (!seen.insert(q).second) {
        throw std::invalid_argument("qubit q[" + std::to_string(q) +
                                    "] measured twice");
      }
    }
  }

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<Qubit>& measured_qubits() const { return measured_; }

  Circuit with_gates(std::vector<Gate> gates) const {
    return Circuit(num_qubits_, std::move(gates), measured_);
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t num_qubits_;
  std::vector<Gate> gates_;
  std::vector<Qubit> measured_;
};

inline std::size_t gate_count(const Circuit& circuit) {
  return circuit.gates().size();
}

inline std::size_t gate_count(const Circuit& circuit, GateRole role) {
  return static_cast<std::size_t>(
      std::count_if(circuit.gates().begin(), circuit.gates().end(),
                    [role](const Gate& g) { return g.role() == role; }));
}

/** Qubits whose final state may depend on what happens to `qubit` from gate
 * index `from_gate` onward. Any gate touching the cone pulls all of its
 * operands in.
 */
inline std::set<Qubit> causal_cone(const Circuit& circuit, Qubit qubit,
                                   std::size_t from_gate = 0) {
  if (qubit >= circuit.num_qubits()) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range");
  }
  std::set<Qubit> cone{qubit};
  const auto& gates = circuit.gates();
  for (std::size_t i = from_gate; i < gates.size(); ++i) {
    const auto ops = gates[i].operands();
    bool touches = std::any_of(ops.begin(), ops.end(),
                               [&](Qubit q) { return cone.contains(q); });
    if (touches) cone.insert(ops.begin(), ops.end());
  }
  return cone;
}

// Canonical one-statement rendering, e.g. "cx q[0],q[1];".
inline std::string to_string(const Gate& gate) {
  std::string s(gate_name(gate.kind()));
  s += ' ';
  bool first = true;
  for (Qubit q : gate.operands()) {
    if (!first) s += ',';
    first = false;
    s += "q[" + std::to_string(q) + "]";
  }
  s += ';';
  return s;
}

}  // namespace qtrojan
