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
#include <vector>

#include "qtrojan/circuit.hpp"

namespace qtrojan {

/** ASAP partition of a circuit's gates into temporal layers.
 *
 * layers[i] lists gate indices (into the scheduled circuit) in circuit order;
 * empty_positions[i] is the sorted complement of the qubits those gates use.
 */
struct LayerSchedule {
  std::size_t num_qubits = 0;
  std::vector<std::vector<std::size_t>> layers;
  std::vector<std::vector<Qubit>> empty_positions;
  std::vector<std::size_t> gate_layer;

  std::size_t depth() const { return layers.size(); }

  bool is_empty(std::size_t layer, Qubit q) const {
    const auto& e = empty_positions.at(layer);
    return std::binary_search(e.begin(), e.end(), q);
  }

  friend bool operator==(const LayerSchedule&, const LayerSchedule&) = default;
};

inline LayerSchedule layerize(const Circuit& circuit) {
  LayerSchedule s;
  s.num_qubits = circuit.num_qubits();
  // next_free[q] is one past the last layer touching q.
  std::vector<std::size_t> next_free(circuit.num_qubits(), 0);
  std::vector<std::vector<char>> used;
  s.gate_layer.reserve(circuit.gates().size());

  for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
    const auto ops = circuit.gates()[i].operands();
    std::size_t layer = 0;
    for (Qubit q : ops) layer = std::max(layer, next_free[q]);
    if (layer == s.layers.size()) {
      s.layers.emplace_back();
      used.emplace_back(circuit.num_qubits(), 0);
    }
    s.layers[layer].push_back(i);
    for (Qubit q : ops) {
      next_free[q] = layer + 1;
      used[layer][q] = 1;
    }
    s.gate_layer.push_back(layer);
  }

  s.empty_positions.resize(s.layers.size());
  for (std::size_t l = 0; l < s.layers.size(); ++l) {
    for (Qubit q = 0; q < circuit.num_qubits(); ++q) {
      if (!used[l][q]) s.empty_positions[l].push_back(q);
    }
  }
  return s;
}

inline std::size_t depth(const Circuit& circuit) {
  return layerize(circuit).depth();
}

// Rebuild the circuit with its gates reordered layer by layer.
inline Circuit flatten(const Circuit& circuit, const LayerSchedule& schedule) {
  std::vector<Gate> gates;
  gates.reserve(circuit.gates().size());
  for (const auto& layer : schedule.layers) {
    for (std::size_t idx : layer) gates.push_back(circuit.gates()[idx]);
  }
  return circuit.with_gates(std::move(gates));
}

}  // namespace qtrojan
