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

// Independent reference implementations used as test oracles. None of these
// call into the library code paths they are compared against.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qtrojan/circuit.hpp"

#ifndef QTROJAN_FIXTURE_DIR
#error "QTROJAN_FIXTURE_DIR must be defined"
#endif

namespace qtrojan::testing {

inline std::filesystem::path fixture_dir() { return QTROJAN_FIXTURE_DIR; }
inline std::filesystem::path bench_dir() { return fixture_dir() / "bench"; }
inline std::filesystem::path special_dir() { return fixture_dir() / "special"; }

// Every parseable fixture (bench + special), sorted by path.
inline std::vector<std::filesystem::path> all_fixture_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& dir : {bench_dir(), special_dir()}) {
    for (const auto& f : std::filesystem::directory_iterator(dir)) {
      if (f.path().extension() == ".qasm" && f.path().stem() != "malformed") {
        out.push_back(f.path());
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Layer of every gate from the longest dependency path over *all* earlier
// gates that share a qubit, O(n^2).
inline std::vector<std::size_t> longest_path_layers(const Circuit& c) {
  const auto& g = c.gates();
  std::vector<std::size_t> layer(g.size(), 0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      bool shared = false;
      for (Qubit q : g[i].operands()) shared |= g[j].acts_on(q);
      if (shared) layer[j] = std::max(layer[j], layer[i] + 1);
    }
  }
  return layer;
}

inline std::size_t longest_path_depth(const Circuit& c) {
  const auto layers = longest_path_layers(c);
  return layers.empty() ? 0 : *std::max_element(layers.begin(), layers.end()) + 1;
}

// Forward reachability: gate j is reachable from gate i when they share a
// qubit and j > i; the cone is `qubit` plus the operands of every gate
// reachable from a gate that touches `qubit`.
inline std::set<Qubit> reachability_cone(const Circuit& c, Qubit qubit) {
  const auto& g = c.gates();
  std::vector<char> hit(g.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].acts_on(qubit)) {
      hit[i] = 1;
      stack.push_back(i);
      break;
    }
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (hit[j]) continue;
      bool shared = false;
      for (Qubit q : g[i].operands()) shared |= g[j].acts_on(q);
      if (shared) {
        hit[j] = 1;
        stack.push_back(j);
      }
    }
  }
  std::set<Qubit> cone{qubit};
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (hit[i]) cone.insert(g[i].operands().begin(), g[i].operands().end());
  }
  return cone;
}

using Matrix = std::vector<std::vector<std::complex<double>>>;

inline Matrix identity(std::size_t dim) {
  Matrix m(dim, std::vector<std::complex<double>>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = 1.0;
  return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix r(n, std::vector<std::complex<double>>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b.size();
  Matrix r(n * m, std::vector<std::complex<double>>(n * m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) r[i * m + k][j * m + l] = a[i][j] * b[k][l];
  return r;
}

/** Full 2^n x 2^n unitary of one gate. H is built as a Kronecker product
 * (most significant qubit first); permutation gates from their truth table
 * over basis-state bit vectors.
 */
inline Matrix dense_unitary(const Gate& gate, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  if (gate.kind() == GateKind::H) {
    const double r = 1.0 / std::sqrt(2.0);
    const Matrix h = {{r, r}, {r, -r}};
    Matrix m = {{1.0}};
    for (std::size_t k = n; k-- > 0;) m = kron(m, k == gate.operands()[0] ? h : identity(2));
    return m;
  }
  Matrix m(dim, std::vector<std::complex<double>>(dim, 0.0));
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<int> bits(n);
    for (std::size_t q = 0; q < n; ++q) bits[q] = static_cast<int>((col >> q) & 1);
    const auto ops = gate.operands();
    if (gate.kind() == GateKind::SWAP) {
      std::swap(bits[ops[0]], bits[ops[1]]);
    } else {
      int all = 1;
      for (std::size_t k = 0; k + 1 < ops.size(); ++k) all &= bits[ops[k]];
      bits[ops.back()] ^= all;
    }
    std::size_t row = 0;
    for (std::size_t q = 0; q < n; ++q) row |= static_cast<std::size_t>(bits[q]) << q;
    m[row][col] = 1.0;
  }
  return m;
}

// Outcome probabilities from the product of dense unitaries applied to |0>.
inline std::map<std::string, double> dense_distribution(const Circuit& c) {
  const std::size_t n = c.num_qubits();
  Matrix u = identity(std::size_t{1} << n);
  for (const Gate& g : c.gates()) u = multiply(dense_unitary(g, n), u);
  std::map<std::string, double> p;
  const auto& measured = c.measured_qubits();
  for (std::size_t row = 0; row < u.size(); ++row) {
    const double w = std::norm(u[row][0]);
    std::string key;
    for (std::size_t bit = measured.size(); bit-- > 0;) {
      key += ((row >> measured[bit]) & 1) ? '1' : '0';
    }
    p[key] += w;
  }
  return p;
}

// Random circuit over the supported gate set.
inline Circuit random_circuit(std::mt19937_64& rng, std::size_t n, std::size_t gates,
                              bool with_h = true, bool random_measure = false) {
  std::vector<Gate> out;
  std::vector<Qubit> qubits(n);
  for (Qubit q = 0; q < n; ++q) qubits[q] = q;
  for (std::size_t i = 0; i < gates; ++i) {
    std::shuffle(qubits.begin(), qubits.end(), rng);
    const std::size_t pick = rng() % 6;
    switch (pick) {
      case 0: out.push_back(Gate::x(qubits[0])); break;
      case 1:
        out.push_back(with_h ? Gate::h(qubits[0]) : Gate::x(qubits[0]));
        break;
      case 2:
        if (n >= 2) out.push_back(Gate::cx(qubits[0], qubits[1]));
        break;
      case 3:
        if (n >= 2) out.push_back(Gate::swap(qubits[0], qubits[1]));
        break;
      case 4:
        if (n >= 3) out.push_back(Gate::ccx(qubits[0], qubits[1], qubits[2]));
        break;
      default:
        if (n >= 4) out.push_back(Gate::mcx({qubits[0], qubits[1], qubits[2]}, qubits[3]));
        break;
    }
  }
  std::vector<Qubit> measured;
  if (random_measure) {
    std::shuffle(qubits.begin(), qubits.end(), rng);
    measured.assign(qubits.begin(), qubits.begin() + 1 + rng() % n);
  }
  return Circuit(n, std::move(out), std::move(measured));
}

}  // namespace qtrojan::testing
