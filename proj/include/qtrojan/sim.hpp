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

// Statevector simulation and shot sampling.
//
// Bit conventions: basis index bit q holds qubit q (qubit 0 least
// significant). Outcome keys are strings over the measured qubits with
// classical bit 0 as the rightmost character, so measured_qubits() = {q0, q1}
// renders as "<q1><q0>".

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qtrojan/circuit.hpp"
#include "qtrojan/random.hpp"

namespace qtrojan {

inline constexpr std::size_t kMaxSimQubits = 20;

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Amplitude = std::complex<double>;

class StateVector {
 public:
  // |0...0> on n qubits.
  explicit StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits > kMaxSimQubits) {
      throw SimulationError("statevector limited to " +
                            std::to_string(kMaxSimQubits) + " qubits, got " +
                            std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  std::vector<Amplitude>& amplitudes() { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

 private:
  std::size_t num_qubits_;
  std::vector<Amplitude> amps_;
};

namespace detail {

inline void check_operands(const StateVector& state, const Gate& gate) {
  for (Qubit q : gate.operands()) {
    if (q >= state.num_qubits()) {
      throw std::out_of_range("gate operand q[" + std::to_string(q) +
                              "] out of range for " +
                              std::to_string(state.num_qubits()) + "-qubit state");
    }
  }
}

enum class Pauli { X, Y, Z };

inline void apply_pauli(std::vector<Amplitude>& a, Qubit q, Pauli p) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i & bit) continue;
    Amplitude& lo = a[i];
    Amplitude& hi = a[i | bit];
    switch (p) {
      case Pauli::X: std::swap(lo, hi); break;
      case Pauli::Y: {
        // Y|0> = i|1>, Y|1> = -i|0>
        const Amplitude l = lo;
        lo = Amplitude{0, -1} * hi;
        hi = Amplitude{0, 1} * l;
        break;
      }
      case Pauli::Z: hi = -hi; break;
    }
  }
}

// Image of a basis index under a permutation gate.
inline std::uint64_t permute_basis(std::uint64_t index, const Gate& gate) {
  const auto ops = gate.operands();
  if (gate.kind() == GateKind::SWAP) {
    const std::uint64_t a = (index >> ops[0]) & 1U, b = (index >> ops[1]) & 1U;
    if (a != b) index ^= (std::uint64_t{1} << ops[0]) | (std::uint64_t{1} << ops[1]);
    return index;
  }
  for (Qubit c : gate.controls()) {
    if (!((index >> c) & 1U)) return index;
  }
  return index ^ (std::uint64_t{1} << gate.target());
}

}  // namespace detail

/** Apply a gate in place. X-family gates flip the target where every
 * control is set; SWAP exchanges two bit positions; H mixes the pair.
 */
inline void apply_gate_inplace(StateVector& state, const Gate& gate) {
  detail::check_operands(state, gate);
  auto& a = state.amplitudes();
  const auto ops = gate.operands();
  switch (gate.kind()) {
    case GateKind::H: {
      const std::size_t bit = std::size_t{1} << ops[0];
      const double r = 1.0 / std::sqrt(2.0);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & bit) continue;
        const Amplitude lo = a[i], hi = a[i | bit];
        a[i] = r * (lo + hi);
        a[i | bit] = r * (lo - hi);
      }
      return;
    }
    case GateKind::SWAP: {
      const std::size_t ba = std::size_t{1} << ops[0];
      const std::size_t bb = std::size_t{1} << ops[1];
      for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & ba) && !(i & bb)) std::swap(a[i], a[i ^ ba ^ bb]);
      }
      return;
    }
    default: {
      std::size_t mask = 0;
      for (Qubit c : gate.controls()) mask |= std::size_t{1} << c;
      const std::size_t t = std::size_t{1} << gate.target();
      for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & mask) == mask && !(i & t)) std::swap(a[i], a[i | t]);
      }
      return;
    }
  }
}

inline StateVector apply_gate(StateVector state, const Gate& gate) {
  apply_gate_inplace(state, gate);
  return state;
}

inline StateVector run_statevector(const Circuit& circuit) {
  StateVector s(circuit.num_qubits());
  for (const Gate& g : circuit.gates()) apply_gate_inplace(s, g);
  return s;
}

// Outcome key for a full basis index (see file comment for bit order).
inline std::string outcome_key(std::uint64_t basis_index,
                               const std::vector<Qubit>& measured) {
  std::string key(measured.size(), '0');
  for (std::size_t bit = 0; bit < measured.size(); ++bit) {
    if ((basis_index >> measured[bit]) & 1U) key[measured.size() - 1 - bit] = '1';
  }
  return key;
}

inline std::string outcome_key_from_bits(std::uint64_t clbits, std::size_t width) {
  std::string key(width, '0');
  for (std::size_t bit = 0; bit < width; ++bit) {
    if ((clbits >> bit) & 1U) key[width - 1 - bit] = '1';
  }
  return key;
}

/** Exact outcome probabilities keyed by bitstring. Outcomes with zero
 * probability (below 1e-15) are omitted.
 */
using Probabilities = std::map<std::string, double>;

namespace detail {

inline std::uint64_t gather_bits(std::uint64_t index, const std::vector<Qubit>& measured) {
  std::uint64_t out = 0;
  for (std::size_t bit = 0; bit < measured.size(); ++bit) {
    out |= ((index >> measured[bit]) & 1U) << bit;
  }
  return out;
}

// Marginal probability per classical-bit pattern.
inline std::vector<double> marginal(const StateVector& s, const std::vector<Qubit>& measured) {
  std::vector<double> p(std::size_t{1} << measured.size(), 0.0);
  const auto& a = s.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double w = std::norm(a[i]);
    if (w != 0.0) p[gather_bits(i, measured)] += w;
  }
  return p;
}

}  // namespace detail

inline Probabilities ideal_distribution(const Circuit& circuit) {
  if (circuit.num_qubits() > kMaxSimQubits) {
    throw SimulationError("ideal_distribution supports at most " +
                          std::to_string(kMaxSimQubits) + " qubits");
  }
  const auto& measured = circuit.measured_qubits();
  const auto p = detail::marginal(run_statevector(circuit), measured);
  Probabilities out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] > 1e-15) out[outcome_key_from_bits(k, measured.size())] = p[k];
  }
  return out;
}

/** Shot counts over measured bitstrings. Every key has the same width and
 * the counts add up to shots().
 */
class OutcomeDistribution {
 public:
  OutcomeDistribution() = default;
  OutcomeDistribution(std::map<std::string, std::uint64_t> counts, std::uint64_t shots)
      : counts_(std::move(counts)), shots_(shots) {
    std::uint64_t total = 0;
    std::optional<std::size_t> width;
    for (const auto& [key, n] : counts_) {
      if (width && key.size() != *width) {
        throw std::invalid_argument("outcome keys have different widths");
      }
      width = key.size();
      if (key.find_first_not_of("01") != std::string::npos) {
        throw std::invalid_argument("outcome key '" + key + "' is not a bitstring");
      }
      total += n;
    }
    if (total != shots_) {
      throw std::invalid_argument("counts sum to " + std::to_string(total) +
                                  " but shots is " + std::to_string(shots_));
    }
  }

  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t shots() const { return shots_; }

  std::uint64_t count(const std::string& key) const {
    auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
  }

  std::optional<std::size_t> width() const {
    if (counts_.empty()) return std::nullopt;
    return counts_.begin()->first.size();
  }

  Probabilities probabilities() const {
    Probabilities p;
    for (const auto& [key, n] : counts_) {
      if (n) p[key] = static_cast<double>(n) / static_cast<double>(shots_);
    }
    return p;
  }

  friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;

 private:
  std::map<std::string, std::uint64_t> counts_;
  std::uint64_t shots_ = 0;
};

inline nlohmann::json to_json(const OutcomeDistribution& d) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [key, n] : d.counts()) counts[key] = n;
  return {{"counts", counts}, {"shots", d.shots()}};
}

inline OutcomeDistribution outcome_distribution_from_json(const nlohmann::json& j) {
  return OutcomeDistribution(j.at("counts").get<std::map<std::string, std::uint64_t>>(),
                             j.at("shots").get<std::uint64_t>());
}

struct NoiseModel {
  double p1 = 0.001;     // per single-qubit gate
  double p2 = 0.01;      // per gate on two or more qubits
  double p_read = 0.02;  // per measured bit

  void validate() const {
    for (double p : {p1, p2, p_read}) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("noise probabilities must lie in [0, 1]");
      }
    }
  }
  bool has_gate_noise() const { return p1 > 0.0 || p2 > 0.0; }
};

namespace detail {

inline std::uint64_t draw_index(const std::vector<double>& cdf, SplitMix64& rng) {
  const double u = uniform_real(rng) * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<std::uint64_t>(it - cdf.begin());
}

inline std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = (acc += p[i]);
  return cdf;
}

inline std::uint64_t flip_readout(std::uint64_t bits, std::size_t width, double p_read,
                                  SplitMix64& rng) {
  if (p_read <= 0.0) return bits;
  for (std::size_t bit = 0; bit < width; ++bit) {
    if (uniform_real(rng) < p_read) bits ^= std::uint64_t{1} << bit;
  }
  return bits;
}

}  // namespace detail

/** Draw `shots` outcomes. Each shot uses its own SplitMix64 stream seeded by
 * derive_seed(seed, shot), so the result does not depend on evaluation order.
 *
 * With a noise model, every gate is followed, independently on each operand,
 * by a uniformly random X, Y or Z with probability p1 (one-qubit gates) or
 * p2 (larger gates); each measured bit is then flipped with probability
 * p_read. Circuits built only from permutation gates are tracked as a single
 * basis state, which is exact for Pauli noise.
 */
inline OutcomeDistribution sample(const Circuit& circuit, std::uint64_t shots,
                                  std::uint64_t seed,
                                  const std::optional<NoiseModel>& noise = std::nullopt) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  if (circuit.num_qubits() > kMaxSimQubits) {
    throw SimulationError("sampling supports at most " + std::to_string(kMaxSimQubits) +
                          " qubits");
  }
  if (noise) noise->validate();
  const auto& measured = circuit.measured_qubits();
  const std::size_t width = measured.size();
  std::vector<std::uint64_t> tally(std::size_t{1} << width, 0);

  const bool gate_noise = noise && noise->has_gate_noise();
  const double p_read = noise ? noise->p_read : 0.0;

  if (!gate_noise) {
    const auto cdf = detail::cumulative(detail::marginal(run_statevector(circuit), measured));
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
      SplitMix64 rng(derive_seed(seed, shot));
      std::uint64_t bits = detail::draw_index(cdf, rng);
      bits = detail::flip_readout(bits, width, p_read, rng);
      ++tally[bits];
    }
  } else {
    const bool classical = std::all_of(circuit.gates().begin(), circuit.gates().end(),
                                       [](const Gate& g) { return g.is_permutation(); });
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
      SplitMix64 rng(derive_seed(seed, shot));
      std::uint64_t bits = 0;
      if (classical) {
        std::uint64_t basis = 0;
        for (const Gate& g : circuit.gates()) {
          basis = detail::permute_basis(basis, g);
          const double p = g.arity() == 1 ? noise->p1 : noise->p2;
          for (Qubit q : g.operands()) {
            if (uniform_real(rng) < p) {
              // X and Y flip the bit; Z only changes the global phase.
              if (uniform_index(rng, 3) != 2) basis ^= std::uint64_t{1} << q;
            }
          }
        }
        bits = detail::gather_bits(basis, measured);
      } else {
        StateVector s(circuit.num_qubits());
        for (const Gate& g : circuit.gates()) {
          apply_gate_inplace(s, g);
          const double p = g.arity() == 1 ? noise->p1 : noise->p2;
          for (Qubit q : g.operands()) {
            if (uniform_real(rng) < p) {
              const auto which = static_cast<detail::Pauli>(uniform_index(rng, 3));
              detail::apply_pauli(s.amplitudes(), q, which);
            }
          }
        }
        bits = detail::draw_index(detail::cumulative(detail::marginal(s, measured)), rng);
      }
      bits = detail::flip_readout(bits, width, p_read, rng);
      ++tally[bits];
    }
  }

  std::map<std::string, std::uint64_t> counts;
  for (std::size_t k = 0; k < tally.size(); ++k) {
    if (tally[k]) counts[outcome_key_from_bits(k, width)] = tally[k];
  }
  return OutcomeDistribution(std::move(counts), shots);
}

}  // namespace qtrojan
