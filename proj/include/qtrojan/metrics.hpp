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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qtrojan/circuit.hpp"
#include "qtrojan/schedule.hpp"
#include "qtrojan/sim.hpp"

namespace qtrojan {

namespace detail {

inline std::optional<std::size_t> key_width(const Probabilities& p) {
  if (p.empty()) return std::nullopt;
  return p.begin()->first.size();
}

inline void require_same_width(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (a && b && *a != *b) {
    throw std::invalid_argument("distributions have different bit widths (" +
                                std::to_string(*a) + " vs " + std::to_string(*b) + ")");
  }
}

}  // namespace detail

/** Total variation distance 1/2 * sum_i |p(i) - q(i)| over the union of
 * outcomes; absent outcomes count as zero. For two count vectors with the
 * same number of shots N this is sum_i |y_a(i) - y_b(i)| / (2N).
 */
inline double tvd(const Probabilities& a, const Probabilities& b) {
  detail::require_same_width(detail::key_width(a), detail::key_width(b));
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      sum += std::abs(ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      sum += std::abs(ib->second);
      ++ib;
    } else {
      sum += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return std::min(1.0, 0.5 * sum);
}

inline double tvd(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  detail::require_same_width(a.width(), b.width());
  return tvd(a.probabilities(), b.probabilities());
}

inline double tvd(const Probabilities& a, const OutcomeDistribution& b) {
  return tvd(a, b.probabilities());
}

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

// TVD of two count distributions as a reduced fraction:
// sum_i |y_a(i) N_b - y_b(i) N_a| / (2 N_a N_b).
inline Rational tvd_exact(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  detail::require_same_width(a.width(), b.width());
  std::set<std::string> keys;
  for (const auto& [k, n] : a.counts()) keys.insert(k);
  for (const auto& [k, n] : b.counts()) keys.insert(k);
  std::uint64_t num = 0;
  for (const auto& k : keys) {
    const std::uint64_t x = a.count(k) * b.shots();
    const std::uint64_t y = b.count(k) * a.shots();
    num += x > y ? x - y : y - x;
  }
  std::uint64_t den = 2 * a.shots() * b.shots();
  const std::uint64_t g = std::gcd(num, den);
  if (g) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

inline double accuracy(const Probabilities& p, const std::string& expected) {
  detail::require_same_width(detail::key_width(p), expected.size());
  auto it = p.find(expected);
  return it == p.end() ? 0.0 : it->second;
}

// Fraction of shots that returned `expected`.
inline double accuracy(const OutcomeDistribution& d, const std::string& expected) {
  detail::require_same_width(d.width(), expected.size());
  return static_cast<double>(d.count(expected)) / static_cast<double>(d.shots());
}

/** Reference output for accuracy: the most likely ideal outcome (ties go to
 * the lexicographically smallest key). `multimodal` is set when the ideal
 * distribution has more than one outcome.
 */
struct ExpectedOutput {
  std::string bits;
  bool multimodal = false;
};

inline ExpectedOutput expected_output(const Probabilities& ideal) {
  ExpectedOutput out;
  double best = -1.0;
  for (const auto& [key, p] : ideal) {
    if (p > best + 1e-12) {
      best = p;
      out.bits = key;
    }
  }
  out.multimodal = ideal.size() > 1;
  return out;
}

inline ExpectedOutput expected_output(const Circuit& circuit) {
  return expected_output(ideal_distribution(circuit));
}

struct OverheadReport {
  std::size_t depth_before = 0;
  std::size_t depth_after = 0;
  std::size_t gates_before = 0;
  std::size_t gates_after = 0;
  double depth_delta_pct = 0.0;
  double gate_delta_pct = 0.0;
  double accuracy_before = 0.0;
  double accuracy_after = 0.0;
  double tvd = 0.0;
  std::string expected;
  bool multimodal = false;

  long gate_difference() const {
    return static_cast<long>(gates_after) - static_cast<long>(gates_before);
  }
  // Percentage points, e.g. 0.983 -> 0.943 is -4.0.
  double accuracy_change_pct() const { return (accuracy_after - accuracy_before) * 100.0; }
};

inline double percent_change(double before, double after) {
  return before == 0.0 ? 0.0 : (after - before) / before * 100.0;
}

/** Compare an original circuit with a modified one. The distributions may
 * be exact or sampled; `expected` is the reference output for accuracy.
 */
inline OverheadReport overhead(const Circuit& original, const Circuit& inserted,
                               const Probabilities& orig_dist, const Probabilities& ins_dist,
                               const ExpectedOutput& expected) {
  if (original.num_qubits() != inserted.num_qubits() ||
      original.measured_qubits() != inserted.measured_qubits()) {
    throw std::invalid_argument("circuits differ in qubit count or measurement map");
  }
  OverheadReport r;
  r.depth_before = depth(original);
  r.depth_after = depth(inserted);
  r.gates_before = gate_count(original);
  r.gates_after = gate_count(inserted);
  r.depth_delta_pct = percent_change(static_cast<double>(r.depth_before),
                                     static_cast<double>(r.depth_after));
  r.gate_delta_pct = percent_change(static_cast<double>(r.gates_before),
                                    static_cast<double>(r.gates_after));
  r.accuracy_before = accuracy(orig_dist, expected.bits);
  r.accuracy_after = accuracy(ins_dist, expected.bits);
  r.tvd = tvd(orig_dist, ins_dist);
  r.expected = expected.bits;
  r.multimodal = expected.multimodal;
  return r;
}

// Report number format: six decimals with trailing zeros trimmed
// ("9", "0.943", "-4.2").
inline std::string format_number(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s;
}

inline constexpr const char* kTableHeader =
    "circuit,depth,depth_obfuscated,gate_count,gate_obfuscated,gate_difference,"
    "accuracy,accuracy_deactivated,accuracy_change_pct,tvd_activated";

// One row in table column order.
inline std::string to_csv_row(const std::string& name, const OverheadReport& r) {
  return name + "," + std::to_string(r.depth_before) + "," + std::to_string(r.depth_after) +
         "," + std::to_string(r.gates_before) + "," + std::to_string(r.gates_after) + "," +
         std::to_string(r.gate_difference()) + "," + format_number(r.accuracy_before) + "," +
         format_number(r.accuracy_after) + "," + format_number(r.accuracy_change_pct()) +
         "," + format_number(r.tvd);
}

inline nlohmann::json to_json(const OverheadReport& r) {
  return {{"depth_before", r.depth_before},
          {"depth_after", r.depth_after},
          {"gates_before", r.gates_before},
          {"gates_after", r.gates_after},
          {"gate_difference", r.gate_difference()},
          {"depth_delta_pct", r.depth_delta_pct},
          {"gate_delta_pct", r.gate_delta_pct},
          {"accuracy_before", r.accuracy_before},
          {"accuracy_after", r.accuracy_after},
          {"accuracy_change_pct", r.accuracy_change_pct()},
          {"tvd", r.tvd},
          {"expected", r.expected},
          {"multimodal", r.multimodal}};
}

}  // namespace qtrojan
