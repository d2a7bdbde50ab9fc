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
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qtrojan/circuit.hpp"
#include "qtrojan/random.hpp"
#include "qtrojan/schedule.hpp"

namespace qtrojan {

struct TrojanConfig {
  // Unset means: pick with default_control().
  std::optional<Qubit> control_pos;
  std::size_t gate_limit = 1;  // payload CX gates only
  std::uint64_t seed = 0;
  bool activated = true;
};

struct SwitchPlacement {
  std::size_t layer = 0;
  Qubit qubit = 0;
  friend bool operator==(const SwitchPlacement&, const SwitchPlacement&) = default;
};

struct PayloadPlacement {
  std::size_t layer = 0;  // layer of the original schedule
  Qubit control = 0;
  Qubit target = 0;
  friend bool operator==(const PayloadPlacement&, const PayloadPlacement&) = default;
};

enum class TrojanWarning {
  ZeroPayloadPlaced,
  // An original gate touches the control line before the last payload, so the
  // deactivated circuit is no longer guaranteed to behave like the original.
  ControlUsedBeforePayload,
};

inline std::string_view warning_text(TrojanWarning w) {
  switch (w) {
    case TrojanWarning::ZeroPayloadPlaced:
      return "no payload gate could be placed";
    case TrojanWarning::ControlUsedBeforePayload:
      return "control qubit is used by original gates before the last payload";
  }
  return "?";
}

/** Record of one insertion. Layer indices refer to the schedule of the
 * circuit before insertion.
 */
struct TrojanReport {
  std::optional<Qubit> control;
  std::optional<SwitchPlacement> switch_placement;
  std::vector<PayloadPlacement> payloads;
  std::vector<std::size_t> skipped_layers;
  std::size_t gates_added = 0;
  std::uint64_t seed = 0;
  std::vector<TrojanWarning> warnings;

  bool has_warning(TrojanWarning w) const {
    return std::find(warnings.begin(), warnings.end(), w) != warnings.end();
  }

  friend bool operator==(const TrojanReport&, const TrojanReport&) = default;
};

class TrojanError : public std::runtime_error {
 public:
  enum class Code { NoSwitchSlot, TooFewQubits, InvalidConfig, InconsistentReport };

  TrojanError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

namespace detail {

// Step 2 of the insertion without touching the circuit: walk layers 1..,
// placing CX(control -> t) wherever the control is idle and some still
// available qubit is idle too.
inline void plan_payloads(const LayerSchedule& schedule, Qubit control,
                          const TrojanConfig& config, TrojanReport& report) {
  std::vector<Qubit> available;
  for (Qubit q = 0; q < schedule.num_qubits; ++q) {
    if (q != control) available.push_back(q);
  }
  std::mt19937_64 rng(config.seed);
  for (std::size_t layer = 1; layer < schedule.depth(); ++layer) {
    if (report.payloads.size() >= config.gate_limit) break;
    if (!schedule.is_empty(layer, control)) {
      report.skipped_layers.push_back(layer);
      continue;
    }
    const auto& empty = schedule.empty_positions[layer];
    std::vector<Qubit> candidates;
    std::set_intersection(available.begin(), available.end(), empty.begin(),
                          empty.end(), std::back_inserter(candidates));
    if (candidates.empty()) {
      report.skipped_layers.push_back(layer);
      continue;
    }
    const Qubit target = candidates[uniform_index(rng, candidates.size())];
    available.erase(std::find(available.begin(), available.end(), target));
    report.payloads.push_back({layer, control, target});
  }
}

// First layer at which an original gate touches q, or depth if never.
inline std::size_t first_use(const LayerSchedule& schedule, Qubit q) {
  for (std::size_t l = 0; l < schedule.depth(); ++l) {
    if (!schedule.is_empty(l, q)) return l;
  }
  return schedule.depth();
}

inline bool control_untouched_before_payloads(const LayerSchedule& schedule,
                                              Qubit control,
                                              const TrojanReport& report) {
  const std::size_t first = first_use(schedule, control);
  return std::all_of(report.payloads.begin(), report.payloads.end(),
                     [&](const PayloadPlacement& p) { return p.layer < first; });
}

}  // namespace detail

/** Lowest qubit that is idle in layer 0 and, with this config's seed, would
 * carry at least one payload while still untouched by original gates. Falls
 * back to the lowest qubit idle in layer 0. Empty when layer 0 is full.
 */
inline std::optional<Qubit> default_control(const Circuit& circuit,
                                            const TrojanConfig& config) {
  const LayerSchedule schedule = layerize(circuit);
  if (schedule.depth() == 0 || schedule.empty_positions[0].empty()) {
    return std::nullopt;
  }
  for (Qubit cand : schedule.empty_positions[0]) {
    TrojanReport trial;
    detail::plan_payloads(schedule, cand, config, trial);
    if (!trial.payloads.empty() &&
        detail::control_untouched_before_payloads(schedule, cand, trial)) {
      return cand;
    }
  }
  return schedule.empty_positions[0].front();
}

/** Insert a switch X gate in layer 0 and up to gate_limit payload CX gates
 * into idle slots of later layers. Inserted gates only occupy slots that are
 * empty in the original schedule, so the depth does not change.
 *
 * A Trojan gate is placed right after the last original gate on its operands
 * that belongs to an earlier layer, and the switch goes first, so original
 * gates keep their program order. When that ordering would stretch the
 * schedule, the result is emitted layer by layer instead.
 */
inline std::pair<Circuit, TrojanReport> insert_trojan(const Circuit& circuit,
                                                      const TrojanConfig& config) {
  using Code = TrojanError::Code;
  if (circuit.num_qubits() < 2) {
    throw TrojanError(Code::TooFewQubits, "trojan insertion needs at least 2 qubits");
  }
  if (config.gate_limit < 1) {
    throw TrojanError(Code::InvalidConfig, "gate_limit must be at least 1");
  }
  if (config.control_pos && *config.control_pos >= circuit.num_qubits()) {
    throw TrojanError(Code::InvalidConfig,
                      "control_pos " + std::to_string(*config.control_pos) +
                          " out of range for " +
                          std::to_string(circuit.num_qubits()) + " qubits");
  }

  const LayerSchedule schedule = layerize(circuit);
  const std::optional<Qubit> control =
      config.control_pos ? config.control_pos : default_control(circuit, config);
  if (schedule.depth() == 0) {
    throw TrojanError(Code::NoSwitchSlot, "circuit has no layer 0 to host the switch");
  }
  if (!control || !schedule.is_empty(0, *control)) {
    throw TrojanError(Code::NoSwitchSlot,
                      control ? "qubit " + std::to_string(*control) +
                                    " is occupied in layer 0"
                              : "layer 0 has no empty slot");
  }

  TrojanReport report;
  report.control = *control;
  report.seed = config.seed;
  detail::plan_payloads(schedule, *control, config, report);
  if (config.activated) report.switch_placement = SwitchPlacement{0, *control};
  report.gates_added = report.payloads.size() + (config.activated ? 1 : 0);
  if (report.payloads.empty()) {
    report.warnings.push_back(TrojanWarning::ZeroPayloadPlaced);
  } else if (!detail::control_untouched_before_payloads(schedule, *control, report)) {
    report.warnings.push_back(TrojanWarning::ControlUsedBeforePayload);
  }

  // after[i] collects Trojan gates emitted right after original gate i.
  const auto& gates = circuit.gates();
  std::vector<Gate> front;
  std::map<std::size_t, std::vector<Gate>> after;
  if (config.activated) {
    front.push_back(Gate::x(*control).with_role(GateRole::TrojanSwitch));
  }
  for (const PayloadPlacement& p : report.payloads) {
    std::optional<std::size_t> anchor;
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (schedule.gate_layer[i] < p.layer &&
          (gates[i].acts_on(p.control) || gates[i].acts_on(p.target))) {
        anchor = i;
      }
    }
    Gate g = Gate::cx(p.control, p.target).with_role(GateRole::TrojanPayload);
    if (anchor) {
      after[*anchor].push_back(std::move(g));
    } else {
      front.push_back(std::move(g));
    }
  }

  std::vector<Gate> out = front;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    out.push_back(gates[i]);
    if (auto it = after.find(i); it != after.end()) {
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  Circuit result = circuit.with_gates(std::move(out));

  // A later-layer gate on one operand can precede the anchor in program
  // order; then no placement keeps the original order, so emit by layer.
  if (depth(result) != schedule.depth()) {
    std::vector<Gate> by_layer;
    if (config.activated) by_layer.push_back(front.front());
    for (std::size_t l = 0; l < schedule.depth(); ++l) {
      for (std::size_t idx : schedule.layers[l]) by_layer.push_back(gates[idx]);
      for (const PayloadPlacement& p : report.payloads) {
        if (p.layer == l) {
          by_layer.push_back(Gate::cx(p.control, p.target).with_role(GateRole::TrojanPayload));
        }
      }
    }
    result = circuit.with_gates(std::move(by_layer));
  }
  if (depth(result) != schedule.depth()) {
    throw std::logic_error("trojan insertion changed circuit depth");
  }
  return {std::move(result), std::move(report)};
}

/** Arm or disarm an inserted Trojan. Payload gates stay in place; only the
 * switch X gate at the front of the circuit is added or removed.
 */
inline Circuit set_activation(const Circuit& circuit, const TrojanReport& report,
                              bool activated) {
  using Code = TrojanError::Code;
  std::optional<Qubit> control = report.control;
  if (!control && report.switch_placement) control = report.switch_placement->qubit;
  if (!control && !report.payloads.empty()) control = report.payloads.front().control;
  if (!control) {
    throw TrojanError(Code::InconsistentReport, "report names no control qubit");
  }

  std::vector<std::pair<Qubit, Qubit>> found;
  std::vector<Gate> kept;
  std::size_t switches = 0;
  for (const Gate& g : circuit.gates()) {
    if (g.role() == GateRole::TrojanPayload) {
      found.emplace_back(g.operands()[0], g.operands()[1]);
      kept.push_back(g);
    } else if (g.role() == GateRole::TrojanSwitch) {
      if (g.kind() != GateKind::X || g.target() != *control) {
        throw TrojanError(Code::InconsistentReport,
                          "switch gate does not sit on the control qubit");
      }
      ++switches;
    } else {
      kept.push_back(g);
    }
  }
  std::vector<std::pair<Qubit, Qubit>> expected;
  for (const auto& p : report.payloads) {
    if (p.control != *control) {
      throw TrojanError(Code::InconsistentReport, "payloads disagree on the control qubit");
    }
    expected.emplace_back(p.control, p.target);
  }
  std::sort(found.begin(), found.end());
  std::sort(expected.begin(), expected.end());
  if (found != expected) {
    throw TrojanError(Code::InconsistentReport,
                      "payload gates in the circuit do not match the report");
  }
  if (switches > 1) {
    throw TrojanError(Code::InconsistentReport, "more than one switch gate");
  }
  if (activated) {
    kept.insert(kept.begin(), Gate::x(*control).with_role(GateRole::TrojanSwitch));
  }
  return circuit.with_gates(std::move(kept));
}

inline nlohmann::json to_json(const TrojanReport& report) {
  nlohmann::json j;
  if (report.switch_placement) {
    j["switch"] = {{"layer", report.switch_placement->layer},
                   {"qubit", report.switch_placement->qubit}};
  } else {
    j["switch"] = nullptr;
  }
  j["payloads"] = nlohmann::json::array();
  for (const auto& p : report.payloads) {
    j["payloads"].push_back(
        {{"layer", p.layer}, {"control", p.control}, {"target", p.target}});
  }
  j["skipped"] = report.skipped_layers;
  j["gates_added"] = report.gates_added;
  j["seed"] = report.seed;
  return j;
}

inline TrojanReport trojan_report_from_json(const nlohmann::json& j) {
  TrojanReport r;
  if (!j.at("switch").is_null()) {
    r.switch_placement = SwitchPlacement{j["switch"].at("layer").get<std::size_t>(),
                                         j["switch"].at("qubit").get<Qubit>()};
    r.control = r.switch_placement->qubit;
  }
  for (const auto& p : j.at("payloads")) {
    r.payloads.push_back({p.at("layer").get<std::size_t>(),
                          p.at("control").get<Qubit>(), p.at("target").get<Qubit>()});
  }
  if (!r.control && !r.payloads.empty()) r.control = r.payloads.front().control;
  r.skipped_layers = j.at("skipped").get<std::vector<std::size_t>>();
  r.gates_added = j.at("gates_added").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (r.payloads.empty()) r.warnings.push_back(TrojanWarning::ZeroPayloadPlaced);
  return r;
}

}  // namespace qtrojan
