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

// Subcommand bodies of the qtrojan tool. They write to the given streams and
// return the process exit code, so tests can drive them without a shell.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtrojan/bench.hpp"
#include "qtrojan/circuit.hpp"
#include "qtrojan/metrics.hpp"
#include "qtrojan/qasm.hpp"
#include "qtrojan/schedule.hpp"
#include "qtrojan/sim.hpp"
#include "qtrojan/trojan.hpp"

namespace qtrojan::cli {

// QTROJAN_SEED if set and numeric, else 0.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("QTROJAN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

/** "p1,p2,pread" -> NoiseModel; "off" or "none" -> noiseless. */
inline std::optional<NoiseModel> parse_noise(const std::string& spec) {
  if (spec == "off" || spec == "none") return std::nullopt;
  std::vector<double> v;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    double x = std::stod(part, &used);
    if (used != part.size()) throw std::invalid_argument("bad noise value '" + part + "'");
    v.push_back(x);
  }
  if (v.size() != 3) throw std::invalid_argument("--noise expects p1,p2,pread");
  NoiseModel m{v[0], v[1], v[2]};
  m.validate();
  return m;
}

namespace detail {

inline std::optional<Circuit> load(const std::filesystem::path& path, std::ostream& err) {
  try {
    std::vector<ParseDiagnostic> warnings;
    Circuit c = read_qasm_file(path, &warnings);
    for (const auto& w : warnings) err << path.string() << ":" << w.str() << '\n';
    return c;
  } catch (const ParseError& e) {
    err << path.string() << ":" << e.diagnostic().str() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return std::nullopt;
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

}  // namespace detail

struct AnalyzeOptions {
  std::filesystem::path input;
  bool json = false;
};

inline int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
  auto circuit = detail::load(opt.input, err);
  if (!circuit) return kExitParse;
  const LayerSchedule s = layerize(*circuit);

  if (opt.json) {
    nlohmann::json layers = nlohmann::json::array();
    for (std::size_t l = 0; l < s.depth(); ++l) {
      nlohmann::json gates = nlohmann::json::array();
      for (std::size_t idx : s.layers[l]) gates.push_back(to_string(circuit->gates()[idx]));
      layers.push_back({{"index", l}, {"gates", gates}, {"empty", s.empty_positions[l]}});
    }
    out << nlohmann::json{{"num_qubits", circuit->num_qubits()},
                          {"gate_count", gate_count(*circuit)},
                          {"depth", s.depth()},
                          {"measured", circuit->measured_qubits()},
                          {"layers", layers}}
               .dump(2)
        << '\n';
    return kExitOk;
  }

  out << "qubits: " << circuit->num_qubits() << '\n';
  out << "gates: " << gate_count(*circuit) << '\n';
  out << s.depth() << " layers\n";
  for (std::size_t l = 0; l < s.depth(); ++l) {
    out << "layer " << l << ":";
    for (std::size_t idx : s.layers[l]) out << ' ' << to_string(circuit->gates()[idx]);
    out << "  empty:";
    if (s.empty_positions[l].empty()) out << " -";
    for (Qubit q : s.empty_positions[l]) out << " q[" << q << "]";
    out << '\n';
  }
  return kExitOk;
}

struct InjectOptions {
  enum class Variant { Activated, Deactivated, Both };

  std::filesystem::path input;
  std::optional<Qubit> control_pos;
  std::size_t gate_limit = 3;
  std::uint64_t seed = 0;
  Variant variant = Variant::Activated;
  std::filesystem::path out_dir = ".";
};

/** Writes <stem>.activated.qasm and/or <stem>.deactivated.qasm plus
 * <stem>.trojan.json into out_dir.
 */
inline int cmd_inject(const InjectOptions& opt, std::ostream& out, std::ostream& err) {
  auto circuit = detail::load(opt.input, err);
  if (!circuit) return kExitParse;

  TrojanConfig config;
  config.control_pos = opt.control_pos;
  config.gate_limit = opt.gate_limit;
  config.seed = opt.seed;
  config.activated = opt.variant != InjectOptions::Variant::Deactivated;

  try {
    auto [inserted, report] = insert_trojan(*circuit, config);
    for (TrojanWarning w : report.warnings) err << "warning: " << warning_text(w) << '\n';

    std::filesystem::create_directories(opt.out_dir);
    const std::string stem = opt.input.stem().string();
    std::vector<std::filesystem::path> written;
    auto emit = [&](const Circuit& c, const std::string& suffix) {
      const auto p = opt.out_dir / (stem + suffix);
      detail::write_file(p, emit_qasm(c));
      written.push_back(p);
    };
    switch (opt.variant) {
      case InjectOptions::Variant::Activated: emit(inserted, ".activated.qasm"); break;
      case InjectOptions::Variant::Deactivated: emit(inserted, ".deactivated.qasm"); break;
      case InjectOptions::Variant::Both:
        emit(inserted, ".activated.qasm");
        emit(set_activation(inserted, report, false), ".deactivated.qasm");
        break;
    }
    const auto report_path = opt.out_dir / (stem + ".trojan.json");
    detail::write_file(report_path, to_json(report).dump(2) + "\n");
    written.push_back(report_path);

    out << "control: q[" << *report.control << "]\n";
    out << "payloads: " << report.payloads.size() << " (limit " << opt.gate_limit << ")\n";
    out << "gates: " << gate_count(*circuit) << " -> " << gate_count(inserted) << '\n';
    out << "depth: " << depth(*circuit) << " -> " << depth(inserted) << '\n';
    for (const auto& p : written) out << "wrote " << p.string() << '\n';
    return kExitOk;
  } catch (const TrojanError& e) {
    err << "error: insertion infeasible: " << e.what() << '\n';
    if (e.code() == TrojanError::Code::NoSwitchSlot) {
      err << "the switch gate needs an idle slot on the control qubit in the first layer\n";
    }
    return kExitInsertion;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

struct EvaluateOptions {
  std::filesystem::path original;
  std::filesystem::path inserted;
  std::uint64_t shots = 1000;
  std::optional<NoiseModel> noise = NoiseModel{};
  std::uint64_t seed = 0;
  bool exact = false;
  std::optional<std::string> expected;
  bool csv = false;
};

inline int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err) {
  auto original = detail::load(opt.original, err);
  if (!original) return kExitParse;
  auto inserted = detail::load(opt.inserted, err);
  if (!inserted) return kExitParse;

  try {
    const Probabilities ideal = ideal_distribution(*original);
    ExpectedOutput expected = expected_output(ideal);
    if (opt.expected) expected.bits = *opt.expected;

    Probabilities a, b;
    if (opt.exact) {
      a = ideal;
      b = ideal_distribution(*inserted);
    } else {
      a = sample(*original, opt.shots, derive_seed(opt.seed, 0), opt.noise).probabilities();
      b = sample(*inserted, opt.shots, derive_seed(opt.seed, 1), opt.noise).probabilities();
    }
    const OverheadReport r = overhead(*original, *inserted, a, b, expected);
    if (r.multimodal && !opt.expected) {
      err << "warning: ideal output is multimodal; accuracy uses the most likely outcome "
          << expected.bits << '\n';
    }
    if (opt.csv) {
      out << kTableHeader << '\n' << to_csv_row(opt.original.stem().string(), r) << '\n';
    } else {
      out << to_json(r).dump(2) << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSimulation;
  }
}

struct BenchOptions {
  std::filesystem::path dir;
  std::size_t iterations = 20;
  std::uint64_t shots = 1000;
  std::optional<NoiseModel> noise = NoiseModel{};
  std::uint64_t seed = 0;
  std::size_t gate_limit = 3;
  std::filesystem::path out_dir = "bench-out";
  ReportFormat format = ReportFormat::Csv;
};

inline int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  RunManifest m;
  try {
    m.inputs = load_bench_inputs(opt.dir, opt.gate_limit);
    m.iterations = opt.iterations;
    m.seed = opt.seed;
    m.shots = opt.shots;
    m.noise = opt.noise;
    m.output_dir = opt.out_dir;
    m.format = opt.format;
    m.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const SuiteResult suite = run_bench(m);
  for (const auto& c : suite.circuits) {
    if (!c.ok()) err << "failed: " << c.name << ": " << c.error << '\n';
  }
  try {
    for (const auto& p : write_reports(suite, m)) out << "wrote " << p.string() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return suite.exit_code();
}

}  // namespace qtrojan::cli
