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

// Benchmark harness: seeded insertion + simulation over a fixture directory,
// averaged per circuit into a table row.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtrojan/circuit.hpp"
#include "qtrojan/metrics.hpp"
#include "qtrojan/qasm.hpp"
#include "qtrojan/random.hpp"
#include "qtrojan/schedule.hpp"
#include "qtrojan/sim.hpp"
#include "qtrojan/trojan.hpp"

namespace qtrojan {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitInsertion = 3,
  kExitSimulation = 4,
};

enum class ReportFormat { Csv, Json };

struct BenchEntry {
  std::filesystem::path file;
  std::size_t gate_limit = 3;
  std::optional<std::string> expected;
  std::optional<Qubit> control_pos;

  std::string name() const { return file.stem().string(); }
};

/** Everything that determines a benchmark run. Two runs with equal
 * manifests produce byte-identical reports.
 */
struct RunManifest {
  std::vector<BenchEntry> inputs;
  std::size_t iterations = 20;
  std::uint64_t seed = 0;
  std::uint64_t shots = 1000;
  std::optional<NoiseModel> noise = NoiseModel{};
  std::filesystem::path output_dir;
  ReportFormat format = ReportFormat::Csv;

  void validate() const {
    if (shots < 1) throw std::invalid_argument("shots must be at least 1");
    if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
    if (noise) noise->validate();
    for (const auto& e : inputs) {
      if (!std::filesystem::exists(e.file)) {
        throw std::invalid_argument("input " + e.file.string() + " does not exist");
      }
      if (e.gate_limit < 1) throw std::invalid_argument("gate_limit must be at least 1");
    }
  }
};

/** Inputs of a fixture directory. A manifest.json next to the circuits
 * ({"circuits": [{"file", "gate_limit", "expected", "control_pos"}]}) fixes
 * order and per-circuit settings; without one, every *.qasm file is used in
 * name order with `default_gate_limit`.
 */
inline std::vector<BenchEntry> load_bench_inputs(const std::filesystem::path& dir,
                                                 std::size_t default_gate_limit) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::invalid_argument(dir.string() + " is not a directory");
  std::vector<BenchEntry> entries;
  const fs::path manifest = dir / "manifest.json";
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    const auto j = nlohmann::json::parse(in);
    for (const auto& c : j.at("circuits")) {
      BenchEntry e;
      e.file = dir / c.at("file").get<std::string>();
      e.gate_limit = c.value("gate_limit", default_gate_limit);
      if (c.contains("expected") && !c["expected"].is_null()) {
        e.expected = c["expected"].get<std::string>();
      }
      if (c.contains("control_pos") && !c["control_pos"].is_null()) {
        e.control_pos = c["control_pos"].get<Qubit>();
      }
      entries.push_back(std::move(e));
    }
    return entries;
  }
  for (const auto& f : fs::directory_iterator(dir)) {
    if (f.is_regular_file() && f.path().extension() == ".qasm") {
      entries.push_back({f.path(), default_gate_limit, std::nullopt, std::nullopt});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const BenchEntry& a, const BenchEntry& b) { return a.file < b.file; });
  return entries;
}

struct IterationResult {
  std::size_t iteration = 0;
  std::uint64_t seed = 0;
  std::size_t payloads = 0;
  std::size_t gates_added = 0;
  std::size_t depth_after = 0;
  std::size_t gates_after = 0;
  double accuracy_original = 0.0;
  double accuracy_deactivated = 0.0;
  double tvd_activated = 0.0;
};

struct CircuitResult {
  std::string name;
  int exit_code = kExitOk;
  std::string error;
  std::size_t depth = 0;
  std::size_t gates = 0;
  std::string expected;
  bool multimodal = false;
  std::vector<IterationResult> iterations;

  bool ok() const { return exit_code == kExitOk; }

  template <class F>
  double mean(F field) const {
    if (iterations.empty()) return 0.0;
    double s = 0.0;
    for (const auto& it : iterations) s += static_cast<double>(field(it));
    return s / static_cast<double>(iterations.size());
  }
  double mean_depth_after() const { return mean([](const auto& i) { return i.depth_after; }); }
  double mean_gates_after() const { return mean([](const auto& i) { return i.gates_after; }); }
  double mean_gates_added() const { return mean([](const auto& i) { return i.gates_added; }); }
  double mean_accuracy() const { return mean([](const auto& i) { return i.accuracy_original; }); }
  double mean_accuracy_deactivated() const {
    return mean([](const auto& i) { return i.accuracy_deactivated; });
  }
  double mean_tvd() const { return mean([](const auto& i) { return i.tvd_activated; }); }
};

struct SuiteResult {
  std::vector<CircuitResult> circuits;

  int exit_code() const {
    for (const auto& c : circuits) {
      if (!c.ok()) return c.exit_code;
    }
    return kExitOk;
  }
};

/** One circuit, `iterations` times. Only the insertion seed varies between
 * iterations. Per iteration the original, the deactivated and the activated
 * circuit are sampled; TVD is measured against the original's ideal output
 * distribution.
 */
inline CircuitResult bench_circuit(const BenchEntry& entry, const RunManifest& m) {
  CircuitResult r;
  r.name = entry.name();
  try {
    const Circuit original = read_qasm_file(entry.file);
    r.depth = depth(original);
    r.gates = gate_count(original);
    const Probabilities ideal = ideal_distribution(original);
    ExpectedOutput expected = expected_output(ideal);
    if (entry.expected) expected.bits = *entry.expected;
    r.expected = expected.bits;
    r.multimodal = expected.multimodal;

    const std::uint64_t stream = m.seed ^ stable_hash(r.name);
    for (std::size_t i = 0; i < m.iterations; ++i) {
      IterationResult it;
      it.iteration = i;
      it.seed = derive_seed(stream, i);
      TrojanConfig config;
      config.control_pos = entry.control_pos;
      config.gate_limit = entry.gate_limit;
      config.seed = it.seed;
      config.activated = true;
      auto [activated, report] = insert_trojan(original, config);
      const Circuit deactivated = set_activation(activated, report, false);
      it.payloads = report.payloads.size();
      it.gates_added = report.gates_added;
      it.depth_after = depth(activated);
      it.gates_after = gate_count(activated);

      const auto orig_counts = sample(original, m.shots, derive_seed(it.seed, 1), m.noise);
      const auto deact_counts = sample(deactivated, m.shots, derive_seed(it.seed, 2), m.noise);
      const auto act_counts = sample(activated, m.shots, derive_seed(it.seed, 3), m.noise);
      it.accuracy_original = accuracy(orig_counts, expected.bits);
      it.accuracy_deactivated = accuracy(deact_counts, expected.bits);
      it.tvd_activated = tvd(ideal, act_counts);
      r.iterations.push_back(it);
    }
  } catch (const ParseError& e) {
    r.exit_code = kExitParse;
    r.error = entry.file.string() + ":" + e.what();
  } catch (const TrojanError& e) {
    r.exit_code = kExitInsertion;
    r.error = e.what();
  } catch (const SimulationError& e) {
    r.exit_code = kExitSimulation;
    r.error = e.what();
  } catch (const std::exception& e) {
    r.exit_code = kExitParse;
    r.error = e.what();
  }
  if (!r.ok()) r.iterations.clear();
  return r;
}

inline SuiteResult run_bench(const RunManifest& m) {
  m.validate();
  SuiteResult suite;
  for (const auto& entry : m.inputs) suite.circuits.push_back(bench_circuit(entry, m));
  return suite;
}

// Table-shaped summary, one row per successful circuit.
inline std::string table_csv(const SuiteResult& suite) {
  std::ostringstream out;
  out << kTableHeader << '\n';
  for (const auto& c : suite.circuits) {
    if (!c.ok()) continue;
    const double acc = c.mean_accuracy();
    const double acc_d = c.mean_accuracy_deactivated();
    out << c.name << ',' << c.depth << ',' << format_number(c.mean_depth_after()) << ','
        << c.gates << ',' << format_number(c.mean_gates_after()) << ','
        << format_number(c.mean_gates_added()) << ',' << format_number(acc) << ','
        << format_number(acc_d) << ',' << format_number((acc_d - acc) * 100.0) << ','
        << format_number(c.mean_tvd()) << '\n';
  }
  return out.str();
}

// Per-iteration activated TVD, the data behind a TVD distribution plot.
inline std::string tvd_csv(const SuiteResult& suite) {
  std::ostringstream out;
  out << "circuit,iteration,seed,payloads,gates_added,tvd_activated,accuracy_deactivated\n";
  for (const auto& c : suite.circuits) {
    for (const auto& it : c.iterations) {
      out << c.name << ',' << it.iteration << ',' << it.seed << ',' << it.payloads << ','
          << it.gates_added << ',' << format_number(it.tvd_activated) << ','
          << format_number(it.accuracy_deactivated) << '\n';
    }
  }
  return out.str();
}

inline nlohmann::json to_json(const SuiteResult& suite) {
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& c : suite.circuits) {
    if (!c.ok()) {
      failures.push_back({{"circuit", c.name}, {"exit_code", c.exit_code}, {"error", c.error}});
      continue;
    }
    nlohmann::json iters = nlohmann::json::array();
    for (const auto& it : c.iterations) {
      iters.push_back({{"iteration", it.iteration},
                       {"seed", it.seed},
                       {"payloads", it.payloads},
                       {"gates_added", it.gates_added},
                       {"depth_obfuscated", it.depth_after},
                       {"gate_obfuscated", it.gates_after},
                       {"accuracy", it.accuracy_original},
                       {"accuracy_deactivated", it.accuracy_deactivated},
                       {"tvd_activated", it.tvd_activated}});
    }
    const double acc = c.mean_accuracy();
    const double acc_d = c.mean_accuracy_deactivated();
    rows.push_back({{"circuit", c.name},
                    {"depth", c.depth},
                    {"depth_obfuscated", c.mean_depth_after()},
                    {"gate_count", c.gates},
                    {"gate_obfuscated", c.mean_gates_after()},
                    {"gate_difference", c.mean_gates_added()},
                    {"accuracy", acc},
                    {"accuracy_deactivated", acc_d},
                    {"accuracy_change_pct", (acc_d - acc) * 100.0},
                    {"tvd_activated", c.mean_tvd()},
                    {"expected", c.expected},
                    {"multimodal", c.multimodal},
                    {"iterations", iters}});
  }
  return {{"circuits", rows}, {"failures", failures}};
}

// Writes bench.csv + tvd.csv, or bench.json. Returns the files written.
inline std::vector<std::filesystem::path> write_reports(const SuiteResult& suite,
                                                        const RunManifest& m) {
  namespace fs = std::filesystem;
  fs::create_directories(m.output_dir);
  std::vector<fs::path> written;
  auto put = [&](const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
    written.push_back(p);
  };
  if (m.format == ReportFormat::Csv) {
    put(m.output_dir / "bench.csv", table_csv(suite));
    put(m.output_dir / "tvd.csv", tvd_csv(suite));
  } else {
    put(m.output_dir / "bench.json", to_json(suite).dump(2) + "\n");
  }
  return written;
}

}  // namespace qtrojan
