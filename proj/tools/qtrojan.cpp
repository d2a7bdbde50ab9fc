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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qtrojan/cli.hpp"

namespace {

using namespace qtrojan;

int run(int argc, char** argv) {
  CLI::App app{"qtrojan: controllable Trojan insertion and evaluation for quantum circuits"};
  app.require_subcommand(1);

  const std::uint64_t env_seed = cli::default_seed();

  cli::AnalyzeOptions analyze;
  auto* a = app.add_subcommand("analyze", "Print layers and empty slots of a circuit");
  a->add_option("path", analyze.input, "OpenQASM file")->required();
  a->add_flag("--json", analyze.json, "Machine-readable output");

  cli::InjectOptions inject;
  inject.seed = env_seed;
  std::optional<std::size_t> control_pos;
  bool want_activated = false, want_deactivated = false, want_both = false;
  auto* i = app.add_subcommand("inject", "Insert a switch-controlled Trojan");
  i->add_option("path", inject.input, "OpenQASM file")->required();
  i->add_option("--control-pos", control_pos, "Control qubit (default: first safe idle slot)");
  i->add_option("--gate-limit", inject.gate_limit, "Maximum payload CX gates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  i->add_option("--seed", inject.seed, "Target-selection seed (default $QTROJAN_SEED or 0)");
  auto* fa = i->add_flag("--activated", want_activated, "Write the armed circuit (default)");
  auto* fd = i->add_flag("--deactivated", want_deactivated, "Write the disarmed circuit");
  auto* fb = i->add_flag("--both", want_both, "Write both variants");
  fa->excludes(fd)->excludes(fb);
  fd->excludes(fb);
  i->add_option("--out", inject.out_dir, "Output directory")->capture_default_str();

  cli::EvaluateOptions evaluate;
  evaluate.seed = env_seed;
  std::string eval_noise = "0.001,0.01,0.02";
  std::optional<std::string> expected;
  auto* e = app.add_subcommand("evaluate", "Compare an original and a modified circuit");
  e->add_option("original", evaluate.original, "Original OpenQASM file")->required();
  e->add_option("inserted", evaluate.inserted, "Modified OpenQASM file")->required();
  e->add_option("--shots", evaluate.shots, "Shots per circuit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  e->add_option("--noise", eval_noise, "p1,p2,pread or 'off'")->capture_default_str();
  e->add_option("--seed", evaluate.seed, "Sampling seed (default $QTROJAN_SEED or 0)");
  e->add_flag("--exact", evaluate.exact, "Use exact output distributions");
  e->add_option("--expected", expected, "Reference output bitstring");
  e->add_flag("--csv", evaluate.csv, "Print a CSV row instead of JSON");

  cli::BenchOptions bench;
  bench.seed = env_seed;
  std::string bench_noise = "0.001,0.01,0.02";
  std::string format = "csv";
  auto* b = app.add_subcommand("bench", "Run the benchmark suite over a fixture directory");
  b->add_option("dir", bench.dir, "Directory of OpenQASM fixtures")->required();
  b->add_option("--iterations", bench.iterations, "Seeded insertions per circuit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  b->add_option("--shots", bench.shots, "Shots per simulation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  b->add_option("--noise", bench_noise, "p1,p2,pread or 'off'")->capture_default_str();
  b->add_option("--seed", bench.seed, "Base seed (default $QTROJAN_SEED or 0)");
  b->add_option("--gate-limit", bench.gate_limit, "Payload limit for circuits without a manifest")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  b->add_option("--out", bench.out_dir, "Report directory")->capture_default_str();
  b->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*a) return cli::cmd_analyze(analyze, std::cout, std::cerr);
    if (*i) {
      inject.control_pos = control_pos;
      if (want_both) {
        inject.variant = cli::InjectOptions::Variant::Both;
      } else if (want_deactivated) {
        inject.variant = cli::InjectOptions::Variant::Deactivated;
      }
      return cli::cmd_inject(inject, std::cout, std::cerr);
    }
    if (*e) {
      evaluate.noise = cli::parse_noise(eval_noise);
      evaluate.expected = expected;
      return cli::cmd_evaluate(evaluate, std::cout, std::cerr);
    }
    if (*b) {
      bench.noise = cli::parse_noise(bench_noise);
      bench.format = format == "json" ? ReportFormat::Json : ReportFormat::Csv;
      return cli::cmd_bench(bench, std::cout, std::cerr);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
